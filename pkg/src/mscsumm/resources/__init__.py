from .embeddings import EmbeddingFormatError, EmbeddingStore, load_embeddings, save_embeddings
from .lexicon import Lexicon, LexiconFormatError, Relation, convert_wordnet, lexicon_query, load_lexicon, parse_lexicon
from .lm import ArpaParseError, LanguageModel, load_arpa, lm_logprob, parse_arpa
from .tagger import LexiconTagger, PosTagger, PretaggedTagger, tag, tag_transcript

__all__ = [
    "ArpaParseError", "EmbeddingFormatError", "EmbeddingStore", "LanguageModel", "Lexicon",
    "LexiconFormatError", "LexiconTagger", "PosTagger", "PretaggedTagger", "Relation",
    "convert_wordnet", "lexicon_query", "lm_logprob", "load_arpa", "load_embeddings",
    "load_lexicon", "parse_arpa", "parse_lexicon", "save_embeddings", "tag", "tag_transcript",
]
