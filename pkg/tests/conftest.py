import pytest

from mscsumm.ingest import Token, Utterance
from mscsumm.text import default_stopwords


def make_utt(index, text, speaker=None, stop=None):
    """Utterance from ``word/TAG`` pairs; stopword flags from the bundled list."""
    stop = default_stopwords() if stop is None else stop
    toks = []
    for item in text.split():
        word, _, tag = item.rpartition("/")
        tok = Token(word, pos=tag)
        tok.is_stopword = tok.lower in stop
        toks.append(tok)
    return Utterance(index, toks, speaker)


@pytest.fixture
def utt():
    return make_utt
