import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mscsumm.ingest import Token, TranscriptParseError, collapse_repeats, parse_transcript, preprocess
from mscsumm.text import default_fillers, default_stopwords, strip_punct, tokenize


def words(t):
    return [u.words for u in t.utterances]


def test_single_line_with_speaker():
    t = parse_transcript("A\thello world\n")
    assert len(t.utterances) == 1
    u = t.utterances[0]
    assert u.speaker == "A"
    assert u.words == ["hello", "world"]


def test_empty_input():
    with pytest.raises(TranscriptParseError, match="empty transcript"):
        parse_transcript("")
    with pytest.raises(TranscriptParseError, match="empty transcript"):
        parse_transcript("  \n\n")


def test_three_lines_without_speakers():
    t = parse_transcript("one two\nthree four\nfive six\n")
    assert [u.index for u in t.utterances] == [0, 1, 2]
    assert all(u.speaker is None for u in t.utterances)


def test_json_format():
    doc = {"meeting_id": "ES2004a", "utterances": [{"speaker": "B", "text": "we need a remote"},
                                                   {"text": "sure thing"}]}
    t = parse_transcript(json.dumps(doc), "json")
    assert t.meeting_id == "ES2004a"
    assert t.utterances[0].speaker == "B"
    assert t.utterances[1].speaker is None
    assert t.utterances[1].words == ["sure", "thing"]


def test_malformed_json_reports_position():
    with pytest.raises(TranscriptParseError) as err:
        parse_transcript('{"utterances": [\n  {"text": "a"},\n  oops]}', "json")
    assert err.value.line == 3
    assert err.value.column is not None
    assert "malformed json" in str(err.value)


def test_json_missing_text():
    with pytest.raises(TranscriptParseError):
        parse_transcript('{"utterances": [{"speaker": "A"}]}', "json")


def test_tokenizer_punctuation():
    assert tokenize("Well, don't do that... (really)!") == ["Well", "don't", "do", "that", "really"]
    assert tokenize("-- ... !!") == []
    assert tokenize("{vocalsound} hi") == ["{vocalsound}", "hi"]
    assert strip_punct("'quoted'") == "quoted"


def test_pretagged_input():
    t = parse_transcript("the/DT cat/NN sleeps/VBZ", pretagged=True)
    assert [tok.pos for tok in t.utterances[0].tokens] == ["DT", "NN", "VBZ"]


def test_token_lower_invariant():
    tok = Token("Remote")
    assert tok.lower == "remote"
    assert tok.stem == ""


def test_repeat_collapse_pruned_example():
    # so so the the plan -> so the plan -> plan -> pruned
    t = preprocess(parse_transcript("so so the the plan"))
    assert t.utterances == []


def test_repeat_collapse_steps():
    toks = [Token(w) for w in "so so the the plan".split()]
    assert [t.lower for t in collapse_repeats(toks)] == ["so", "the", "plan"]
    toks = [Token(w) for w in "the remote the remote is big big".split()]
    assert [t.lower for t in collapse_repeats(toks)] == ["the", "remote", "is", "big"]


def test_tag_and_filler_removal():
    t = preprocess(parse_transcript("{vocalsound} okay well we need three new designs"))
    assert words(t) == [["need", "three", "new", "designs"]]


def test_clean_utterance_unchanged():
    t = preprocess(parse_transcript("remote control design meeting"))
    assert words(t) == [["remote", "control", "design", "meeting"]]


def test_multiword_filler_longest_first():
    t = preprocess(parse_transcript("by the way the remote needs a bigger battery"))
    assert words(t) == [["remote", "needs", "a", "bigger", "battery"]]


def test_indices_preserved_after_pruning():
    t = preprocess(parse_transcript("uh huh\nthe battery charges every night\nyeah"))
    assert [u.index for u in t.utterances] == [1]


def test_filler_case_insensitive():
    t = preprocess(parse_transcript("UM The Battery Charges Every Night"))
    assert [tok.surface for tok in t.utterances[0].tokens] == ["Battery", "Charges", "Every", "Night"]


VOCAB = ["the", "a", "we", "uh", "um", "okay", "well", "you", "know", "plan", "remote", "battery",
         "design", "{vocalsound}", "{pause}", "need", "by", "way", "so", "is"]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.sampled_from(VOCAB), min_size=1, max_size=14), min_size=1, max_size=6))
def test_preprocess_properties(lines):
    raw = "\n".join(" ".join(line) for line in lines)
    stop = default_stopwords()
    fillers = {tuple(f.split()) for f in default_fillers()}
    once = preprocess(parse_transcript(raw))
    twice = preprocess(once)
    assert words(once) == words(twice)
    for u in once.utterances:
        ws = [w.lower() for w in u.words]
        assert ws[0] not in stop and ws[-1] not in stop
        assert sum(w not in stop for w in ws) >= 3
        assert not any(w.startswith("{") for w in ws)
        for i in range(len(ws)):
            for f in fillers:
                assert tuple(ws[i:i + len(f)]) != f
        assert all(ws[i] != ws[i + 1] for i in range(len(ws) - 1))
        assert all(ws[i:i + 2] != ws[i + 2:i + 4] for i in range(len(ws) - 3))
