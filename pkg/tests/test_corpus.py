import pytest
from hypothesis import given, strategies as st

from clinabbrev.corpus import (
    NUM_PLACEHOLDER,
    Document,
    IngestError,
    SourceKind,
    TokenKind,
    ingest_corpus,
    read_manifest,
    tokenize,
)


def pairs(text):
    return [(t.surface, t.kind.value) for t in tokenize(text)]


def test_example_note_sentence():
    assert pairs("STAT TTE c/w RVS.") == [
        ("STAT", "abbrev_shaped"),
        ("TTE", "abbrev_shaped"),
        ("c/w", "slash_compound"),
        ("RVS", "abbrev_shaped"),
        (".", "punct"),
    ]


def test_packed_compound():
    assert pairs("No n/v/f/c.") == [("no", "word"), ("n/v/f/c", "slash_compound"), (".", "punct")]


def test_empty():
    assert tokenize("") == []
    assert tokenize("   \n\t") == []


def test_dotted_and_hyphenated():
    assert pairs("H.D. out-of-date") == [("H.D", "abbrev_shaped"), (".", "punct"), ("out-of-date", "word")]


def test_numbers_become_placeholder():
    toks = tokenize("HR 112, temp 38.5")
    assert [t.surface for t in toks] == ["HR", NUM_PLACEHOLDER, ",", "temp", NUM_PLACEHOLDER]
    assert toks[1].char_span == (3, 6)


def test_spans_cover_source():
    text = "Pt w/ Hx of CHF; AKI - no CTA."
    for tok in tokenize(text):
        raw = text[tok.start:tok.end]
        if tok.kind is TokenKind.ABBREV_SHAPED:
            assert tok.surface == raw
        else:
            assert tok.surface == raw.lower()


text_strategy = st.text(
    alphabet=st.sampled_from(list("abcXYZ019 ./-,;:()\n\té")), max_size=60
)


@given(text_strategy)
def test_spans_sorted_and_disjoint(text):
    toks = tokenize(text)
    for a, b in zip(toks, toks[1:]):
        assert a.start < a.end <= b.start
    assert tokenize(text) == toks


@given(text_strategy)
def test_idempotent_on_joined_output(text):
    first = [t.surface for t in tokenize(text)]
    again = [t.surface for t in tokenize(" ".join(first))]
    assert again == first


@given(text_strategy)
def test_slash_compounds_match_grammar(text):
    import re
    for tok in tokenize(text):
        if tok.kind is TokenKind.SLASH_COMPOUND:
            assert re.fullmatch(r"[a-z]{1,4}(/[a-z]{1,4})+", tok.surface)


def test_document_rejects_blank_text():
    with pytest.raises(ValueError):
        Document("x", SourceKind.CLINICAL_NOTE, "  ")


def test_ingest_one_document_per_file(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("first note", encoding="utf-8")
    b.write_text("second note\nstill second", encoding="utf-8")
    corpus = ingest_corpus([(a, "clinical_note"), (b, "candidate_article")])
    assert [d.id for d in corpus] == ["a", "b"]
    assert corpus.token_counts() == {"clinical_note": 2, "candidate_article": 4}


def test_ingest_per_line(tmp_path):
    f = tmp_path / "notes.txt"
    f.write_text("one\n\ntwo\nthree\n", encoding="utf-8")
    corpus = ingest_corpus([(f, SourceKind.CLINICAL_NOTE)], per_line=True)
    assert [d.id for d in corpus] == ["notes:1", "notes:3", "notes:4"]


def test_ingest_order_stable_with_workers(tmp_path):
    paths = []
    for i in range(8):
        p = tmp_path / f"n{i}.txt"
        p.write_text(f"note {i}", encoding="utf-8")
        paths.append((p, "clinical_note"))
    assert [d.id for d in ingest_corpus(paths, workers=4)] == [f"n{i}" for i in range(8)]


def test_missing_file(tmp_path):
    with pytest.raises(IngestError, match="path not found"):
        ingest_corpus([(tmp_path / "nope.txt", "clinical_note")])


def test_invalid_utf8_reports_offset(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_bytes(b"abc\xffdef")
    with pytest.raises(IngestError, match="byte offset 3"):
        ingest_corpus([(f, "clinical_note")])


def test_manifest(tmp_path):
    (tmp_path / "n.txt").write_text("x y", encoding="utf-8")
    m = tmp_path / "m.tsv"
    m.write_text("# comment\nn.txt\tclinical_note\n\n", encoding="utf-8")
    assert read_manifest(m) == [(tmp_path / "n.txt", SourceKind.CLINICAL_NOTE)]
    m.write_text("n.txt\tbogus\n", encoding="utf-8")
    with pytest.raises(IngestError, match=":1:"):
        read_manifest(m)
