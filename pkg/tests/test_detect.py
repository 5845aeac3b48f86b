import pytest

from clinabbrev.corpus import Document, SourceKind
from clinabbrev.detect import DetectorConfig, detect, expand_slash_compound, format_mentions_tsv
from clinabbrev.kb import parse_kb


def doc(text, id="d"):
    return Document(id, SourceKind.CLINICAL_NOTE, text)


def test_example_note_sentence(sample_kb):
    mentions = detect(doc("STAT TTE c/w RVS. AKI - no CTA."), sample_kb)
    assert [m.surface for m in mentions] == ["STAT", "TTE", "c/w", "RVS", "AKI", "CTA"]
    assert all(m.in_kb for m in mentions)
    assert mentions[2].components == ("c", "w")


def test_no_abbreviations(sample_kb):
    assert detect(doc("the patient is stable"), sample_kb) == []


def test_compound_absent_from_kb(sample_kb):
    (m,) = detect(doc("n/v/f/c"), sample_kb)
    assert m.components == ("n", "v", "f", "c")
    assert "/".join(m.components) == m.surface
    assert not m.in_kb


def test_unknown_uppercase_still_emitted(sample_kb):
    (m,) = detect(doc("XQZ noted"), sample_kb)
    assert m.surface == "XQZ" and not m.in_kb


def test_lowercase_kb_keys_only():
    kb = parse_kb("ABG\tarterial blood gas\t5\n")
    mentions = detect(doc("abg drawn, hx noted"), kb)
    assert [m.surface for m in mentions] == ["abg"]
    assert detect(doc("abg drawn"), kb, DetectorConfig(detect_lowercase=False)) == []


@pytest.mark.parametrize("surface,expected", [
    ("n/v/f/c", ["n", "v", "f", "c"]),
    ("c/w", ["c", "w"]),
    ("a/b", ["a", "b"]),
])
def test_expand_slash_compound(surface, expected):
    assert expand_slash_compound(surface) == expected


@pytest.mark.parametrize("bad", ["abc", "a//b", "abcde/f", "1/2"])
def test_expand_rejects_non_compound(bad):
    with pytest.raises(ValueError):
        expand_slash_compound(bad)


def test_token_indices_unique_and_ordered(sample_kb):
    mentions = detect(doc("OD OD CHF c/w RF. AKI"), sample_kb)
    idx = [m.token_index for m in mentions]
    assert idx == sorted(set(idx))
    assert detect(doc("OD OD CHF c/w RF. AKI"), sample_kb) == mentions


def test_tsv(sample_kb):
    out = format_mentions_tsv(detect(doc("OD n/v"), sample_kb))
    assert out == "d\t0\tOD\ttrue\nd\t1\tn/v\tfalse\n"
