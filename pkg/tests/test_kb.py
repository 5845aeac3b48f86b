import pytest
from hypothesis import given, strategies as st

from clinabbrev.kb import Candidate, KBFormatError, dump_kb, load_kb, parse_kb


def test_row_with_rating():
    kb = parse_kb("chf\tcongestive heart failure\t50\n")
    assert kb.candidates_for("CHF") == (Candidate(("congestive", "heart", "failure"), 50),)


def test_empty_file():
    assert len(parse_kb("")) == 0
    assert len(parse_kb("# only a comment\n\n")) == 0


def test_negative_rating_names_line():
    with pytest.raises(KBFormatError, match=":2:"):
        parse_kb("OD\toverdose\t3\nOD\ton duty\t-3\n")


@pytest.mark.parametrize("row", ["OD\n", "OD\ta\t1\textra\n", "OD\toverdose\tmany\n", "\toverdose\t1\n"])
def test_malformed_rows(row):
    with pytest.raises(KBFormatError, match=":1:"):
        parse_kb(row)


def test_missing_rating_defaults_to_zero():
    assert parse_kb("RF\trespiratory failure\n").candidates_for("rf")[0].rating == 0


def test_duplicates_keep_max_rating():
    kb = parse_kb("OD\toverdose\t3\nod\tOverdose\t9\nOD\toverdose\t5\n")
    assert kb.candidates_for("OD") == (Candidate(("overdose",), 9),)


def test_lookup_normalization(sample_kb):
    chf = sample_kb.candidates_for("CHF")
    assert chf[0] == Candidate(("congestive", "heart", "failure"), 50)
    assert chf[1] == Candidate(("chronic", "heart", "failure"), 7)
    assert sample_kb.candidates_for("chf.") == chf
    assert sample_kb.candidates_for("ZZZZQ") is None


def test_bundled_kb_covers_example_abbrevs(sample_kb):
    for abbrev in ["CHF", "OD", "MICU", "STAT", "RF", "AKI", "TTE", "CTA"]:
        assert sample_kb.candidates_for(abbrev)


def test_round_trip_file(tmp_path, sample_kb):
    path = tmp_path / "kb.tsv"
    path.write_text(dump_kb(sample_kb), encoding="utf-8")
    assert load_kb(path) == sample_kb


words = st.text(alphabet="abcdefgh-", min_size=1, max_size=6).filter(lambda w: w.strip("-"))
rows = st.lists(
    st.tuples(st.text(alphabet="ABCDEF", min_size=1, max_size=4),
              st.lists(words, min_size=1, max_size=3).map(" ".join),
              st.integers(0, 100)),
    max_size=20,
)


@given(rows)
def test_round_trip_property(rs):
    kb = parse_kb("".join(f"{a}\t{p}\t{r}\n" for a, p, r in rs))
    again = parse_kb(dump_kb(kb))
    assert again == kb
    for entry in again:
        phrases = [c.phrase for c in entry.candidates]
        assert len(set(phrases)) == len(phrases)
        assert all(c.rating >= 0 for c in entry.candidates)
