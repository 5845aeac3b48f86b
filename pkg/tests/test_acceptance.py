"""Exit criteria, one test per criterion (run with ``pytest tests/test_acceptance.py``)."""

import math
import time

import numpy as np
import pytest

from clinabbrev.cli import main
from clinabbrev.corpus import Corpus, Document, SourceKind
from clinabbrev.embeddings import (
    TrainConfig,
    cosine,
    embed_phrase,
    load_embeddings,
    sgns_gradient,
    train_sgns,
)
from clinabbrev.evaluation import ErrorCategory, GoldAnnotation, compare_modes, evaluate, format_mode_table
from clinabbrev.kb import Candidate, parse_kb
from clinabbrev.ranker import RankerConfig, RankMode, normalize_ratings, rank_candidates, rank_list
from clinabbrev.synthetic import make_benchmark

from conftest import make_matrix
from test_ranker import random_case, reference_ranking
from test_sgns import fd_gradient, random_case as sgns_case, relative_error


@pytest.mark.criterion(1, "CHF worked example: scores 0.65144 / 0.52136, congestive first")
def test_criterion_1_chf_worked_example():
    lam, ratings, sims = 0.2, (50, 7), (0.595, 0.621)
    direct = [lam * r / sum(ratings) + (1 - lam) * s for r, s in zip(ratings, sims)]
    assert direct[0] == pytest.approx(0.65144, abs=1e-4)
    assert direct[1] == pytest.approx(0.52136, abs=1e-4)

    m = make_matrix({
        "chf": [1.0, 0.0],
        "congestive": [sims[0], math.sqrt(1 - sims[0] ** 2)],
        "chronic": [sims[1], -math.sqrt(1 - sims[1] ** 2)],
        "heart": [0.0, 0.0],
        "failure": [0.0, 0.0],
    })
    kb = parse_kb("CHF\tcongestive heart failure\t50\nCHF\tchronic heart failure\t7\n")
    ranked = rank_candidates("CHF", kb, m, RankerConfig(lam))
    assert ranked[0].phrase == "congestive heart failure"
    assert ranked[0].score == pytest.approx(0.65144, abs=1e-4)
    assert ranked[1].score == pytest.approx(0.52136, abs=1e-4)


@pytest.mark.criterion(2, "synthetic benchmark: combined >= 0.90, rating <= 0.50, task > general embeddings")
def test_criterion_2_synthetic_benchmark():
    start = time.perf_counter()
    bench = make_benchmark(n_abbrevs=50, seed=0)
    assert len(bench.kb) == 50
    assert all(3 <= len(e.candidates) <= 6 for e in bench.kb)
    assert bench.gold_top_rated <= 25

    cfg = TrainConfig(seed=7, workers=1)
    task = train_sgns(bench.task_corpus, cfg)
    general = train_sgns(bench.general_corpus, cfg)
    raw = train_sgns(bench.notes, cfg)
    rows = compare_modes(bench.notes, bench.kb, {"task": task, "general": general, "raw": raw}, bench.gold, lam=0.2)
    elapsed = time.perf_counter() - start
    print("\n" + format_mode_table(rows) + f"elapsed {elapsed:.1f}s")
    acc = {r.name: r.accuracy for r in rows}

    assert acc["combined[task]"] >= 0.90
    assert acc["rating"] <= 0.50
    assert acc["embedding_only[task]"] > acc["embedding_only[general]"]
    assert acc["combined[task]"] > acc["rating"]
    assert elapsed < 180


@pytest.mark.criterion(3, "SGNS gradient vs central differences (h=1e-5): rel. error < 1e-4 on 100 cases")
def test_criterion_3_gradient_check():
    worst = 0.0
    for seed in range(100):
        rng = np.random.default_rng(10_000 + seed)
        c, o, negs, w_in, w_out = sgns_case(rng)
        g = sgns_gradient(c, o, negs, w_in, w_out)
        fd_center, fd_out = fd_gradient(c, o, negs, w_in, w_out, h=1e-5)
        worst = max(worst, relative_error(g.center, fd_center))
        for row, grad in fd_out.items():
            worst = max(worst, relative_error(g.outputs[row], grad))
    assert worst < 1e-4


@pytest.mark.criterion(4, "property suites: phrase sum, cosine scale, mode oracles, ratings, error partition, brute force")
def test_criterion_4_properties():
    rng = np.random.default_rng(4)
    vecs = {f"w{i}": rng.normal(size=5) for i in range(6)}
    m = make_matrix(vecs)
    words = list(vecs)
    base = embed_phrase(m, words)
    for _ in range(200):
        np.testing.assert_allclose(embed_phrase(m, list(rng.permutation(words))), base, atol=1e-12)

    for _ in range(1000):
        u, v = rng.normal(size=7), rng.normal(size=7)
        a, b = rng.uniform(1e-3, 1e3, size=2)
        assert cosine(a * u, b * v) == pytest.approx(cosine(u, v), abs=1e-9)

    cases = 0
    for _ in range(1200):
        m, cands = random_case(rng)
        terms = normalize_ratings(cands)
        assert sum(terms) == pytest.approx(1.0)
        if sum(c.rating for c in cands) == 0:
            assert terms == [1 / len(cands)] * len(cands)

        by_rating = rank_list("abbr", cands, m, RankerConfig(mode=RankMode.RATING_ONLY))
        assert [r.candidate for r in by_rating] == sorted(cands, key=lambda c: (-c.rating, c.phrase))
        by_cos = rank_list("abbr", cands, m, RankerConfig(mode=RankMode.EMBEDDING_ONLY))
        cos = {r.candidate.phrase: r.cosine_term for r in by_cos}
        assert [r.candidate for r in by_cos] == sorted(cands, key=lambda c: (-cos[c.phrase], -c.rating, c.phrase))

        lam = float(rng.choice([0.0, 0.2, 0.7, 1.0]))
        ref = reference_ranking(cands, m, lam)
        expected = [c for s, c in sorted(ref, key=lambda sc: (-round(sc[0], 9), -sc[1].rating, sc[1].phrase))]
        assert [r.candidate for r in rank_list("abbr", cands, m, RankerConfig(lam))] == expected
        cases += 1
    assert cases >= 1000

    kb = parse_kb("OD\tout-of-date\t40\nOD\toverdose\t10\nC\tconsistent\t3\nW\twith\t3\n")
    vocab = ["OD", "XQZ", "c/w", "n/v", "n+v", "the"]
    for _ in range(50):
        docs = Corpus([Document(f"d{i}", SourceKind.CLINICAL_NOTE, " ".join(rng.choice(vocab, 4)))
                       for i in range(4)])
        gold = [GoldAnnotation(f"d{i}", str(rng.choice(vocab)), int(rng.integers(2)),
                               str(rng.choice(["overdose", "out-of-date", "consistent/with", "x"])))
                for i in range(4) for _ in range(2)]
        report = evaluate(docs, kb, None, gold)
        assert sum(report.error_counts.values()) == report.total - report.correct
        assert len(report.errors) == report.total - report.correct


@pytest.mark.criterion(5, "determinism: train --seed 7 --workers 1 twice is byte-identical; round-trip within 1e-6")
def test_criterion_5_determinism(tmp_path):
    paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
    for p in paths:
        assert main(["train", "--seed", "7", "--workers", "1", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()

    from clinabbrev.config import SAMPLE_DIR
    from clinabbrev.corpus import ingest_manifest
    m = train_sgns(ingest_manifest(SAMPLE_DIR / "manifest.tsv", per_line=True), TrainConfig(seed=7))
    loaded = load_embeddings(paths[0])
    assert loaded.vocab.index_to_token == m.vocab.index_to_token
    assert np.max(np.abs(loaded.vectors - m.vectors)) <= 1e-6


@pytest.mark.criterion(6, "OD: out-of-date first in rating_only, overdose first in combined")
def test_criterion_6_od_ranking(tmp_path, capsys):
    emb = tmp_path / "emb.txt"
    assert main(["train", "--seed", "7", "--output", str(emb)]) == 0
    capsys.readouterr()
    assert main(["rank", "--abbrev", "OD", "--mode", "rating_only", "--embeddings", str(emb)]) == 0
    rating_top = capsys.readouterr().out.splitlines()[1].split("\t")[2]
    assert main(["rank", "--abbrev", "OD", "--mode", "combined", "--embeddings", str(emb)]) == 0
    combined_top = capsys.readouterr().out.splitlines()[1].split("\t")[2]
    assert rating_top == "out-of-date"
    assert combined_top == "overdose"


@pytest.mark.criterion(7, "planted errors classify as exactly one of each category")
def test_criterion_7_error_taxonomy():
    kb = parse_kb("OD\tout-of-date\t40\nOD\ton duty\t30\nOD\toverdose\t10\n")
    docs = Corpus([
        Document("d0", SourceKind.CLINICAL_NOTE, "found down after OD"),
        Document("d1", SourceKind.CLINICAL_NOTE, "XQZ noted on exam"),
        Document("d2", SourceKind.CLINICAL_NOTE, "No n+v today"),
    ])
    gold = [
        GoldAnnotation("d0", "OD", 0, "overdose"),
        GoldAnnotation("d1", "XQZ", 0, "xylo quartz"),
        GoldAnnotation("d2", "n+v", 0, "nausea and vomiting"),
    ]
    report = evaluate(docs, kb, None, gold, RankerConfig(mode="rating_only"))
    assert report.error_counts == {
        ErrorCategory.OUT_OF_VOCABULARY: 1,
        ErrorCategory.LACK_OF_TRAINING_SAMPLES: 1,
        ErrorCategory.UNIDENTIFIED_REPRESENTATION: 1,
    }
