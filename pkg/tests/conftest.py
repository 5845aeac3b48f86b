from pathlib import Path

import numpy as np
import pytest

from clinabbrev.config import SAMPLE_DIR
from clinabbrev.corpus import ingest_manifest
from clinabbrev.embeddings import EmbeddingMatrix, TrainConfig, Vocab, train_sgns
from clinabbrev.kb import load_kb


@pytest.fixture(scope="session")
def sample_dir() -> Path:
    return SAMPLE_DIR


@pytest.fixture(scope="session")
def sample_kb(sample_dir):
    return load_kb(sample_dir / "kb.tsv")


@pytest.fixture(scope="session")
def sample_corpus(sample_dir):
    return ingest_manifest(sample_dir / "manifest.tsv", per_line=True)


@pytest.fixture(scope="session")
def sample_embeddings(sample_corpus):
    return train_sgns(sample_corpus, TrainConfig(seed=7))


def make_matrix(vectors: dict) -> EmbeddingMatrix:
    tokens = list(vectors)
    return EmbeddingMatrix(Vocab(tokens, np.ones(len(tokens), dtype=np.int64)),
                           np.array([vectors[t] for t in tokens], dtype=np.float64))


def shared_context_corpus(seed=0, n=600):
    """'rf' and 'respiratory_marker' draw contexts from one distribution; distractors from others."""
    rng = np.random.default_rng(seed)
    groups = {
        ("rf", "respiratory_marker"): [f"resp{i}" for i in range(12)],
        ("kidney_marker",): [f"ren{i}" for i in range(12)],
        ("liver_marker",): [f"hep{i}" for i in range(12)],
    }
    sents = []
    for _ in range(n):
        for centers, ctx in groups.items():
            w = centers[rng.integers(len(centers))]
            sents.append([str(x) for x in rng.choice(ctx, 4)] + [w] + [str(x) for x in rng.choice(ctx, 4)])
    return sents


# ------------------------------------------------------ acceptance reporting

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if rep.when == "call" or failed:
        prev = _ACCEPTANCE.get(key, (marker.args[1], "PASS"))[1]
        _ACCEPTANCE[key] = (marker.args[1], "FAIL" if failed or prev == "FAIL" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[key]
        terminalreporter.write_line(f"[{status}] {key}. {title}")
