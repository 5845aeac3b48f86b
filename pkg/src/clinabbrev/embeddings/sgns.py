"""Skip-gram with negative sampling: configuration, objective, and trainer."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Callable, NamedTuple, Sequence

import numpy as np

from ..corpus import Corpus
from . import kernel
from .vectors import EmbeddingMatrix
from .vocab import Vocab, build_vocab

log = logging.getLogger(__name__)

# tokens per pair-generation batch; part of the RNG stream contract
CHUNK_TOKENS = 100_000
UNIGRAM_POWER = 0.75
MIN_ALPHA_FRACTION = 1e-4


@dataclass(frozen=True)
class TrainConfig:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    initial_learning_rate: float = 0.025
    min_count: int = 2
    subsample_threshold: float = 1e-3
    seed: int = 1
    workers: int = 1

    def __post_init__(self):
        for name in ("dim", "window", "negatives", "epochs", "min_count", "workers"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not self.initial_learning_rate > 0:
            raise ValueError("initial_learning_rate must be > 0")
        if self.subsample_threshold < 0:
            raise ValueError("subsample_threshold must be >= 0")

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -50.0, 50.0)))


def sgns_loss(center: int, context: int, negatives: Sequence[int],
              w_in: np.ndarray, w_out: np.ndarray) -> float:
    """The SGNS objective ``log s(u_o.v_c) + sum_n log s(-u_n.v_c)`` (to be maximized)."""
    v = w_in[center]
    total = np.log(sigmoid(w_out[context] @ v))
    for n in negatives:
        total += np.log(sigmoid(-(w_out[n] @ v)))
    return float(total)


class SgnsGradient(NamedTuple):
    center: np.ndarray
    outputs: dict[int, np.ndarray]


def sgns_gradient(center: int, context: int, negatives: Sequence[int],
                  w_in: np.ndarray, w_out: np.ndarray) -> SgnsGradient:
    """Gradient of :func:`sgns_loss` with respect to the rows it touches.

    ``center`` holds the derivative w.r.t. the input row ``w_in[center]``;
    ``outputs`` maps each output row index to its derivative, with repeated
    indices (e.g. a negative equal to the context) accumulated.
    """
    n_in, n_out = w_in.shape[0], w_out.shape[0]
    if not 0 <= center < n_in:
        raise IndexError(f"center index {center} out of range")
    for idx in (context, *negatives):
        if not 0 <= idx < n_out:
            raise IndexError(f"output index {idx} out of range")
    v = w_in[center]
    coef = 1.0 - sigmoid(w_out[context] @ v)
    grad_center = coef * w_out[context]
    outputs = {int(context): coef * v}
    for n in negatives:
        s = sigmoid(w_out[n] @ v)
        grad_center = grad_center - s * w_out[n]
        outputs[int(n)] = outputs.get(int(n), 0.0) - s * v
    return SgnsGradient(grad_center, outputs)


def _keep_probabilities(vocab: Vocab, threshold: float) -> np.ndarray:
    counts = vocab.counts.astype(np.float64)
    if threshold == 0:
        return np.ones_like(counts)
    ratio = threshold * counts.sum() / counts
    return np.minimum(1.0, np.sqrt(ratio) + ratio)


def _noise_table(vocab: Vocab) -> np.ndarray:
    weights = vocab.counts.astype(np.float64) ** UNIGRAM_POWER
    return np.cumsum(weights / weights.sum())


def make_pairs(tokens: np.ndarray, doc_ids: np.ndarray, spans: np.ndarray,
               window: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions of (center, context) pairs within each center's reduced window.

    ``spans[i]`` is the effective window radius drawn for position ``i``;
    pairs never cross document boundaries. Returned in (center, context)
    position order.
    """
    n = len(tokens)
    pos = np.arange(n)
    centers, contexts = [], []
    for d in range(1, window + 1):
        if d >= n:
            break
        ok = spans[: n - d] >= d
        ok &= doc_ids[: n - d] == doc_ids[d:]
        centers.append(pos[: n - d][ok])
        contexts.append(pos[: n - d][ok] + d)
        ok = spans[d:] >= d
        ok &= doc_ids[d:] == doc_ids[: n - d]
        centers.append(pos[d:][ok])
        contexts.append(pos[d:][ok] - d)
    if not centers:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    c = np.concatenate(centers)
    o = np.concatenate(contexts)
    order = np.lexsort((o, c))
    return c[order], o[order]


def _encode_corpus(corpus, vocab: Vocab) -> list[np.ndarray]:
    sentences = corpus.sentences() if isinstance(corpus, Corpus) else corpus
    return [vocab.encode(s) for s in sentences]


def _chunks(encoded: list[np.ndarray]):
    batch, size = [], 0
    for doc in encoded:
        if len(doc) == 0:
            continue
        batch.append(doc)
        size += len(doc)
        if size >= CHUNK_TOKENS:
            yield batch
            batch, size = [], 0
    if batch:
        yield batch


def _run_kernel(w_in, w_out, centers, contexts, negs, alphas, workers, train_pairs):
    if workers == 1 or len(centers) < workers:
        return train_pairs(w_in, w_out, centers, contexts, negs, alphas)
    bounds = np.linspace(0, len(centers), workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(train_pairs, w_in, w_out, centers[a:b], contexts[a:b], negs[a:b], alphas[a:b])
            for a, b in zip(bounds[:-1], bounds[1:])
        ]
        return sum(f.result() for f in futures)


def train_sgns(
    corpus: Corpus | Sequence[Sequence[str]],
    cfg: TrainConfig = TrainConfig(),
    vocab: Vocab | None = None,
    epoch_callback: Callable[[int, EmbeddingMatrix], None] | None = None,
    train_pairs: Callable | None = None,
) -> EmbeddingMatrix:
    """Train skip-gram negative-sampling embeddings.

    All randomness (initialization, subsampling, window shrinking, noise
    words) comes from one generator seeded with ``cfg.seed``, so a run with
    ``workers=1`` is bit-reproducible. ``train_pairs`` overrides the kernel
    backend, mainly for cross-checking the compiled and numpy paths.
    """
    if train_pairs is None:
        train_pairs = kernel.train_pairs
    if vocab is None:
        vocab = build_vocab(corpus, cfg.min_count)
    if len(vocab) == 0:
        raise ValueError(f"no token reaches min_count={cfg.min_count}")
    encoded = _encode_corpus(corpus, vocab)
    total_tokens = sum(len(d) for d in encoded)
    if total_tokens < cfg.window + 1:
        raise ValueError(
            f"corpus has {total_tokens} in-vocabulary tokens, fewer than one window ({cfg.window + 1})"
        )

    rng = np.random.default_rng(cfg.seed)
    w_in = rng.uniform(-0.5 / cfg.dim, 0.5 / cfg.dim, size=(len(vocab), cfg.dim))
    w_out = np.zeros((len(vocab), cfg.dim))
    keep_prob = _keep_probabilities(vocab, cfg.subsample_threshold)
    noise_cdf = _noise_table(vocab)
    last = len(vocab) - 1

    for epoch in range(cfg.epochs):
        done = 0
        loss = 0.0
        n_pairs = 0
        for batch in _chunks(encoded):
            tokens = np.concatenate(batch)
            doc_ids = np.repeat(np.arange(len(batch)), [len(d) for d in batch])
            # progress is measured on raw token positions, before subsampling
            progress = (epoch + (done + np.arange(len(tokens))) / total_tokens) / cfg.epochs
            done += len(tokens)
            keep = rng.random(len(tokens)) < keep_prob[tokens]
            tokens, doc_ids, progress = tokens[keep], doc_ids[keep], progress[keep]
            spans = rng.integers(1, cfg.window + 1, size=len(tokens))
            pc, po = make_pairs(tokens, doc_ids, spans, cfg.window)
            if len(pc) == 0:
                continue
            negs = np.searchsorted(noise_cdf, rng.random((len(pc), cfg.negatives)), side="right")
            np.minimum(negs, last, out=negs)
            alphas = cfg.initial_learning_rate * np.maximum(1.0 - progress[pc], MIN_ALPHA_FRACTION)
            loss += _run_kernel(
                w_in, w_out,
                np.ascontiguousarray(tokens[pc], dtype=np.int64),
                np.ascontiguousarray(tokens[po], dtype=np.int64),
                np.ascontiguousarray(negs, dtype=np.int64),
                np.ascontiguousarray(alphas, dtype=np.float64),
                cfg.workers, train_pairs,
            )
            n_pairs += len(pc)
        log.info("epoch %d/%d: %d pairs, mean loss %.4f", epoch + 1, cfg.epochs, n_pairs,
                 loss / max(n_pairs, 1))
        if epoch_callback is not None:
            epoch_callback(epoch + 1, EmbeddingMatrix(vocab, w_in.copy()))

    return EmbeddingMatrix(vocab, w_in, w_out)
