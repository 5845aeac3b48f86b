from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .vocab import Vocab


class EmbeddingFormatError(ValueError):
    pass


@dataclass
class EmbeddingMatrix:
    vocab: Vocab
    vectors: np.ndarray
    output_vectors: np.ndarray | None = None

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.vocab):
            raise ValueError(f"vector table shape {self.vectors.shape} does not match vocab size {len(self.vocab)}")
        if self.vectors.shape[1] < 1:
            raise ValueError("dimension must be positive")
        if not np.all(np.isfinite(self.vectors)):
            raise ValueError("embedding contains non-finite values")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, token: str) -> bool:
        return self._row(token) is not None

    def _row(self, token: str) -> int | None:
        idx = self.vocab.index(token.lower())
        if idx is None:
            # externally trained vectors may keep case
            idx = self.vocab.index(token)
        return idx

    def embed_word(self, token: str) -> np.ndarray | None:
        idx = self._row(token)
        return None if idx is None else self.vectors[idx]

    def embed_phrase(self, words: Sequence[str]) -> np.ndarray | None:
        return embed_phrase(self, words)

    def most_similar(self, token: str, topn: int = 10) -> list[tuple[str, float]]:
        vec = self.embed_word(token)
        if vec is None:
            return []
        norms = np.linalg.norm(self.vectors, axis=1)
        denom = norms * np.linalg.norm(vec)
        sims = np.divide(self.vectors @ vec, denom, out=np.zeros(len(self)), where=denom > 0)
        order = np.argsort(-sims, kind="stable")
        self_idx = self._row(token)
        out = []
        for i in order:
            if i == self_idx:
                continue
            out.append((self.vocab.index_to_token[i], float(sims[i])))
            if len(out) == topn:
                break
        return out


def embed_word(m: EmbeddingMatrix, token: str) -> np.ndarray | None:
    return m.embed_word(token)


def embed_phrase(m: EmbeddingMatrix, words: Sequence[str]) -> np.ndarray | None:
    """Additive phrase vector: the sum of the vectors of the in-vocabulary words.

    Returns None when no word of the phrase is in the vocabulary.
    """
    if len(words) == 0:
        raise ValueError("phrase must contain at least one word")
    rows = [r for r in (m._row(w) for w in words) if r is not None]
    if not rows:
        return None
    return m.vectors[rows].sum(axis=0)


def cosine(u, v) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = math.sqrt(float(u @ u))
    nv = math.sqrt(float(v @ v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return max(-1.0, min(1.0, float(u @ v) / (nu * nv)))


def format_embeddings(m: EmbeddingMatrix) -> str:
    lines = [f"{len(m)} {m.dim}"]
    for tok, row in zip(m.vocab.index_to_token, m.vectors):
        lines.append(tok + " " + " ".join(format(x, ".9g") for x in row))
    return "\n".join(lines) + "\n"


def save_embeddings(m: EmbeddingMatrix, path: str | Path) -> None:
    """Write the plain-text interchange format (``<V> <dim>`` header, one token per line)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_embeddings(m))


def parse_embeddings(text: str, source: str = "<embeddings>") -> EmbeddingMatrix:
    lines = text.splitlines()
    if not lines:
        raise EmbeddingFormatError(f"{source}:1: missing header")
    header = lines[0].split()
    try:
        size, dim = (int(x) for x in header)
    except ValueError:
        raise EmbeddingFormatError(f"{source}:1: header must be '<vocab_size> <dim>'") from None
    if size < 0 or dim < 1:
        raise EmbeddingFormatError(f"{source}:1: invalid header values {size} {dim}")
    body = [(n, line) for n, line in enumerate(lines[1:], start=2) if line.strip()]
    if len(body) != size:
        raise EmbeddingFormatError(f"{source}: header declares {size} rows, found {len(body)}")
    tokens = []
    vectors = np.empty((size, dim), dtype=np.float64)
    for i, (lineno, line) in enumerate(body):
        parts = line.split(" ")
        if len(parts) != dim + 1:
            raise EmbeddingFormatError(f"{source}:{lineno}: expected {dim} values, got {len(parts) - 1}")
        try:
            vectors[i] = [float(x) for x in parts[1:]]
        except ValueError:
            raise EmbeddingFormatError(f"{source}:{lineno}: non-numeric value") from None
        if not np.all(np.isfinite(vectors[i])):
            raise EmbeddingFormatError(f"{source}:{lineno}: non-finite value")
        tokens.append(parts[0])
    if len(set(tokens)) != len(tokens):
        raise EmbeddingFormatError(f"{source}: duplicate tokens")
    return EmbeddingMatrix(Vocab(tokens, np.zeros(size, dtype=np.int64)), vectors)


def load_embeddings(path: str | Path) -> EmbeddingMatrix:
    path = Path(path)
    return parse_embeddings(path.read_text(encoding="utf-8"), source=str(path))
