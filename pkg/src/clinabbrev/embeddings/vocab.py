from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..corpus import Corpus


@dataclass
class Vocab:
    index_to_token: list[str]
    counts: np.ndarray
    min_count: int = 1

    def __post_init__(self):
        self.token_to_index = {tok: i for i, tok in enumerate(self.index_to_token)}
        if len(self.token_to_index) != len(self.index_to_token):
            raise ValueError("duplicate tokens in vocabulary")
        self.counts = np.asarray(self.counts, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.index_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_index

    def __eq__(self, other):
        if not isinstance(other, Vocab):
            return NotImplemented
        return self.index_to_token == other.index_to_token

    def index(self, token: str) -> int | None:
        return self.token_to_index.get(token)

    def encode(self, words: Sequence[str]) -> np.ndarray:
        """Indices of in-vocabulary words; out-of-vocabulary words are dropped."""
        lookup = self.token_to_index
        return np.fromiter((lookup[w] for w in words if w in lookup), dtype=np.int64)


def build_vocab(sentences: Corpus | Iterable[Sequence[str]], min_count: int = 2) -> Vocab:
    """Count tokens and keep those seen at least ``min_count`` times.

    Indices are assigned by descending frequency, ties broken alphabetically.
    """
    if min_count < 1:
        raise ValueError("min_count must be positive")
    if isinstance(sentences, Corpus):
        sentences = sentences.sentences()
    freq: Counter[str] = Counter()
    for sent in sentences:
        freq.update(sent)
    if not freq:
        raise ValueError("empty corpus")
    kept = sorted((t for t, c in freq.items() if c >= min_count), key=lambda t: (-freq[t], t))
    return Vocab(kept, np.array([freq[t] for t in kept], dtype=np.int64), min_count)
