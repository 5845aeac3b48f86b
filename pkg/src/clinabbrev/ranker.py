"""Candidate ranking: popularity prior blended with embedding similarity."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .embeddings import EmbeddingMatrix, cosine, embed_phrase
from .kb import Candidate, KnowledgeBase

DEFAULT_LAMBDA = 0.2


class RankMode(str, Enum):
    COMBINED = "combined"
    RATING_ONLY = "rating_only"
    EMBEDDING_ONLY = "embedding_only"


@dataclass(frozen=True)
class RankerConfig:
    """``lam`` weights the rating prior; the two baseline modes pin it to 1 or 0."""

    lam: float = DEFAULT_LAMBDA
    mode: RankMode = RankMode.COMBINED

    def __post_init__(self):
        object.__setattr__(self, "mode", RankMode(self.mode))
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.lam}")

    @property
    def weight(self) -> float:
        if self.mode is RankMode.RATING_ONLY:
            return 1.0
        if self.mode is RankMode.EMBEDDING_ONLY:
            return 0.0
        return self.lam


@dataclass(frozen=True)
class RankedExpansion:
    candidate: Candidate
    rating_term: float
    cosine_term: float
    score: float

    @property
    def phrase(self) -> str:
        return self.candidate.text


def normalize_ratings(candidates: Sequence[Candidate]) -> list[float]:
    """Each rating's share of the list total; uniform when every rating is zero."""
    if not candidates:
        raise ValueError("candidate list is empty")
    total = sum(c.rating for c in candidates)
    if total == 0:
        return [1.0 / len(candidates)] * len(candidates)
    return [c.rating / total for c in candidates]


def abbrev_vector(m: EmbeddingMatrix | None, abbrev: str) -> np.ndarray | None:
    if m is None:
        return None
    return m.embed_word(abbrev.strip().rstrip(".").lower())


def score_candidate(
    abbrev_vec: np.ndarray | None,
    candidate: Candidate,
    rating_term: float,
    m: EmbeddingMatrix | None,
    cfg: RankerConfig = RankerConfig(),
) -> RankedExpansion:
    if not 0.0 <= rating_term <= 1.0:
        raise ValueError(f"rating term must be in [0, 1], got {rating_term}")
    cand_vec = embed_phrase(m, candidate.phrase) if m is not None else None
    if abbrev_vec is None or cand_vec is None:
        cos = 0.0
    else:
        cos = cosine(abbrev_vec, cand_vec)
    lam = cfg.weight
    return RankedExpansion(candidate, rating_term, cos, lam * rating_term + (1.0 - lam) * cos)


def sort_key(r: RankedExpansion):
    return (-r.score, -r.candidate.rating, r.candidate.phrase)


def rank_list(
    abbrev: str,
    candidates: Sequence[Candidate],
    m: EmbeddingMatrix | None,
    cfg: RankerConfig = RankerConfig(),
) -> list[RankedExpansion]:
    vec = abbrev_vector(m, abbrev)
    terms = normalize_ratings(candidates)
    scored = [score_candidate(vec, c, r, m, cfg) for c, r in zip(candidates, terms)]
    return sorted(scored, key=sort_key)


def rank_candidates(
    abbrev: str,
    kb: KnowledgeBase,
    m: EmbeddingMatrix | None,
    cfg: RankerConfig = RankerConfig(),
    context=None,
) -> list[RankedExpansion] | None:
    """Score and sort the knowledge-base candidates of ``abbrev``; None if it is unknown.

    ``context`` is accepted for interface symmetry but unused: the abbreviation
    vector is its corpus-wide embedding, not a per-occurrence one.
    """
    candidates = kb.candidates_for(abbrev)
    if candidates is None:
        return None
    return rank_list(abbrev, candidates, m, cfg)


def top_expansion(abbrev: str, kb: KnowledgeBase, m: EmbeddingMatrix | None,
                  cfg: RankerConfig = RankerConfig()) -> str | None:
    ranked = rank_candidates(abbrev, kb, m, cfg)
    return ranked[0].phrase if ranked else None


def format_ranked_tsv(abbrev: str, ranked: Sequence[RankedExpansion]) -> str:
    lines = ["rank\tabbrev\texpansion\trating\trating_term\tcosine_term\tscore"]
    for i, r in enumerate(ranked, start=1):
        lines.append(
            f"{i}\t{abbrev}\t{r.phrase}\t{r.candidate.rating}\t"
            f"{r.rating_term:.6f}\t{r.cosine_term:.6f}\t{r.score:.6f}"
        )
    return "\n".join(lines) + "\n"
