"""Detect -> rank -> expand over documents."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, Document
from .detect import AbbrevMention, DetectorConfig, detect
from .embeddings import EmbeddingMatrix
from .kb import KnowledgeBase, normalize_abbrev
from .ranker import RankedExpansion, RankerConfig, rank_candidates

MentionKey = tuple[str, str, int]


@dataclass(frozen=True)
class Prediction:
    mention: AbbrevMention
    expansion: str | None
    # one ranked list per component; None where the component is not in the KB
    rankings: tuple[list[RankedExpansion] | None, ...]


def predict_mention(mention: AbbrevMention, kb: KnowledgeBase, m: EmbeddingMatrix | None,
                    cfg: RankerConfig = RankerConfig()) -> Prediction:
    """Top-1 expansion of a mention; slash compounds resolve per component and rejoin with '/'."""
    rankings = tuple(rank_candidates(c, kb, m, cfg) for c in mention.components)
    if any(r is None for r in rankings):
        expansion = None
    else:
        expansion = "/".join(r[0].phrase for r in rankings)
    return Prediction(mention, expansion, rankings)


def mention_keys(mentions: list[AbbrevMention]) -> list[MentionKey]:
    """(doc_id, normalized surface, occurrence index) for each mention, in order."""
    seen: dict[tuple[str, str], int] = {}
    keys = []
    for mention in mentions:
        base = (mention.doc_id, normalize_abbrev(mention.surface))
        occ = seen.get(base, 0)
        seen[base] = occ + 1
        keys.append((*base, occ))
    return keys


def predict_document(doc: Document, kb: KnowledgeBase, m: EmbeddingMatrix | None,
                     cfg: RankerConfig = RankerConfig(),
                     detector: DetectorConfig = DetectorConfig()) -> dict[MentionKey, Prediction]:
    mentions = detect(doc, kb, detector)
    return {k: predict_mention(mn, kb, m, cfg) for k, mn in zip(mention_keys(mentions), mentions)}


def predict_corpus(corpus: Corpus, kb: KnowledgeBase, m: EmbeddingMatrix | None,
                   cfg: RankerConfig = RankerConfig(),
                   detector: DetectorConfig = DetectorConfig()) -> dict[MentionKey, Prediction]:
    out: dict[MentionKey, Prediction] = {}
    for doc in corpus:
        out.update(predict_document(doc, kb, m, cfg, detector))
    return out


def expand_document(doc: Document, kb: KnowledgeBase, m: EmbeddingMatrix | None,
                    cfg: RankerConfig = RankerConfig(),
                    detector: DetectorConfig = DetectorConfig()) -> str:
    """Rewrite ``doc.text`` with each detected mention replaced by its top-1 expansion.

    A slash compound is rewritten only when every component has candidates.
    """
    pieces = []
    cursor = 0
    for mention in detect(doc, kb, detector):
        expansion = predict_mention(mention, kb, m, cfg).expansion
        if expansion is None:
            continue
        tok = doc.tokens[mention.token_index]
        pieces.append(doc.text[cursor:tok.start])
        pieces.append(expansion)
        cursor = tok.end
    pieces.append(doc.text[cursor:])
    return "".join(pieces)
