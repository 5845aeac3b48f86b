"""Regular-expression abbreviation detection over tokenized documents."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Document, TokenKind, is_abbrev_shaped, is_slash_compound
from .kb import KnowledgeBase


@dataclass(frozen=True)
class DetectorConfig:
    """Shape-rule knobs.

    ``min_len``/``max_len`` bound the uppercase shape rule; lowercase tokens
    whose length falls in ``[lower_min_len, lower_max_len]`` are detected
    only when they are knowledge-base keys.
    """

    min_len: int = 2
    max_len: int = 10
    lower_min_len: int = 2
    lower_max_len: int = 4
    detect_lowercase: bool = True
    detect_slash: bool = True


@dataclass(frozen=True)
class AbbrevMention:
    doc_id: str
    token_index: int
    surface: str
    components: tuple[str, ...]
    in_kb: bool

    @property
    def is_compound(self) -> bool:
        return len(self.components) > 1


def expand_slash_compound(surface: str) -> list[str]:
    if not is_slash_compound(surface):
        raise ValueError(f"{surface!r} is not a slash compound")
    return surface.split("/")


def detect(doc: Document, kb: KnowledgeBase, config: DetectorConfig = DetectorConfig()) -> list[AbbrevMention]:
    mentions = []
    for i, tok in enumerate(doc.tokens):
        surface = tok.surface
        if tok.kind is TokenKind.SLASH_COMPOUND:
            if not config.detect_slash:
                continue
            comps = tuple(expand_slash_compound(surface))
        elif tok.kind is TokenKind.ABBREV_SHAPED and is_abbrev_shaped(surface, config.min_len, config.max_len):
            comps = (surface,)
        elif (
            config.detect_lowercase
            and tok.kind is TokenKind.WORD
            and config.lower_min_len <= len(surface) <= config.lower_max_len
            and surface.isalpha()
            and surface in kb
        ):
            comps = (surface,)
        else:
            continue
        in_kb = all(c in kb for c in comps)
        mentions.append(AbbrevMention(doc.id, i, surface, comps, in_kb))
    return mentions


def format_mentions_tsv(mentions: list[AbbrevMention]) -> str:
    return "".join(
        f"{m.doc_id}\t{m.token_index}\t{m.surface}\t{str(m.in_kb).lower()}\n" for m in mentions
    )
