"""Abbreviation knowledge base: candidate expansions with popularity ratings."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator


class KBFormatError(ValueError):
    """Malformed knowledge-base row."""


def normalize_abbrev(abbrev: str) -> str:
    """Lookup key: uppercased with trailing periods removed."""
    return abbrev.strip().upper().rstrip(".")


@dataclass(frozen=True)
class Candidate:
    phrase: tuple[str, ...]
    rating: int = 0

    def __post_init__(self):
        if not self.phrase:
            raise ValueError("candidate phrase is empty")
        if any(not w or any(c.isspace() for c in w) for w in self.phrase):
            raise ValueError(f"candidate words must be non-empty without whitespace: {self.phrase!r}")
        if self.rating < 0:
            raise ValueError(f"negative rating {self.rating}")

    @classmethod
    def from_text(cls, text: str, rating: int = 0) -> "Candidate":
        return cls(tuple(text.lower().split()), rating)

    @property
    def text(self) -> str:
        return " ".join(self.phrase)


@dataclass(frozen=True)
class KbEntry:
    abbrev: str
    candidates: tuple[Candidate, ...]

    def __post_init__(self):
        if not self.candidates:
            raise ValueError(f"entry {self.abbrev!r} has no candidates")
        phrases = [c.phrase for c in self.candidates]
        if len(set(phrases)) != len(phrases):
            raise ValueError(f"entry {self.abbrev!r} has duplicate phrases")


class KnowledgeBase:
    """Immutable mapping from normalized abbreviation to its candidate list."""

    def __init__(self, entries: Iterable[KbEntry] = ()):
        self._entries: dict[str, KbEntry] = {}
        for entry in entries:
            key = normalize_abbrev(entry.abbrev)
            if key in self._entries:
                raise ValueError(f"duplicate entry for {key!r}")
            self._entries[key] = KbEntry(key, entry.candidates)

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[str, str, int]]) -> "KnowledgeBase":
        """Build from ``(abbrev, phrase, rating)`` rows; repeated phrases keep the max rating."""
        grouped: dict[str, dict[tuple[str, ...], int]] = {}
        for abbrev, phrase, rating in rows:
            cand = Candidate.from_text(phrase, rating)
            bucket = grouped.setdefault(normalize_abbrev(abbrev), {})
            bucket[cand.phrase] = max(bucket.get(cand.phrase, 0), cand.rating)
        return cls(
            KbEntry(key, tuple(Candidate(p, r) for p, r in bucket.items()))
            for key, bucket in grouped.items()
        )

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[KbEntry]:
        return iter(self._entries.values())

    def __contains__(self, abbrev: str) -> bool:
        return normalize_abbrev(abbrev) in self._entries

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return self._entries == other._entries

    def keys(self) -> list[str]:
        return list(self._entries)

    def candidates_for(self, abbrev: str) -> tuple[Candidate, ...] | None:
        """Candidate list for ``abbrev``, or None when the abbreviation is unknown."""
        if not abbrev.strip():
            raise ValueError("abbreviation must be non-empty")
        entry = self._entries.get(normalize_abbrev(abbrev))
        return entry.candidates if entry is not None else None


def candidates_for(kb: KnowledgeBase, abbrev: str) -> tuple[Candidate, ...] | None:
    return kb.candidates_for(abbrev)


def parse_kb(text: str, source: str = "<kb>") -> KnowledgeBase:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            raise KBFormatError(f"{source}:{lineno}: expected 2 or 3 tab-separated fields, got {len(parts)}")
        abbrev, phrase = parts[0].strip(), parts[1].strip()
        if not abbrev or not phrase:
            raise KBFormatError(f"{source}:{lineno}: empty abbreviation or phrase")
        rating = 0
        if len(parts) == 3 and parts[2].strip():
            try:
                rating = int(parts[2].strip())
            except ValueError:
                raise KBFormatError(f"{source}:{lineno}: rating {parts[2].strip()!r} is not an integer") from None
            if rating < 0:
                raise KBFormatError(f"{source}:{lineno}: negative rating {rating}")
        rows.append((abbrev, phrase, rating))
    return KnowledgeBase.from_rows(rows)


def load_kb(path: str | Path) -> KnowledgeBase:
    path = Path(path)
    return parse_kb(path.read_text(encoding="utf-8"), source=str(path))


def dump_kb(kb: KnowledgeBase) -> str:
    lines = [f"{e.abbrev}\t{c.text}\t{c.rating}" for e in kb for c in e.candidates]
    return "".join(line + "\n" for line in lines)


def save_kb(kb: KnowledgeBase, path: str | Path) -> None:
    Path(path).write_text(dump_kb(kb), encoding="utf-8")
