"""Tokenization and corpus ingestion for clinical notes and reference texts."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Sequence


class SourceKind(str, Enum):
    CLINICAL_NOTE = "clinical_note"
    CANDIDATE_ARTICLE = "candidate_article"
    REFERENCE_TEXT = "reference_text"


class TokenKind(str, Enum):
    WORD = "word"
    ABBREV_SHAPED = "abbrev_shaped"
    SLASH_COMPOUND = "slash_compound"
    PUNCT = "punct"


NUM_PLACEHOLDER = "<num>"

# word chars joined by interior '/', '-' or '.'; everything else non-space is punctuation
_TOKEN_RE = re.compile(r"<num>|\w+(?:[/.\-]\w+)*|[^\w\s]")
_SLASH_RE = re.compile(r"[A-Za-z]{1,4}(?:/[A-Za-z]{1,4})+")
_NUMERIC_RE = re.compile(r"\d+(?:[.,]\d+)*")
_ABBREV_CHARS_RE = re.compile(r"[A-Za-z0-9.]+")


class IngestError(Exception):
    """Raised when an input file cannot be read or decoded."""


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    kind: TokenKind

    @property
    def char_span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass
class Document:
    id: str
    source_kind: SourceKind
    text: str
    tokens: list[Token] = field(default_factory=list)

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"document {self.id!r} has empty text")
        if not self.tokens:
            self.tokens = tokenize(self.text)

    def words(self) -> list[str]:
        """Non-punctuation surfaces, lowercased, as fed to embedding training."""
        return [t.surface.lower() for t in self.tokens if t.kind is not TokenKind.PUNCT]


@dataclass
class Corpus:
    documents: list[Document] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def sentences(self) -> list[list[str]]:
        return [doc.words() for doc in self.documents]

    def token_counts(self) -> dict[str, int]:
        counts: Counter[str] = Counter()
        for doc in self.documents:
            counts[doc.source_kind.value] += sum(
                1 for t in doc.tokens if t.kind is not TokenKind.PUNCT
            )
        return dict(counts)


def is_abbrev_shaped(surface: str, min_len: int = 2, max_len: int = 10) -> bool:
    """Uppercase-shape rule: 2-10 chars of letters/digits/periods, >=2 letters, no lowercase."""
    if not (min_len <= len(surface) <= max_len):
        return False
    if not _ABBREV_CHARS_RE.fullmatch(surface):
        return False
    letters = [c for c in surface if c.isalpha()]
    return len(letters) >= 2 and all(c.isupper() for c in letters)


def is_slash_compound(surface: str) -> bool:
    return _SLASH_RE.fullmatch(surface) is not None


def _classify(raw: str) -> tuple[str, TokenKind]:
    if raw == NUM_PLACEHOLDER or _NUMERIC_RE.fullmatch(raw):
        return NUM_PLACEHOLDER, TokenKind.WORD
    if is_slash_compound(raw):
        return raw.lower(), TokenKind.SLASH_COMPOUND
    if is_abbrev_shaped(raw):
        return raw, TokenKind.ABBREV_SHAPED
    if len(raw) == 1 and not (raw.isalnum() or raw == "_"):
        return raw, TokenKind.PUNCT
    return raw.lower(), TokenKind.WORD


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens with character spans.

    Whitespace separates tokens; punctuation at token edges is split off into
    single-character punct tokens, while '/', '-' and '.' between word
    characters stay inside the token (``c/w``, ``out-of-date``, ``H.D``).
    Numeric tokens become ``<num>``.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        surface, kind = _classify(m.group())
        tokens.append(Token(surface, m.start(), m.end(), kind))
    return tokens


def _decode(path: Path) -> str:
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise IngestError(f"{path}: path not found") from None
    except OSError as exc:
        raise IngestError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path}: invalid UTF-8 at byte offset {exc.start}") from None


def _documents_from_file(path: Path, kind: SourceKind, per_line: bool) -> list[Document]:
    text = _decode(path)
    if not per_line:
        if not text.strip():
            return []
        return [Document(path.stem, kind, text)]
    docs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            docs.append(Document(f"{path.stem}:{lineno}", kind, line))
    return docs


def ingest_corpus(
    sources: Iterable[tuple[str | Path, SourceKind | str]],
    per_line: bool = False,
    workers: int = 1,
) -> Corpus:
    """Read ``(path, source_kind)`` pairs into a corpus, preserving input order.

    With ``per_line`` every non-blank line is its own document (id
    ``<stem>:<lineno>``); otherwise each file is one document.
    """
    items = [(Path(p), SourceKind(k)) for p, k in sources]

    def load(item):
        return _documents_from_file(item[0], item[1], per_line)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(load, items))
    else:
        batches = [load(item) for item in items]

    corpus = Corpus()
    seen: dict[str, int] = {}
    for batch in batches:
        for doc in batch:
            # file stems can collide across directories
            if doc.id in seen:
                seen[doc.id] += 1
                doc.id = f"{doc.id}#{seen[doc.id]}"
            else:
                seen[doc.id] = 0
            corpus.documents.append(doc)
    return corpus


def read_manifest(path: str | Path) -> list[tuple[Path, SourceKind]]:
    """Parse a ``path<TAB>source_kind`` manifest; relative paths resolve against its directory."""
    path = Path(path)
    base = path.parent
    entries = []
    for lineno, line in enumerate(_decode(path).splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2:
            raise IngestError(f"{path}:{lineno}: expected 'path<TAB>source_kind'")
        try:
            kind = SourceKind(parts[1].strip())
        except ValueError:
            raise IngestError(f"{path}:{lineno}: unknown source kind {parts[1]!r}") from None
        p = Path(parts[0].strip())
        entries.append((p if p.is_absolute() else base / p, kind))
    return entries


def ingest_manifest(path: str | Path, per_line: bool = False, workers: int = 1) -> Corpus:
    return ingest_corpus(read_manifest(path), per_line=per_line, workers=workers)


def corpus_from_texts(texts: Sequence[str], kind: SourceKind = SourceKind.CLINICAL_NOTE,
                      prefix: str = "doc") -> Corpus:
    return Corpus([Document(f"{prefix}{i}", kind, t) for i, t in enumerate(texts) if t.strip()])
