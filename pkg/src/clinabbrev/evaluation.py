"""Accuracy, error categorization, and mode comparison against gold expansions."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Corpus
from .detect import DetectorConfig
from .embeddings import EmbeddingMatrix, load_embeddings
from .kb import KnowledgeBase, normalize_abbrev
from .pipeline import MentionKey, Prediction, predict_corpus
from .ranker import RankerConfig, RankMode


class GoldFormatError(ValueError):
    pass


class ErrorCategory(str, Enum):
    OUT_OF_VOCABULARY = "out_of_vocabulary"
    LACK_OF_TRAINING_SAMPLES = "lack_of_training_samples"
    UNIDENTIFIED_REPRESENTATION = "unidentified_representation"


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    abbrev: str
    occurrence: int
    expansion: str

    def __post_init__(self):
        if not normalize_phrase(self.expansion):
            raise ValueError("gold expansion is empty")

    @property
    def key(self) -> MentionKey:
        return (self.doc_id, normalize_abbrev(self.abbrev), self.occurrence)


@dataclass
class EvalReport:
    total: int
    correct: int
    error_counts: dict[ErrorCategory, int]
    errors: list[tuple[GoldAnnotation, ErrorCategory]] = field(default_factory=list)
    compound_components: int = 0
    compound_components_correct: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def summary(self) -> str:
        lines = [f"accuracy {self.accuracy:.4f} ({self.correct}/{self.total})"]
        wrong = self.total - self.correct
        for cat in ErrorCategory:
            n = self.error_counts[cat]
            share = n / wrong if wrong else 0.0
            lines.append(f"  {cat.value:<28} {n:>5}  {share:6.1%}")
        if self.compound_components:
            lines.append(
                f"  slash-compound components correct: "
                f"{self.compound_components_correct}/{self.compound_components}"
            )
        return "\n".join(lines)


def normalize_phrase(text: str | None) -> str:
    return " ".join(text.lower().split()) if text else ""


def is_correct(prediction: Prediction | None, gold: GoldAnnotation) -> bool:
    if prediction is None or prediction.expansion is None:
        return False
    return normalize_phrase(prediction.expansion) == normalize_phrase(gold.expansion)


def classify_error(gold: GoldAnnotation, prediction: Prediction | None) -> ErrorCategory:
    """Assign an incorrect prediction to one of the three error categories.

    ``prediction`` is None when the detector produced no mention for the gold
    annotation. A detected mention is out-of-vocabulary when some component
    has no candidate list or its gold expansion is missing from that list;
    otherwise the gold was available but ranked below the top.
    """
    if is_correct(prediction, gold):
        raise ValueError("classify_error called on a correct prediction")
    if prediction is None:
        return ErrorCategory.UNIDENTIFIED_REPRESENTATION
    rankings = prediction.rankings
    parts = normalize_phrase(gold.expansion).split("/") if len(rankings) > 1 else [normalize_phrase(gold.expansion)]
    if len(parts) != len(rankings):
        return ErrorCategory.OUT_OF_VOCABULARY
    for part, ranked in zip(parts, rankings):
        if ranked is None or all(normalize_phrase(r.phrase) != part.strip() for r in ranked):
            return ErrorCategory.OUT_OF_VOCABULARY
    return ErrorCategory.LACK_OF_TRAINING_SAMPLES


def evaluate_accuracy(predictions: Mapping[MentionKey, Prediction],
                      gold: Sequence[GoldAnnotation]) -> EvalReport:
    """Score predictions against gold; gold without a matching mention counts as unidentified."""
    if not gold:
        raise ValueError("empty gold set")
    counts = {cat: 0 for cat in ErrorCategory}
    errors = []
    correct = 0
    comp_total = comp_correct = 0
    for g in gold:
        pred = predictions.get(g.key)
        if pred is not None and pred.mention.is_compound:
            gold_parts = normalize_phrase(g.expansion).split("/")
            comp_total += len(pred.rankings)
            for part, ranked in zip(gold_parts, pred.rankings):
                if ranked and normalize_phrase(ranked[0].phrase) == part.strip():
                    comp_correct += 1
        if is_correct(pred, g):
            correct += 1
            continue
        cat = classify_error(g, pred)
        counts[cat] += 1
        errors.append((g, cat))
    return EvalReport(len(gold), correct, counts, errors, comp_total, comp_correct)


def evaluate(corpus: Corpus, kb: KnowledgeBase, m: EmbeddingMatrix | None,
             gold: Sequence[GoldAnnotation], cfg: RankerConfig = RankerConfig(),
             detector: DetectorConfig = DetectorConfig()) -> EvalReport:
    return evaluate_accuracy(predict_corpus(corpus, kb, m, cfg, detector), gold)


def parse_gold(text: str, source: str = "<gold>") -> list[GoldAnnotation]:
    gold = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise GoldFormatError(f"{source}:{lineno}: expected 4 tab-separated fields")
        try:
            occ = int(parts[2])
        except ValueError:
            raise GoldFormatError(f"{source}:{lineno}: occurrence index must be an integer") from None
        if occ < 0 or not parts[3].strip():
            raise GoldFormatError(f"{source}:{lineno}: invalid occurrence or empty expansion")
        gold.append(GoldAnnotation(parts[0].strip(), parts[1].strip(), occ, parts[3].strip()))
    return gold


def load_gold(path: str | Path) -> list[GoldAnnotation]:
    path = Path(path)
    return parse_gold(path.read_text(encoding="utf-8"), source=str(path))


@dataclass
class ModeRow:
    name: str
    mode: RankMode
    source: str | None
    report: EvalReport | None
    note: str = ""

    @property
    def accuracy(self) -> float | None:
        return self.report.accuracy if self.report is not None else None


def compare_modes(
    corpus: Corpus,
    kb: KnowledgeBase,
    embeddings: Mapping[str, EmbeddingMatrix | str | Path | None],
    gold: Sequence[GoldAnnotation],
    lam: float = 0.2,
    detector: DetectorConfig = DetectorConfig(),
    modes: Sequence[RankMode] = tuple(RankMode),
) -> list[ModeRow]:
    """Accuracy of each ranking mode over the same gold set.

    ``embeddings`` maps a row label to a matrix or an embedding file path.
    A path that fails to load yields an unavailable row rather than an error.
    """
    modes = [RankMode(x) for x in modes]
    rows = []
    if RankMode.RATING_ONLY in modes:
        report = evaluate(corpus, kb, None, gold, RankerConfig(lam, RankMode.RATING_ONLY), detector)
        rows.append(ModeRow("rating", RankMode.RATING_ONLY, None, report))
    for label, source in embeddings.items():
        m, note = source, ""
        if not isinstance(source, EmbeddingMatrix):
            try:
                m = load_embeddings(source) if source is not None else None
            except (OSError, ValueError) as exc:
                m, note = None, f"unavailable: {exc}"
            if m is None and not note:
                note = "unavailable: no embedding source"
        for mode in modes:
            if mode is RankMode.RATING_ONLY:
                continue
            name = f"{mode.value}[{label}]"
            if m is None:
                rows.append(ModeRow(name, mode, label, None, note))
            else:
                rows.append(ModeRow(name, mode, label,
                                    evaluate(corpus, kb, m, gold, RankerConfig(lam, mode), detector)))
    return rows


def format_mode_table(rows: Sequence[ModeRow]) -> str:
    width = max([len("approach")] + [len(r.name) for r in rows])
    lines = [f"{'approach':<{width}}  accuracy", f"{'-' * width}  --------"]
    for r in rows:
        acc = f"{r.accuracy:8.2%}" if r.report is not None else "     n/a"
        lines.append(f"{r.name:<{width}}  {acc}" + (f"  ({r.note})" if r.note else ""))
    return "\n".join(lines) + "\n"


def format_mode_tsv(rows: Sequence[ModeRow]) -> str:
    header = ["approach", "mode", "source", "total", "correct", "accuracy"] + [c.value for c in ErrorCategory]
    lines = ["\t".join(header)]
    for r in rows:
        if r.report is None:
            lines.append("\t".join([r.name, r.mode.value, r.source or "", "", "", "NA"] + [""] * 3))
            continue
        rep = r.report
        lines.append("\t".join(
            [r.name, r.mode.value, r.source or "", str(rep.total), str(rep.correct), f"{rep.accuracy:.6f}"]
            + [str(rep.error_counts[c]) for c in ErrorCategory]
        ))
    return "\n".join(lines) + "\n"
