"""``key = value`` configuration files for the command line."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

from .detect import DetectorConfig
from .embeddings import TrainConfig
from .ranker import DEFAULT_LAMBDA, RankerConfig

DATA_DIR = Path(__file__).parent / "data"
SAMPLE_DIR = DATA_DIR / "sample"


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    manifest: str | None = None
    per_line: bool | None = None
    kb: str = str(SAMPLE_DIR / "kb.tsv")
    embeddings: list[str] = field(default_factory=list)
    gold: str | None = None
    inputs: list[str] = field(default_factory=list)
    out: str = "out"

    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    lr: float = 0.025
    min_count: int = 2
    subsample: float = 1e-3
    seed: int = 1
    workers: int = 1

    lam: float = DEFAULT_LAMBDA
    mode: str = "combined"

    min_len: int = 2
    max_len: int = 10
    lower_min_len: int = 2
    lower_max_len: int = 4
    detect_lowercase: bool = True
    detect_slash: bool = True

    def resolved_manifest(self) -> tuple[Path, bool]:
        """Manifest path and per-line mode; the bundled sample is read per line."""
        if self.manifest is None:
            return SAMPLE_DIR / "manifest.tsv", True if self.per_line is None else self.per_line
        return Path(self.manifest), bool(self.per_line)

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            dim=self.dim, window=self.window, negatives=self.negatives, epochs=self.epochs,
            initial_learning_rate=self.lr, min_count=self.min_count,
            subsample_threshold=self.subsample, seed=self.seed, workers=self.workers,
        )

    def ranker_config(self) -> RankerConfig:
        return RankerConfig(self.lam, self.mode)

    def detector_config(self) -> DetectorConfig:
        return DetectorConfig(self.min_len, self.max_len, self.lower_min_len, self.lower_max_len,
                              self.detect_lowercase, self.detect_slash)

    def validate(self) -> None:
        self.train_config()
        self.ranker_config()


_ALIASES = {"lambda": "lam", "subsample_threshold": "subsample", "initial_learning_rate": "lr",
            "embedding": "embeddings", "input": "inputs"}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _coerce(name: str, raw: str, kind):
    kind = str(kind)
    if kind.startswith("list"):
        return [p.strip() for p in raw.split(",") if p.strip()]
    if "bool" in kind:
        low = raw.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
    if kind.startswith("int"):
        return int(raw)
    if kind.startswith("float"):
        return float(raw)
    return raw


def parse_config(text: str, source: str = "<config>") -> dict:
    types = {f.name: f.type for f in fields(PipelineConfig)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = _ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        if key not in types:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _coerce(key, raw, types[key])
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from None
    return values


def load_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    values = parse_config(text, str(path))
    # relative paths in a config file resolve against the file's directory
    for key in ("manifest", "kb", "gold"):
        if values.get(key) and not Path(values[key]).is_absolute():
            values[key] = str(path.parent / values[key])
    for key in ("embeddings", "inputs"):
        if key in values:
            values[key] = [_rebase(v, path.parent) for v in values[key]]
    return values


def _rebase(value: str, base: Path) -> str:
    label, sep, p = value.rpartition("=")
    if Path(p).is_absolute():
        return value
    return f"{label}{sep}{base / p}"
