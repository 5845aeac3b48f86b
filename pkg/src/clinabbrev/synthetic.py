"""Seeded synthetic abbreviation benchmark.

Every abbreviation gets a handful of candidate expansions built from
pseudo-words, each with its own topic vocabulary. Clinical notes use the
abbreviation among the topic words of its gold expansion; candidate articles
use each candidate among its own topic words. A "general" corpus holds the
same articles but mostly uses the abbreviation in a different sense. Ratings
are drawn so the gold expansion is top-rated for only half of the entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus, Document, SourceKind
from .evaluation import GoldAnnotation
from .kb import Candidate, KbEntry, KnowledgeBase, dump_kb

_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "gl", "st", "tr"]
_VOWELS = ["a", "e", "i", "o", "u"]
_FILLER = ["the", "patient", "with", "was", "noted", "and", "on", "of", "in", "for", "given", "history"]


@dataclass
class SyntheticBenchmark:
    kb: KnowledgeBase
    notes: Corpus
    articles: Corpus
    general: Corpus
    gold: list[GoldAnnotation]
    gold_top_rated: int

    @property
    def task_corpus(self) -> Corpus:
        return Corpus(self.notes.documents + self.articles.documents)

    @property
    def general_corpus(self) -> Corpus:
        return Corpus(self.general.documents)

    def write(self, out_dir: str | Path) -> dict[str, Path]:
        """Write KB, per-line corpora, gold TSV and a manifest for the task corpus."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = {
            "kb": out / "kb.tsv",
            "notes": out / "notes.txt",
            "articles": out / "articles.txt",
            "general": out / "general.txt",
            "gold": out / "gold.tsv",
            "manifest": out / "manifest.tsv",
            "general_manifest": out / "general_manifest.tsv",
        }
        paths["kb"].write_text(dump_kb(self.kb), encoding="utf-8")
        for name, corpus in (("notes", self.notes), ("articles", self.articles), ("general", self.general)):
            paths[name].write_text("".join(d.text + "\n" for d in corpus), encoding="utf-8")
        # per-line ingestion names documents <stem>:<lineno>
        line_ids = {d.id: f"notes:{i}" for i, d in enumerate(self.notes, start=1)}
        paths["gold"].write_text(
            "".join(f"{line_ids[g.doc_id]}\t{g.abbrev}\t{g.occurrence}\t{g.expansion}\n" for g in self.gold),
            encoding="utf-8",
        )
        paths["manifest"].write_text("notes.txt\tclinical_note\narticles.txt\tcandidate_article\n", encoding="utf-8")
        paths["general_manifest"].write_text("general.txt\treference_text\n", encoding="utf-8")
        return paths


class _Words:
    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.used = set(_FILLER)

    def pseudo(self, syllables: int) -> str:
        while True:
            w = "".join(self.rng.choice(_ONSETS) + self.rng.choice(_VOWELS) for _ in range(syllables))
            if w not in self.used:
                self.used.add(w)
                return w

    def abbrev(self) -> str:
        while True:
            n = int(self.rng.integers(2, 5))
            a = "".join(self.rng.choice(list("ABCDEFGHJKLMNPQRSTVWXYZ"), n))
            if a.lower() not in self.used:
                self.used.add(a.lower())
                return a


def _sentence(rng, center: list[str], topic: list[str], n_context: int = 6) -> str:
    ctx = list(rng.choice(topic, n_context))
    filler = list(rng.choice(_FILLER, 3))
    left = ctx[: n_context // 2] + filler[:1]
    right = filler[1:2] + ctx[n_context // 2:] + filler[2:]
    return " ".join(left + center + right) + " ."


def make_benchmark(
    n_abbrevs: int = 50,
    seed: int = 0,
    min_candidates: int = 3,
    max_candidates: int = 6,
    topic_size: int = 8,
    notes_per_abbrev: int = 40,
    sentences_per_article: int = 40,
    general_mismatch: float = 0.7,
) -> SyntheticBenchmark:
    rng = np.random.default_rng(seed)
    words = _Words(rng)
    abbrevs = [words.abbrev() for _ in range(n_abbrevs)]
    gold_first = set(rng.choice(n_abbrevs, n_abbrevs // 2, replace=False).tolist())

    entries, notes, articles, general, gold = [], [], [], [], []
    for ai, abbrev in enumerate(abbrevs):
        n_cand = int(rng.integers(min_candidates, max_candidates + 1))
        head = words.pseudo(3) if rng.random() < 0.5 else None
        phrases, topics = [], []
        for _ in range(n_cand):
            n_mod = int(rng.integers(1, 3)) if head else int(rng.integers(2, 4))
            phrase = [words.pseudo(2) for _ in range(n_mod)] + ([head] if head else [])
            phrases.append(phrase)
            topics.append([words.pseudo(2) for _ in range(topic_size)])
        g = int(rng.integers(n_cand))

        ratings = rng.choice(np.arange(1, 61), n_cand, replace=False)
        order = np.argsort(-ratings)
        if ai in gold_first:
            ratings[[g, order[0]]] = ratings[[order[0], g]]
        elif order[0] == g:
            ratings[[g, order[1]]] = ratings[[order[1], g]]
        cands = tuple(Candidate(tuple(p), int(r)) for p, r in zip(phrases, ratings))
        entries.append(KbEntry(abbrev, cands))

        for ni in range(notes_per_abbrev):
            doc_id = f"note_{abbrev}_{ni}"
            notes.append(Document(doc_id, SourceKind.CLINICAL_NOTE, _sentence(rng, [abbrev], topics[g])))
        gold.append(GoldAnnotation(f"note_{abbrev}_0", abbrev, 0, " ".join(phrases[g])))

        for ci, (phrase, topic) in enumerate(zip(phrases, topics)):
            text = " ".join(_sentence(rng, phrase, topic) for _ in range(sentences_per_article))
            articles.append(Document(f"article_{abbrev}_{ci}", SourceKind.CANDIDATE_ARTICLE, text))
            general.append(Document(f"general_{abbrev}_{ci}", SourceKind.REFERENCE_TEXT,
                                    " ".join(_sentence(rng, phrase, topic) for _ in range(sentences_per_article))))
        if rng.random() < general_mismatch:
            sense = int(rng.choice([i for i in range(n_cand) if i != g]))
        else:
            sense = g
        text = " ".join(_sentence(rng, [abbrev], topics[sense]) for _ in range(notes_per_abbrev))
        general.append(Document(f"general_{abbrev}_usage", SourceKind.REFERENCE_TEXT, text))

    return SyntheticBenchmark(
        KnowledgeBase(entries), Corpus(notes), Corpus(articles), Corpus(general), gold, len(gold_first)
    )
