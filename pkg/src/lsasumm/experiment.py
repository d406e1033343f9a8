"""Experiment codes, corpus manifests and corpus-level runs.

An experiment code packs a full weighting recipe into one token, e.g.
``RAWEFPOS4ADJ`` = root morphology, augmented local weight, entropy global
weight, POS filtering, four-sentence adjacency.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Sequence

from .errors import CorpusError, EmptyCorpus, InvalidCode
from .lsa import decompose, filter_sigma
from .morphology import MorphologyMode, for_language, normalize_term
from .rouge import EvalConfig, RougeScore, rouge_n
from .selection import (
    DEFAULT_TOPIC_TERMS,
    Summary,
    ess_lsa_select,
    gong_liu_select,
    lead_select,
    steinberger_select,
)
from .text import Document, PipelineConfig, RawDocument, build_document, default_stopwords, read_document
from .weighting import Adjacency, GlobalScheme, LocalScheme, WeightConfig, build_matrix

log = logging.getLogger(__name__)

_MORPH_LETTERS = {"R": MorphologyMode.ROOT, "S": MorphologyMode.STEM, "W": MorphologyMode.WORD}
_ADJ_TOKENS = {"NOADJ": Adjacency.NONE, "2ADJ": Adjacency.TWO, "4ADJ": Adjacency.FOUR}


class Selector(str, Enum):
    ESS_LSA = "ess_lsa"
    LEAD = "lead"
    GONG_LIU = "gong_liu"
    STEINBERGER = "steinberger"


@dataclass(frozen=True)
class ExperimentCode:
    morphology: MorphologyMode = MorphologyMode.ROOT
    local: LocalScheme = LocalScheme.AW
    global_: GlobalScheme = GlobalScheme.EF
    pos: bool = False
    adjacency: Adjacency = Adjacency.FOUR

    @classmethod
    def parse(cls, code: str) -> "ExperimentCode":
        """Parse ``[R|S|W][BR|TF|AW|LW][NG|ISF|EF][POS]?[NOADJ|2ADJ|4ADJ]``
        (case-insensitive)."""
        text = code.strip().upper()
        pos = 0

        def take(options) -> str:
            nonlocal pos
            for opt in options:
                if text.startswith(opt, pos):
                    pos += len(opt)
                    return opt
            raise InvalidCode(code, text[pos:] or "<end of code>")

        morph = _MORPH_LETTERS[take(_MORPH_LETTERS)]
        local = LocalScheme(take([s.value for s in LocalScheme]))
        glob = GlobalScheme(take([s.value for s in GlobalScheme]))
        use_pos = text.startswith("POS", pos)
        if use_pos:
            pos += 3
        adjacency = _ADJ_TOKENS[take(_ADJ_TOKENS)]
        if pos != len(text):
            raise InvalidCode(code, text[pos:])
        return cls(morph, local, glob, use_pos, adjacency)

    def render(self) -> str:
        morph = {v: k for k, v in _MORPH_LETTERS.items()}[self.morphology]
        adj = {v: k for k, v in _ADJ_TOKENS.items()}[self.adjacency]
        return f"{morph}{self.local.value}{self.global_.value}{'POS' if self.pos else ''}{adj}"

    def __str__(self) -> str:
        return self.render()


def parse_experiment_code(code: str) -> ExperimentCode:
    return ExperimentCode.parse(code)


def budget_for(n: int, ratio: float | None = None, sentences: int | None = None) -> int:
    """Sentence budget: ``max(1, ceil(ratio * n))`` or an absolute count clamped to n."""
    if (ratio is None) == (sentences is None):
        raise ValueError("give exactly one of ratio or sentences")
    if sentences is not None:
        if sentences < 0:
            raise ValueError("sentence budget must be >= 0")
        return min(sentences, n)
    if not 0 < ratio <= 1:
        raise ValueError(f"ratio must lie in (0, 1], got {ratio}")
    # round() guards against 0.3 * 10 landing a hair above 3.
    return min(n, max(1, math.ceil(round(ratio * n, 9))))


@dataclass(frozen=True)
class SummarizerConfig:
    code: ExperimentCode = ExperimentCode()
    selector: Selector = Selector.ESS_LSA
    language: str = "ar"
    gamma: float = 0.5
    alpha: float = 0.5
    topic_terms: int = DEFAULT_TOPIC_TERMS
    stopwords: frozenset[str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "selector", Selector(self.selector))

    def pipeline(self) -> PipelineConfig:
        stop = self.stopwords if self.stopwords is not None else default_stopwords(self.language)
        return PipelineConfig(
            stopwords=stop,
            morphology_mode=self.code.morphology,
            pos_filter_enabled=self.code.pos,
            language=self.language,
        )

    def weights(self) -> WeightConfig:
        return WeightConfig(self.code.local, self.code.global_, self.code.adjacency, self.gamma)

    def settings(self) -> dict:
        return {
            "experiment": self.code.render(),
            "selector": self.selector.value,
            "language": self.language,
            "gamma": self.gamma,
            "alpha": self.alpha,
            "topic_terms": self.topic_terms,
        }


def summarize_document(
    doc: Document,
    config: SummarizerConfig,
    M: int,
) -> Summary:
    if config.selector is Selector.LEAD:
        return lead_select(doc, M)
    svd = decompose(build_matrix(doc, config.weights()))
    sigma = filter_sigma(svd.E, config.alpha)
    if config.selector is Selector.ESS_LSA:
        return ess_lsa_select(svd, sigma, doc, M, config.topic_terms)
    if config.selector is Selector.GONG_LIU:
        return gong_liu_select(svd, doc, M)
    return steinberger_select(svd, sigma, doc, M)


def summarize_text(
    raw: RawDocument,
    config: SummarizerConfig,
    ratio: float | None = None,
    sentences: int | None = None,
) -> tuple[Document, Summary]:
    doc = build_document(raw, config.pipeline())
    M = budget_for(doc.n, ratio=ratio, sentences=sentences)
    return doc, summarize_document(doc, config, M)


@dataclass
class CorpusManifest:
    documents: list[tuple[str, Path]]
    references: dict[str, list[Path]] = field(default_factory=dict)
    ratio: float | None = None
    sentences: int | None = None

    def __post_init__(self):
        self.documents = sorted(((i, Path(p)) for i, p in self.documents), key=lambda d: d[0])
        ids = [i for i, _ in self.documents]
        if len(set(ids)) != len(ids):
            raise CorpusError("duplicate document id in manifest")
        self.references = {k: sorted(Path(p) for p in v) for k, v in self.references.items()}

    def check_paths(self) -> None:
        for doc_id, path in self.documents:
            if not path.is_file():
                raise CorpusError(f"document {doc_id!r}: missing file {path}")
            for ref in self.references.get(doc_id, []):
                if not ref.is_file():
                    raise CorpusError(f"document {doc_id!r}: missing reference {ref}")


def _manifest_from_dir(root: Path) -> CorpusManifest:
    docs_dir = root / "docs"
    if not docs_dir.is_dir():
        raise CorpusError(f"{root}: expected a docs/ directory")
    documents = [(p.stem, p) for p in sorted(docs_dir.glob("*.txt"))]
    references = {}
    for doc_id, _ in documents:
        ref_dir = root / "refs" / doc_id
        refs = sorted(ref_dir.glob("*.txt")) if ref_dir.is_dir() else []
        if refs:
            references[doc_id] = refs
    return CorpusManifest(documents, references)


def _manifest_from_json(path: Path) -> CorpusManifest:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"cannot read manifest {path}: {exc}") from exc
    base = path.parent
    if "root" in data:
        manifest = _manifest_from_dir(base / data["root"])
    else:
        documents, references = [], {}
        for entry in data.get("documents", []):
            documents.append((entry["id"], base / entry["path"]))
            if entry.get("references"):
                references[entry["id"]] = [base / r for r in entry["references"]]
        for doc_id, refs in data.get("references", {}).items():
            references.setdefault(doc_id, []).extend(base / r for r in refs)
        manifest = CorpusManifest(documents, references)
    manifest.ratio = data.get("ratio")
    manifest.sentences = data.get("sentences")
    return manifest


def load_manifest(path) -> CorpusManifest:
    """Load a corpus from a ``docs/`` + ``refs/`` directory or a JSON manifest.

    A directory may carry its own ``manifest.json`` with budget settings.
    """
    path = Path(path)
    if path.is_dir():
        if (path / "manifest.json").is_file():
            manifest = _manifest_from_json(path / "manifest.json")
            if not manifest.documents:
                budget = (manifest.ratio, manifest.sentences)
                manifest = _manifest_from_dir(path)
                manifest.ratio, manifest.sentences = budget
        else:
            manifest = _manifest_from_dir(path)
    elif path.is_file():
        manifest = _manifest_from_json(path)
    else:
        raise CorpusError(f"no such corpus: {path}")
    manifest.check_paths()
    return manifest


@dataclass
class DocumentResult:
    id: str
    n_sentences: int
    budget: int
    selected: tuple[int, ...]
    rouge: dict[int, RougeScore] | None

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "n_sentences": self.n_sentences,
            "budget": self.budget,
            "selected": list(self.selected),
            "rouge": None if self.rouge is None else {f"rouge-{n}": s.as_dict() for n, s in self.rouge.items()},
        }


@dataclass
class RunReport:
    settings: dict
    documents: list[DocumentResult]
    orders: tuple[int, ...]

    def aggregate(self) -> dict:
        scored = [d for d in self.documents if d.rouge is not None]
        out: dict = {"documents": len(self.documents), "evaluated": len(scored)}
        for n in self.orders:
            if not scored:
                out[f"rouge-{n}"] = None
                continue
            out[f"rouge-{n}"] = {
                metric: math.fsum(getattr(d.rouge[n], metric) for d in scored) / len(scored)
                for metric in ("recall", "precision", "f1")
            }
        return out

    def as_dict(self) -> dict:
        return {
            "settings": self.settings,
            "documents": [d.as_dict() for d in self.documents],
            "aggregate": self.aggregate(),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), ensure_ascii=False, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "order", "recall", "precision", "f1"])
        for d in self.documents:
            if d.rouge is None:
                continue
            for n, s in d.rouge.items():
                writer.writerow([d.id, n, repr(s.recall), repr(s.precision), repr(s.f1)])
        return buf.getvalue()


def rouge_normalizer(mode: MorphologyMode | str | None, language: str):
    if mode is None or MorphologyMode(mode) is MorphologyMode.WORD:
        return None
    morphology = for_language(language)
    mode = MorphologyMode(mode)
    return lambda token: normalize_term(token, mode, morphology)


def run_experiment(
    manifest: CorpusManifest,
    config: SummarizerConfig,
    eval_config: EvalConfig | None = None,
    ratio: float | None = None,
    sentences: int | None = None,
    jobs: int = 1,
) -> RunReport:
    """Summarize and score every document of ``manifest``.

    Explicit ``ratio``/``sentences`` override the manifest's budget; with
    neither given anywhere the budget defaults to a 30% ratio.  Passing
    ``eval_config=None`` skips scoring.
    """
    if not manifest.documents:
        raise EmptyCorpus("corpus has no documents")
    if ratio is None and sentences is None:
        ratio, sentences = manifest.ratio, manifest.sentences
        if ratio is None and sentences is None:
            ratio = 0.3
        elif ratio is not None and sentences is not None:
            sentences = None
    pipeline = config.pipeline()
    # Resolve stop words once so worker threads share one frozen set.
    config = replace(config, stopwords=pipeline.stopwords)

    def process(item: tuple[str, Path]) -> DocumentResult:
        doc_id, path = item
        doc = build_document(read_document(path, doc_id), pipeline)
        M = budget_for(doc.n, ratio=ratio, sentences=sentences)
        summary = summarize_document(doc, config, M)
        scores = None
        if eval_config is not None:
            refs = manifest.references.get(doc_id, [])
            if refs:
                texts = [p.read_text(encoding="utf-8") for p in refs]
                scores = rouge_n(summary.rendered, texts, eval_config)
            else:
                log.warning("document %r has no references; evaluation skipped", doc_id)
        return DocumentResult(doc_id, doc.n, M, summary.sentence_indices, scores)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(process, manifest.documents))
    else:
        results = [process(item) for item in manifest.documents]

    settings = config.settings()
    settings["budget"] = {"ratio": ratio} if ratio is not None else {"sentences": sentences}
    orders = eval_config.orders if eval_config is not None else ()
    if eval_config is not None:
        settings["rouge"] = {"orders": list(eval_config.orders), "truncate_words": eval_config.truncate_words}
    return RunReport(settings, results, orders)
