"""Command-line front end: ``summarize``, ``evaluate`` and ``rouge``.

Settings resolve as defaults < ``--config`` JSON file < ``--experiment``
code < individual weighting flags.  Exit codes: 0 ok, 2 invalid config,
3 corpus error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, CorpusError, LsaSummError
from .experiment import (
    ExperimentCode,
    Selector,
    SummarizerConfig,
    load_manifest,
    rouge_normalizer,
    run_experiment,
    summarize_text,
)
from .morphology import MorphologyMode
from .rouge import EvalConfig, rouge_n
from .text import read_document, read_stopword_file
from .weighting import Adjacency, GlobalScheme, LocalScheme

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CORPUS = 3
EXIT_NUMERIC = 4

DEFAULTS = {
    "experiment": "RAWEF4ADJ",
    "selector": "ess_lsa",
    "language": "ar",
    "gamma": 0.5,
    "alpha": 0.5,
    "topic_terms": 3,
    "orders": "1,2",
    "jobs": 1,
}


def _orders(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    try:
        return tuple(int(v) for v in str(value).split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"bad n-gram order list: {value!r}") from exc


def _add_model_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with default option values")
    p.add_argument("--experiment", help="experiment code, e.g. RAWEFPOS4ADJ")
    p.add_argument("--morphology", choices=[m.value for m in MorphologyMode])
    p.add_argument("--local", choices=[s.value for s in LocalScheme])
    p.add_argument("--global", dest="global_", choices=[s.value for s in GlobalScheme])
    p.add_argument("--adjacency", choices=[a.value for a in Adjacency])
    p.add_argument("--pos", action=argparse.BooleanOptionalAction, default=None,
                   help="keep only NN*/VB* tokens (needs token/TAG input)")
    p.add_argument("--selector", choices=[s.value for s in Selector])
    p.add_argument("--language", choices=["ar", "en"])
    p.add_argument("--stopwords", type=Path, help="stop-word file (one word per line)")
    p.add_argument("--gamma", type=float, help="adjacent-weight scale (default 0.5)")
    p.add_argument("--alpha", type=float, help="singular-value cutoff fraction (default 0.5)")
    p.add_argument("--topic-terms", type=int, dest="topic_terms")
    budget = p.add_mutually_exclusive_group()
    budget.add_argument("--ratio", type=float, help="summary size as a fraction of sentences")
    budget.add_argument("--sentences", type=int, help="absolute summary size in sentences")


def _settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            settings.update(json.loads(args.config.read_text(encoding="utf-8")))
            if "global" in settings:
                settings["global_"] = settings.pop("global")
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "func", "config"):
            settings[key] = value
    return settings


def _summarizer(settings: dict) -> SummarizerConfig:
    try:
        code = ExperimentCode.parse(settings["experiment"])
        overrides = {}
        if settings.get("morphology") is not None:
            overrides["morphology"] = MorphologyMode(settings["morphology"])
        if settings.get("local") is not None:
            overrides["local"] = LocalScheme(settings["local"])
        if settings.get("global_") is not None:
            overrides["global_"] = GlobalScheme(settings["global_"])
        if settings.get("adjacency") is not None:
            overrides["adjacency"] = Adjacency(settings["adjacency"])
        if settings.get("pos") is not None:
            overrides["pos"] = bool(settings["pos"])
        code = replace(code, **overrides)
        stopwords = read_stopword_file(settings["stopwords"]) if settings.get("stopwords") else None
        gamma = float(settings["gamma"])
        if not 0 <= gamma <= 1:
            raise ConfigError(f"gamma must lie in [0, 1], got {gamma}")
        return SummarizerConfig(
            code=code,
            selector=Selector(settings["selector"]),
            language=settings["language"],
            gamma=gamma,
            alpha=float(settings["alpha"]),
            topic_terms=int(settings["topic_terms"]),
            stopwords=stopwords,
        )
    except OSError as exc:
        raise ConfigError(str(exc)) from exc
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _budget(settings: dict) -> tuple[float | None, int | None]:
    ratio, sentences = settings.get("ratio"), settings.get("sentences")
    if ratio is not None and sentences is not None:
        raise ConfigError("give only one of ratio and sentences")
    if ratio is not None and not 0 < ratio <= 1:
        raise ConfigError(f"ratio must lie in (0, 1], got {ratio}")
    if sentences is not None and sentences < 0:
        raise ConfigError("sentences must be >= 0")
    return ratio, sentences


def _eval_config(settings: dict, language: str) -> EvalConfig:
    try:
        return EvalConfig(
            orders=_orders(settings["orders"]),
            truncate_words=settings.get("truncate"),
            normalize=rouge_normalizer(settings.get("rouge_normalize"), language),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_summarize(args: argparse.Namespace) -> int:
    settings = _settings(args)
    config = _summarizer(settings)
    ratio, sentences = _budget(settings)
    if ratio is None and sentences is None:
        ratio = 0.3
    try:
        raw = read_document(args.file)
    except OSError as exc:
        raise CorpusError(str(exc)) from exc
    doc, summary = summarize_text(raw, config, ratio=ratio, sentences=sentences)
    if args.json:
        out = {
            **config.settings(),
            "n_sentences": doc.n,
            "selected": list(summary.sentence_indices),
            "summary": summary.rendered,
        }
        sys.stdout.write(json.dumps(out, ensure_ascii=False, indent=2) + "\n")
    else:
        sys.stdout.write(summary.rendered + "\n")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    settings = _settings(args)
    config = _summarizer(settings)
    ratio, sentences = _budget(settings)
    eval_config = _eval_config(settings, config.language)
    manifest = load_manifest(args.manifest)
    report = run_experiment(manifest, config, eval_config, ratio=ratio, sentences=sentences,
                            jobs=int(settings["jobs"]))
    text = report.to_json()
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.csv:
        args.csv.write_text(report.to_csv(), encoding="utf-8")
    return EXIT_OK


def cmd_rouge(args: argparse.Namespace) -> int:
    settings = dict(DEFAULTS, orders=args.n, truncate=args.truncate)
    eval_config = _eval_config(settings, "ar")
    try:
        cand = args.candidate.read_text(encoding="utf-8")
        refs = [p.read_text(encoding="utf-8") for p in args.references]
    except OSError as exc:
        raise CorpusError(str(exc)) from exc
    scores = rouge_n(cand, refs, eval_config)
    out = {f"rouge-{n}": s.as_dict() for n, s in scores.items()}
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsasumm", description="LSA-based extractive summarization")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize one UTF-8 text file")
    p.add_argument("file", type=Path)
    _add_model_options(p)
    p.add_argument("--json", action="store_true", help="emit selected indices and settings as JSON")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="summarize a corpus and score it with ROUGE")
    p.add_argument("manifest", type=Path, help="corpus directory (docs/, refs/) or JSON manifest")
    _add_model_options(p)
    p.add_argument("-n", "--orders", help="comma-separated n-gram orders (default 1,2)")
    p.add_argument("--truncate", type=int, help="truncate candidates to this many words")
    p.add_argument("--rouge-normalize", dest="rouge_normalize", choices=["word", "stem", "root"],
                   help="morphology applied to both sides before n-gram matching")
    p.add_argument("--jobs", type=int, help="documents processed in parallel")
    p.add_argument("-o", "--output", type=Path, help="write the JSON report here instead of stdout")
    p.add_argument("--csv", type=Path, help="also write per-document ROUGE rows as CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("rouge", help="score one candidate against reference files")
    p.add_argument("candidate", type=Path)
    p.add_argument("references", type=Path, nargs="+")
    p.add_argument("-n", default="1,2", help="comma-separated n-gram orders")
    p.add_argument("--truncate", type=int)
    p.set_defaults(func=cmd_rouge)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except LsaSummError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
