"""Command-line front-end: filter -> split -> eligibility -> augment -> stats/bleu.

Every subcommand prints a JSON summary to stdout. Exit codes: 0 success,
2 config error, 3 I/O error, 1 anything else.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from pathlib import Path

import yaml

from . import augment as aug_mod
from . import stats as stats_mod
from .augment import CapacityError, check_eligibility, diagnose, generate, ineligibility_reasons
from .corpusio import (
    load_parsed_bisentences,
    read_bisentences_tsv,
    read_parallel_files,
    write_augmented_tsv,
    write_bisentences_tsv,
    write_provenance_jsonl,
)
from .deptree import DEFAULT_LABELS, Relation
from .filtering import FilterConfig, RatioMode, filter_corpus
from .metrics import corpus_bleu
from .splitter import ConfigError, SplitConfig, split

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _emit(summary: dict) -> None:
    print(json.dumps(summary, ensure_ascii=False, sort_keys=True))


def _write_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )


def _filter_config(args) -> FilterConfig:
    return FilterConfig(
        max_words=args.max_words,
        abs_diff_limit=args.abs_diff,
        ratio_limit=args.ratio_limit,
        ratio_mode=RatioMode(args.ratio_mode),
        strip_quotes=not args.keep_quotes,
        reject_html=not args.keep_html,
    )


def _labels(args) -> dict[Relation, frozenset[str]]:
    return {
        Relation.SUBJECT: frozenset(args.subject_labels.split(",")),
        Relation.OBJECT: frozenset(args.object_labels.split(",")),
    }


def _subsample(records: list, n: int, seed: int) -> list:
    if n >= len(records):
        return records
    rng = random.Random(f"{seed}:sample")
    chosen = sorted(rng.sample(range(len(records)), n))
    return [records[i] for i in chosen]


def cmd_filter(args) -> int:
    cfg = _filter_config(args)
    if args.input:
        records = read_bisentences_tsv(args.input)
    else:
        records = read_parallel_files(args.src, args.tgt, args.subcorpus)
    kept, report = filter_corpus(records, cfg)
    if args.sample is not None:
        kept = _subsample(kept, args.sample, args.seed)
    write_bisentences_tsv(args.output, kept)
    if args.report:
        _write_json(args.report, report.to_dict())
    _emit({"command": "filter", "written": len(kept), **report.to_dict()})
    return EXIT_OK


def cmd_split(args) -> int:
    ratios = tuple(float(r) for r in args.ratios.split(","))
    if len(ratios) != 3:
        raise ConfigError(f"expected three ratios, got {args.ratios!r}")
    cfg = SplitConfig(ratios=ratios, seed=args.seed)
    records = read_bisentences_tsv(args.input)
    train, dev, test = split(records, cfg)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_bisentences_tsv(outdir / "train.tsv", train)
    write_bisentences_tsv(outdir / "dev.tsv", dev)
    write_bisentences_tsv(outdir / "test.tsv", test)
    _emit({"command": "split", "train": len(train), "dev": len(dev), "test": len(test)})
    return EXIT_OK


def cmd_stats(args) -> int:
    records = read_bisentences_tsv(args.input)
    stats = stats_mod.compute_stats(records)
    _write_json(args.output, stats.to_dict())
    if args.hist_dir:
        hist_dir = Path(args.hist_dir)
        hist_dir.mkdir(parents=True, exist_ok=True)
        for name, counter, kind in (
            ("word_diff", stats.word_diff, "diff"),
            ("char_diff", stats.char_diff, "diff"),
            ("word_ratio", stats.word_ratio, "ratio"),
            ("char_ratio", stats.char_ratio, "ratio"),
        ):
            with open(hist_dir / f"{name}.csv", "w", encoding="utf-8", newline="") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(["bin_low", "bin_high", "count"])
                writer.writerows(stats_mod.histogram_csv_rows(counter, kind))
    _emit({"command": "stats", "bisentences": stats.totals.bisentences})
    return EXIT_OK


def cmd_eligibility(args) -> int:
    pairs, _, _ = load_parsed_bisentences(
        args.src_conllu, args.tgt_conllu, lenient=args.lenient
    )
    labels = _labels(args)
    reasons_hist: dict[str, int] = {}
    eligible_ids = []
    for pair in pairs:
        reasons = ineligibility_reasons(pair, labels)
        if reasons:
            for reason in reasons:
                reasons_hist[reason] = reasons_hist.get(reason, 0) + 1
        else:
            eligible_ids.append(pair.id)
    rate = len(eligible_ids) / len(pairs) if pairs else 0.0
    summary = {
        "command": "eligibility",
        "pairs": len(pairs),
        "eligible": len(eligible_ids),
        "eligible_rate": rate,
        "ineligibility_reasons": reasons_hist,
    }
    if args.output:
        _write_json(args.output, {**summary, "eligible_ids": eligible_ids})
    _emit(summary)
    return EXIT_OK


def cmd_augment(args) -> int:
    pairs, _, _ = load_parsed_bisentences(
        args.src_conllu, args.tgt_conllu, lenient=args.lenient
    )
    labels = _labels(args)
    eligible = [e for e in (check_eligibility(p, labels) for p in pairs) if e]
    if args.count is not None:
        count = args.count
    else:
        count = math.floor(args.ratio * len(pairs))
    strategy = Relation(args.strategy)
    augmented = generate(eligible, count, strategy, args.seed)
    by_id = {e.base.id: e for e in eligible}
    flagged = [
        aug_mod.AugmentedPair(
            source_text=a.source_text,
            target_text=a.target_text,
            source_tokens=a.source_tokens,
            target_tokens=a.target_tokens,
            provenance=a.provenance,
            flags=tuple(diagnose(a, by_id[a.provenance.recipient_id], by_id[a.provenance.donor_id])),
        )
        for a in augmented
    ]
    write_augmented_tsv(args.output, flagged)
    if args.provenance:
        write_provenance_jsonl(args.provenance, flagged)
    _emit(
        {
            "command": "augment",
            "pairs": len(pairs),
            "eligible": len(eligible),
            "requested": count,
            "generated": len(flagged),
            "strategy": strategy.value,
            "seed": args.seed,
        }
    )
    return EXIT_OK


def cmd_bleu(args) -> int:
    hyp_lines = Path(args.hyp).read_text(encoding="utf-8").splitlines()
    ref_lines = Path(args.ref).read_text(encoding="utf-8").splitlines()
    report = corpus_bleu(
        [line.split() for line in hyp_lines],
        [line.split() for line in ref_lines],
        smooth=args.smooth,
    )
    if args.output:
        _write_json(args.output, report.to_dict())
    print(f"BLEU = {report.score:.2f} (BP = {report.brevity_penalty:.3f}, "
          f"hyp/ref = {report.hyp_length}/{report.ref_length})")
    _emit({"command": "bleu", **report.to_dict()})
    return EXIT_OK


def cmd_pipeline(args) -> int:
    with open(args.config, encoding="utf-8") as handle:
        cfg = yaml.safe_load(handle) or {}
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    outdir = Path(cfg["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)

    fcfg_raw = cfg.get("filter", {})
    fcfg = FilterConfig(
        max_words=int(fcfg_raw.get("max_words", 32)),
        abs_diff_limit=int(fcfg_raw.get("abs_diff_limit", 7)),
        ratio_limit=float(fcfg_raw.get("ratio_limit", 1.6)),
        ratio_mode=RatioMode(fcfg_raw.get("ratio_mode", "literal")),
        strip_quotes=bool(fcfg_raw.get("strip_quotes", True)),
        reject_html=bool(fcfg_raw.get("reject_html", True)),
    )
    records = read_bisentences_tsv(cfg["input"])
    kept, report = filter_corpus(records, fcfg)
    if cfg.get("sample"):
        kept = _subsample(kept, int(cfg["sample"]), seed)
    write_bisentences_tsv(outdir / "filtered.tsv", kept)
    _write_json(outdir / "filter_report.json", report.to_dict())

    scfg_raw = cfg.get("split", {})
    ratios = tuple(float(r) for r in scfg_raw.get("ratios", (0.99, 0.005, 0.005)))
    train, dev, test = split(kept, SplitConfig(ratios=ratios, seed=seed))
    write_bisentences_tsv(outdir / "train.tsv", train)
    write_bisentences_tsv(outdir / "dev.tsv", dev)
    write_bisentences_tsv(outdir / "test.tsv", test)

    stats = stats_mod.compute_stats(kept)
    _write_json(outdir / "stats.json", stats.to_dict())

    summary = {
        "command": "pipeline",
        "filtered": len(kept),
        "train": len(train),
        "dev": len(dev),
        "test": len(test),
        "seed": seed,
    }

    acfg = cfg.get("augment")
    if acfg:
        label_cfg = acfg.get("labels", {})
        labels = {
            Relation.SUBJECT: frozenset(label_cfg.get("subject", ["nsubj"])),
            Relation.OBJECT: frozenset(label_cfg.get("object", ["obj"])),
        }
        pairs, _, _ = load_parsed_bisentences(
            acfg["src_conllu"], acfg["tgt_conllu"], lenient=bool(acfg.get("lenient", False))
        )
        eligible = [e for e in (check_eligibility(p, labels) for p in pairs) if e]
        strategy = Relation(acfg.get("strategy", "object"))
        count = math.floor(float(acfg.get("ratio", 0.5)) * len(pairs))
        augmented = generate(eligible, count, strategy, seed)
        by_id = {e.base.id: e for e in eligible}
        augmented = [
            aug_mod.AugmentedPair(
                source_text=a.source_text,
                target_text=a.target_text,
                source_tokens=a.source_tokens,
                target_tokens=a.target_tokens,
                provenance=a.provenance,
                flags=tuple(diagnose(a, by_id[a.provenance.recipient_id], by_id[a.provenance.donor_id])),
            )
            for a in augmented
        ]
        write_augmented_tsv(outdir / "augmented.tsv", augmented)
        write_provenance_jsonl(outdir / "provenance.jsonl", augmented)
        summary.update(
            {"parsed_pairs": len(pairs), "eligible": len(eligible), "augmented": len(augmented)}
        )

    _emit(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syntaug",
        description="Parallel corpus filtering and subtree-swapping augmentation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_label_args(p):
        p.add_argument("--subject-labels", default="nsubj", help="comma-separated deprels")
        p.add_argument("--object-labels", default="obj", help="comma-separated deprels")
        p.add_argument("--lenient", action="store_true",
                       help="skip invalid parses (dropping the whole pair) instead of aborting")

    p = sub.add_parser("filter", help="clean and filter a raw corpus")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--in", dest="input", help="TSV source<TAB>target[<TAB>subcorpus]")
    group.add_argument("--src", help="source text file, one sentence per line")
    p.add_argument("--tgt", help="target text file (with --src)")
    p.add_argument("--subcorpus", default="", help="subcorpus label (with --src/--tgt)")
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--report", help="write the FilterReport JSON here")
    p.add_argument("--max-words", type=int, default=32)
    p.add_argument("--abs-diff", type=int, default=7)
    p.add_argument("--ratio-limit", type=float, default=1.6)
    p.add_argument("--ratio-mode", choices=["literal", "symmetric"], default="literal")
    p.add_argument("--keep-quotes", action="store_true")
    p.add_argument("--keep-html", action="store_true")
    p.add_argument("--sample", type=int, help="seeded subsample size after filtering")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("split", help="stratified train/dev/test split")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out-dir", dest="outdir", required=True)
    p.add_argument("--ratios", default="0.99,0.005,0.005")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("stats", help="corpus statistics and length histograms")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True, help="stats JSON path")
    p.add_argument("--hist-dir", help="directory for histogram CSVs")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eligibility", help="report the swap-eligible fraction of a parsed corpus")
    p.add_argument("--src-conllu", required=True)
    p.add_argument("--tgt-conllu", required=True)
    p.add_argument("--out", dest="output", help="detailed JSON report path")
    add_label_args(p)
    p.set_defaults(func=cmd_eligibility)

    p = sub.add_parser("augment", help="generate swapped bisentences")
    p.add_argument("--src-conllu", required=True)
    p.add_argument("--tgt-conllu", required=True)
    p.add_argument("--out", dest="output", required=True, help="TSV of augmented pairs")
    p.add_argument("--provenance", help="JSONL sidecar path")
    p.add_argument("--strategy", choices=["subject", "object"], required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--count", type=int)
    group.add_argument("--ratio", type=float, help="count = ratio * parsed corpus size")
    p.add_argument("--seed", type=int, default=0)
    add_label_args(p)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("bleu", help="corpus BLEU of a hypothesis file against a reference file")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--out", dest="output", help="JSON report path")
    p.add_argument("--smooth", action="store_true", help="add-one smoothing on 2..4-grams")
    p.set_defaults(func=cmd_bleu)

    p = sub.add_parser("pipeline", help="run filter/split/stats/augment from a YAML config")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, help="override the config seed")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, CapacityError, yaml.YAMLError, KeyError) as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
