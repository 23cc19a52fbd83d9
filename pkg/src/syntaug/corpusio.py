"""File I/O for the corpus TSV format and aligned CoNLL-U pairs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .augment import AugmentedPair, ParsedBisentence
from .conllu import ParseReport, parse_conllu_with_report
from .filtering import RawBisentence


def read_bisentences_tsv(path: str | Path) -> list[RawBisentence]:
    """Rows are source<TAB>target[<TAB>subcorpus]."""
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) == 2:
                src, tgt, sub = cols[0], cols[1], ""
            elif len(cols) == 3:
                src, tgt, sub = cols
            else:
                raise ValueError(f"{path}:{lineno}: expected 2 or 3 columns, got {len(cols)}")
            pairs.append(RawBisentence(src, tgt, sub))
    return pairs


def read_parallel_files(
    src_path: str | Path, tgt_path: str | Path, subcorpus: str = ""
) -> list[RawBisentence]:
    src_lines = Path(src_path).read_text(encoding="utf-8").splitlines()
    tgt_lines = Path(tgt_path).read_text(encoding="utf-8").splitlines()
    if len(src_lines) != len(tgt_lines):
        raise ValueError(
            f"line count mismatch: {src_path} has {len(src_lines)}, {tgt_path} has {len(tgt_lines)}"
        )
    return [RawBisentence(s, t, subcorpus) for s, t in zip(src_lines, tgt_lines)]


def write_bisentences_tsv(path: str | Path, pairs: Iterable[RawBisentence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for pair in pairs:
            if pair.subcorpus:
                handle.write(f"{pair.source_text}\t{pair.target_text}\t{pair.subcorpus}\n")
            else:
                handle.write(f"{pair.source_text}\t{pair.target_text}\n")


def load_parsed_bisentences(
    src_conllu: str | Path,
    tgt_conllu: str | Path,
    subcorpus: str = "",
    lenient: bool = False,
) -> tuple[list[ParsedBisentence], ParseReport, ParseReport]:
    """Load two 1:1 aligned CoNLL-U files into parsed bisentences.

    In lenient mode a sentence skipped on either side drops the whole pair,
    keeping the remaining pairs aligned by block position.
    """
    with open(src_conllu, encoding="utf-8") as handle:
        src_sentences, src_report = parse_conllu_with_report(handle, lenient=lenient)
    with open(tgt_conllu, encoding="utf-8") as handle:
        tgt_sentences, tgt_report = parse_conllu_with_report(handle, lenient=lenient)
    if src_report.total_blocks != tgt_report.total_blocks:
        raise ValueError(
            f"sentence count mismatch: {src_conllu} has {src_report.total_blocks}, "
            f"{tgt_conllu} has {tgt_report.total_blocks}"
        )
    skipped = set(src_report.skipped_positions) | set(tgt_report.skipped_positions)
    src_by_pos = dict(
        zip(
            (p for p in range(1, src_report.total_blocks + 1) if p not in set(src_report.skipped_positions)),
            src_sentences,
        )
    )
    tgt_by_pos = dict(
        zip(
            (p for p in range(1, tgt_report.total_blocks + 1) if p not in set(tgt_report.skipped_positions)),
            tgt_sentences,
        )
    )
    pairs = []
    for pos in range(1, src_report.total_blocks + 1):
        if pos in skipped:
            continue
        src, tgt = src_by_pos[pos], tgt_by_pos[pos]
        pair_id = src.sent_id or tgt.sent_id or str(pos)
        pairs.append(ParsedBisentence(id=pair_id, source=src, target=tgt, subcorpus=subcorpus))
    return pairs, src_report, tgt_report


def write_augmented_tsv(path: str | Path, pairs: Iterable[AugmentedPair]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for pair in pairs:
            handle.write(f"{pair.source_text}\t{pair.target_text}\n")


def write_provenance_jsonl(path: str | Path, pairs: Iterable[AugmentedPair]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for pair in pairs:
            record = {
                "recipient_id": pair.provenance.recipient_id,
                "donor_id": pair.provenance.donor_id,
                "strategy": pair.provenance.strategy.value,
                "seed": pair.provenance.seed,
                "flags": list(pair.flags),
            }
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
