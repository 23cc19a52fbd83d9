"""Corpus accounting: per-subcorpus counts and length difference/ratio histograms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .filtering import RawBisentence, word_count

RATIO_BIN_WIDTH = 0.1
RATIO_MAX = 5.0
RATIO_OVERFLOW_BIN = int(RATIO_MAX / RATIO_BIN_WIDTH)  # everything >= 5.0


def ratio_bin(num: int, den: int) -> int:
    if den == 0:
        return RATIO_OVERFLOW_BIN
    return min(int((num / den) / RATIO_BIN_WIDTH), RATIO_OVERFLOW_BIN)


@dataclass
class SubcorpusCounts:
    bisentences: int = 0
    source_tokens: int = 0
    target_tokens: int = 0


@dataclass
class CorpusStats:
    per_subcorpus: dict[str, SubcorpusCounts] = field(default_factory=dict)
    word_diff: Counter = field(default_factory=Counter)   # WC(x) - WC(y), signed
    char_diff: Counter = field(default_factory=Counter)
    word_ratio: Counter = field(default_factory=Counter)  # bin index, width 0.1
    char_ratio: Counter = field(default_factory=Counter)

    @property
    def totals(self) -> SubcorpusCounts:
        total = SubcorpusCounts()
        for counts in self.per_subcorpus.values():
            total.bisentences += counts.bisentences
            total.source_tokens += counts.source_tokens
            total.target_tokens += counts.target_tokens
        return total

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        merged = CorpusStats()
        for name in set(self.per_subcorpus) | set(other.per_subcorpus):
            a = self.per_subcorpus.get(name, SubcorpusCounts())
            b = other.per_subcorpus.get(name, SubcorpusCounts())
            merged.per_subcorpus[name] = SubcorpusCounts(
                bisentences=a.bisentences + b.bisentences,
                source_tokens=a.source_tokens + b.source_tokens,
                target_tokens=a.target_tokens + b.target_tokens,
            )
        merged.word_diff = self.word_diff + other.word_diff
        merged.char_diff = self.char_diff + other.char_diff
        merged.word_ratio = self.word_ratio + other.word_ratio
        merged.char_ratio = self.char_ratio + other.char_ratio
        return merged

    def to_dict(self) -> dict:
        totals = self.totals
        return {
            "per_subcorpus": {
                name: {
                    "bisentences": c.bisentences,
                    "source_tokens": c.source_tokens,
                    "target_tokens": c.target_tokens,
                    "tokens": c.source_tokens + c.target_tokens,
                }
                for name, c in sorted(self.per_subcorpus.items())
            },
            "totals": {
                "bisentences": totals.bisentences,
                "source_tokens": totals.source_tokens,
                "target_tokens": totals.target_tokens,
                "tokens": totals.source_tokens + totals.target_tokens,
            },
            "histograms": {
                "word_diff": {str(k): v for k, v in sorted(self.word_diff.items())},
                "char_diff": {str(k): v for k, v in sorted(self.char_diff.items())},
                "word_ratio": {str(k): v for k, v in sorted(self.word_ratio.items())},
                "char_ratio": {str(k): v for k, v in sorted(self.char_ratio.items())},
            },
        }


def compute_stats(records: Iterable[RawBisentence]) -> CorpusStats:
    """Word counts follow the filtering rule; character counts include whitespace."""
    stats = CorpusStats()
    for record in records:
        counts = stats.per_subcorpus.setdefault(record.subcorpus, SubcorpusCounts())
        wx, wy = word_count(record.source_text), word_count(record.target_text)
        cx, cy = len(record.source_text), len(record.target_text)
        counts.bisentences += 1
        counts.source_tokens += wx
        counts.target_tokens += wy
        stats.word_diff[wx - wy] += 1
        stats.char_diff[cx - cy] += 1
        stats.word_ratio[ratio_bin(wx, wy)] += 1
        stats.char_ratio[ratio_bin(cx, cy)] += 1
    return stats


def histogram_csv_rows(counter: Counter, kind: str) -> list[tuple[str, str, int]]:
    """Rows (bin_low, bin_high, count) for external plotting."""
    rows = []
    for key in sorted(counter):
        if kind == "diff":
            rows.append((str(key), str(key), counter[key]))
        else:
            low = key * RATIO_BIN_WIDTH
            high = "inf" if key == RATIO_OVERFLOW_BIN else f"{low + RATIO_BIN_WIDTH:.1f}"
            rows.append((f"{low:.1f}", str(high), counter[key]))
    return rows
