"""Cleaning and length-based filtering of raw aligned bisentences."""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable


QUOTE_CHARS = "\"“”„«»"
_STRIP_CHARS = QUOTE_CHARS + string.whitespace

_HTML_RE = re.compile(r"</?[a-zA-Z][^<>]*>|&[a-zA-Z]+;|&#[0-9]+;")


class RatioMode(Enum):
    LITERAL = "literal"      # WC(x)/WC(y), as printed
    SYMMETRIC = "symmetric"  # max/min, order-independent


@dataclass(frozen=True)
class RawBisentence:
    source_text: str
    target_text: str
    subcorpus: str = ""


@dataclass(frozen=True)
class FilterConfig:
    max_words: int = 32
    abs_diff_limit: int = 7
    ratio_limit: float = 1.6
    ratio_mode: RatioMode = RatioMode.LITERAL
    strip_quotes: bool = True
    reject_html: bool = True

    def __post_init__(self):
        if self.max_words < 1:
            raise ValueError("max_words must be >= 1")
        if self.abs_diff_limit < 0:
            raise ValueError("abs_diff_limit must be >= 0")
        if self.ratio_limit <= 0:
            raise ValueError("ratio_limit must be > 0")


@dataclass
class FilterReport:
    total: int = 0
    kept: int = 0
    rejected: dict[str, int] = field(
        default_factory=lambda: {"empty": 0, "html": 0, "too_long": 0, "length_rule": 0}
    )

    def merge(self, other: "FilterReport") -> "FilterReport":
        merged = FilterReport(total=self.total + other.total, kept=self.kept + other.kept)
        for reason in merged.rejected:
            merged.rejected[reason] = self.rejected[reason] + other.rejected[reason]
        return merged

    def to_dict(self) -> dict:
        return {"total": self.total, "kept": self.kept, "rejected": dict(self.rejected)}


def word_count(text: str) -> int:
    """Number of maximal non-whitespace runs."""
    return len(text.split())


def clean(pair: RawBisentence, cfg: FilterConfig) -> RawBisentence:
    """Strip leading/trailing quotation marks and surrounding whitespace."""
    if not cfg.strip_quotes:
        return replace(
            pair,
            source_text=pair.source_text.strip(),
            target_text=pair.target_text.strip(),
        )
    return replace(
        pair,
        source_text=pair.source_text.strip(_STRIP_CHARS),
        target_text=pair.target_text.strip(_STRIP_CHARS),
    )


def keep(pair: RawBisentence, cfg: FilterConfig) -> tuple[bool, str | None]:
    """Decide whether a cleaned pair survives filtering.

    Returns (True, None) or (False, reason) with reason one of
    empty / html / too_long / length_rule.
    """
    src, tgt = pair.source_text, pair.target_text
    if not src.strip() or not tgt.strip():
        return False, "empty"
    if cfg.reject_html and (_HTML_RE.search(src) or _HTML_RE.search(tgt)):
        return False, "html"
    wx, wy = word_count(src), word_count(tgt)
    if wx > cfg.max_words or wy > cfg.max_words:
        return False, "too_long"
    if cfg.ratio_mode is RatioMode.LITERAL:
        ratio = wx / wy
    else:
        ratio = max(wx, wy) / min(wx, wy)
    if abs(wx - wy) < cfg.abs_diff_limit or ratio < cfg.ratio_limit:
        return True, None
    return False, "length_rule"


def filter_corpus(
    pairs: Iterable[RawBisentence], cfg: FilterConfig
) -> tuple[list[RawBisentence], FilterReport]:
    report = FilterReport()
    kept_pairs: list[RawBisentence] = []
    for pair in pairs:
        report.total += 1
        cleaned = clean(pair, cfg)
        ok, reason = keep(cleaned, cfg)
        if ok:
            report.kept += 1
            kept_pairs.append(cleaned)
        else:
            report.rejected[reason] += 1
    return kept_pairs, report
