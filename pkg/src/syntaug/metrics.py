"""Corpus-level BLEU-4 with clipped n-gram precisions and brevity penalty."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class BleuReport:
    score: float  # 0..100
    precisions: tuple[Fraction, Fraction, Fraction, Fraction]
    brevity_penalty: float
    hyp_length: int
    ref_length: int

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "precisions": [float(p) for p in self.precisions],
            "brevity_penalty": self.brevity_penalty,
            "hyp_length": self.hyp_length,
            "ref_length": self.ref_length,
        }


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(
    hypotheses: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
    smooth: bool = False,
) -> BleuReport:
    """BLEU-4 with uniform weights and a single reference per hypothesis.

    Unsmoothed by default (score 0 if any order has zero matches); with
    smooth=True, add-one smoothing is applied to orders 2..4.
    """
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference count mismatch: {len(hypotheses)} vs {len(references)}"
        )
    if not hypotheses:
        raise ValueError("need at least one hypothesis")

    matched = [0] * 4
    total = [0] * 4
    hyp_length = 0
    ref_length = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_length += len(hyp)
        ref_length += len(ref)
        for n in range(1, 5):
            hyp_counts = ngram_counts(hyp, n)
            ref_counts = ngram_counts(ref, n)
            total[n - 1] += sum(hyp_counts.values())
            matched[n - 1] += sum(
                min(count, ref_counts[gram]) for gram, count in hyp_counts.items()
            )

    precisions = []
    for n in range(1, 5):
        num, den = matched[n - 1], total[n - 1]
        if smooth and n > 1:
            num, den = num + 1, den + 1
        # no n-grams of this order at all: vacuously perfect, so that an
        # identity corpus of short sentences still scores 100
        precisions.append(Fraction(num, den) if den else Fraction(1))
    precisions = tuple(precisions)

    if hyp_length == 0:
        zero = (Fraction(0),) * 4
        return BleuReport(0.0, zero, 0.0, 0, ref_length)
    bp = 1.0 if hyp_length >= ref_length else math.exp(1 - ref_length / hyp_length)
    if any(p == 0 for p in precisions):
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / 4)
    return BleuReport(score, precisions, bp, hyp_length, ref_length)
