import math
import random
from fractions import Fraction

import pytest

from syntaug.metrics import BleuReport, corpus_bleu


def oracle_clipped_matches(hyps, refs, n):
    """Brute-force clipped n-gram matching: every hypothesis n-gram occurrence
    consumes at most one remaining occurrence of the same n-gram in the reference."""
    matched = 0
    total = 0
    for hyp, ref in zip(hyps, refs):
        ref_grams = [tuple(ref[i : i + n]) for i in range(len(ref) - n + 1)]
        for i in range(len(hyp) - n + 1):
            total += 1
            gram = tuple(hyp[i : i + n])
            if gram in ref_grams:
                ref_grams.remove(gram)
                matched += 1
    return matched, total


def oracle_bleu(hyps, refs):
    precisions = []
    for n in range(1, 5):
        matched, total = oracle_clipped_matches(hyps, refs, n)
        # zero-denominator orders are vacuously perfect, same as the scorer
        precisions.append(Fraction(matched, total) if total else Fraction(1))
    hyp_len = sum(len(h) for h in hyps)
    ref_len = sum(len(r) for r in refs)
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len) if hyp_len else 0.0
    if any(p == 0 for p in precisions):
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / 4)
    return score, tuple(precisions), bp, hyp_len, ref_len


def test_identity_scores_100():
    refs = [["the", "cat", "sat"], ["a", "dog", "ran", "home"], ["hello", "there", "friend", "of", "mine"]]
    report = corpus_bleu(refs, refs)
    assert report.score == 100.0
    assert all(p == 1 for p in report.precisions)
    assert report.brevity_penalty == 1.0


def test_clipping_example():
    report = corpus_bleu([["the", "the", "the"]], [["the", "cat"]])
    assert report.precisions[0] == Fraction(1, 3)
    assert report.score == 0.0  # no bigram match, unsmoothed


def test_empty_hypothesis_scores_zero():
    report = corpus_bleu([[]], [["the", "cat"]])
    assert report.score == 0.0


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        corpus_bleu([["a"]], [["a"], ["b"]])
    with pytest.raises(ValueError):
        corpus_bleu([], [])


def test_brevity_penalty_direction():
    # hypothesis shorter than reference
    short = corpus_bleu([["the", "cat"]], [["the", "cat", "sat", "down"]])
    assert short.brevity_penalty == pytest.approx(math.exp(1 - 4 / 2))
    # hypothesis longer: BP is 1
    long = corpus_bleu([["the", "cat", "sat", "down", "now"]], [["the", "cat"]])
    assert long.brevity_penalty == 1.0


def test_agrees_with_oracle_on_random_corpora():
    rng = random.Random(2024)
    vocab = ["a", "b", "c", "d", "e"]
    for _ in range(25):
        n_sent = rng.randint(1, 10)
        hyps = [[rng.choice(vocab) for _ in range(rng.randint(1, 15))] for _ in range(n_sent)]
        refs = [[rng.choice(vocab) for _ in range(rng.randint(1, 15))] for _ in range(n_sent)]
        report = corpus_bleu(hyps, refs)
        score, precisions, bp, hyp_len, ref_len = oracle_bleu(hyps, refs)
        assert report.precisions == precisions  # exact rational equality
        assert report.hyp_length == hyp_len and report.ref_length == ref_len
        assert report.brevity_penalty == pytest.approx(bp)
        assert report.score == pytest.approx(score)


def test_permutation_invariance():
    rng = random.Random(8)
    vocab = ["x", "y", "z"]
    pairs = [
        ([rng.choice(vocab) for _ in range(rng.randint(1, 8))],
         [rng.choice(vocab) for _ in range(rng.randint(1, 8))])
        for _ in range(12)
    ]
    base = corpus_bleu([h for h, _ in pairs], [r for _, r in pairs])
    rng.shuffle(pairs)
    shuffled = corpus_bleu([h for h, _ in pairs], [r for _, r in pairs])
    assert base == shuffled


def test_score_100_only_for_exact_match():
    report = corpus_bleu([["the", "cat"]], [["the", "dog"]])
    assert report.score < 100.0
    report = corpus_bleu([["the", "cat", "sat", "on", "mats"]], [["the", "cat", "sat", "on", "mat"]])
    assert report.score < 100.0


def test_smoothing_gives_nonzero_on_partial_match():
    unsmoothed = corpus_bleu([["the", "cat"]], [["the", "dog"]])
    smoothed = corpus_bleu([["the", "cat"]], [["the", "dog"]], smooth=True)
    assert unsmoothed.score == 0.0
    assert smoothed.score > 0.0
