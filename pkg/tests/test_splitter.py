import math
import random

import pytest

from syntaug.filtering import RawBisentence
from syntaug.splitter import ConfigError, SplitConfig, split


def make_corpus(sizes: dict[str, int]) -> list[RawBisentence]:
    records = []
    for name, n in sizes.items():
        for i in range(n):
            records.append(RawBisentence(f"{name} src {i}", f"{name} tgt {i}", name))
    rng = random.Random(1)
    rng.shuffle(records)
    return records


def test_exact_arithmetic_single_stratum():
    records = make_corpus({"lit": 1000})
    train, dev, test = split(records, SplitConfig(seed=3))
    assert (len(train), len(dev), len(test)) == (990, 5, 5)


def test_per_stratum_arithmetic():
    records = make_corpus({"a": 1000, "b": 1000})
    train, dev, test = split(records, SplitConfig(seed=3))
    for part, expected in ((train, 990), (dev, 5), (test, 5)):
        for name in ("a", "b"):
            assert sum(1 for r in part if r.subcorpus == name) == expected


def test_partition_property():
    records = make_corpus({"a": 313, "b": 97})
    train, dev, test = split(records, SplitConfig(seed=8))
    combined = sorted(r.source_text for r in train + dev + test)
    assert combined == sorted(r.source_text for r in records)
    assert len(train) + len(dev) + len(test) == len(records)


def test_determinism_and_seed_sensitivity():
    records = make_corpus({"a": 500, "b": 200})
    cfg = SplitConfig(seed=42)
    first = split(records, cfg)
    second = split(records, cfg)
    assert first == second
    different = split(records, SplitConfig(seed=43))
    assert first != different


def test_stratum_independence_of_other_strata():
    base = make_corpus({"a": 400})
    extended = base + make_corpus({"b": 300})
    cfg = SplitConfig(seed=5)
    train_a, dev_a, test_a = split(base, cfg)
    train_ab, dev_ab, test_ab = split(extended, cfg)
    only_a = lambda part: [r for r in part if r.subcorpus == "a"]
    assert only_a(train_ab) == list(train_a)
    assert only_a(dev_ab) == list(dev_a)
    assert only_a(test_ab) == list(test_a)


def test_stratification_within_one_record():
    rng = random.Random(6)
    sizes = {f"s{i}": rng.randint(50, 3000) for i in range(6)}
    records = make_corpus(sizes)
    cfg = SplitConfig(seed=9)
    train, dev, test = split(records, cfg)
    for name, n in sizes.items():
        for part, ratio in ((dev, 0.005), (test, 0.005)):
            got = sum(1 for r in part if r.subcorpus == name)
            assert abs(got - ratio * n) < 1 or got == math.floor(ratio * n)


def test_invalid_ratios():
    with pytest.raises(ConfigError):
        SplitConfig(ratios=(0.5, 0.5, 0.5))
    with pytest.raises(ConfigError):
        SplitConfig(ratios=(1.2, -0.1, -0.1))
    with pytest.raises(ValueError):
        split([], SplitConfig())
