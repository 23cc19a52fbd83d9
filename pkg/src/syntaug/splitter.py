"""Deterministic stratified train/dev/test splitting."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .filtering import RawBisentence


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SplitConfig:
    ratios: tuple[float, float, float] = (0.99, 0.005, 0.005)
    seed: int = 0
    strata_key: Callable[[RawBisentence], str] = field(
        default=lambda record: record.subcorpus
    )

    def __post_init__(self):
        if any(r < 0 or r > 1 for r in self.ratios):
            raise ConfigError(f"ratios must lie in [0, 1]: {self.ratios}")
        if not math.isclose(sum(self.ratios), 1.0, abs_tol=1e-9):
            raise ConfigError(f"ratios must sum to 1: {self.ratios}")


def split(
    records: Sequence[RawBisentence], cfg: SplitConfig
) -> tuple[list[RawBisentence], list[RawBisentence], list[RawBisentence]]:
    """Partition records into (train, dev, test) per stratum.

    Dev/test get floor(ratio * n) records per stratum; the remainder goes to
    train. The shuffle is derived from (seed, stratum) so adding a stratum
    does not perturb the others.
    """
    if not records:
        raise ValueError("records must be non-empty")
    strata: dict[str, list[int]] = defaultdict(list)
    for idx, record in enumerate(records):
        strata[cfg.strata_key(record)].append(idx)

    picked: dict[int, int] = {}  # original index -> 0 train / 1 dev / 2 test
    for name in sorted(strata):
        indices = list(strata[name])
        random.Random(f"{cfg.seed}:{name}").shuffle(indices)
        n = len(indices)
        n_dev = math.floor(cfg.ratios[1] * n)
        n_test = math.floor(cfg.ratios[2] * n)
        for i in indices[:n_dev]:
            picked[i] = 1
        for i in indices[n_dev : n_dev + n_test]:
            picked[i] = 2
        for i in indices[n_dev + n_test :]:
            picked[i] = 0

    # order-stable: stratum name, then original position
    order = sorted(range(len(records)), key=lambda i: (cfg.strata_key(records[i]), i))
    outputs: tuple[list[RawBisentence], ...] = ([], [], [])
    for i in order:
        outputs[picked[i]].append(records[i])
    return outputs
