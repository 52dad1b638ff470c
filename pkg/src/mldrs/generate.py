"""Seeded random matching instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .reduction import Mode, ThreeDmInstance, all_triples

MAX_REDRAWS = 10_000


@dataclass(frozen=True)
class GenConfig:
    t: int
    count: int = 1
    density: float = 0.5
    seed: int = 0
    # std instances are redrawn until |T| > t + 1; prep accepts any T.
    mode: Mode = "std"

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if not 0 < self.density < 1:
            raise ValueError("density must lie strictly between 0 and 1")
        if self.mode == "std" and self.t**3 <= self.t + 1:
            raise ValueError(f"no instance with |T| > t + 1 exists for t = {self.t}")


def random_instances(cfg: GenConfig) -> Iterator[ThreeDmInstance]:
    """Each triple of U^3, in lexicographic order, kept with probability ``density``."""
    rng = random.Random(cfg.seed)
    universe = all_triples(cfg.t)
    for _ in range(cfg.count):
        for _ in range(MAX_REDRAWS):
            triples = [tr for tr in universe if rng.random() < cfg.density]
            if cfg.mode == "prep" or len(triples) > cfg.t + 1:
                break
        else:
            raise RuntimeError(f"no std-compatible instance after {MAX_REDRAWS} draws")
        yield ThreeDmInstance(cfg.t, tuple(triples))
