"""Seeded, splittable random streams.

Every stream is a Philox (counter-based) generator keyed by a root seed and
a tuple of integer labels, so replication ``i`` of a run draws the same
numbers whether it runs first, last, or in another process.
"""
from __future__ import annotations

import os

import numpy as np

SEED_ENV = "TRIMFIT_SEED"
DEFAULT_SEED = 0


def stream(seed: int, *labels: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, labels)])))


def derive_seed(seed: int, *labels: int) -> int:
    """A 64-bit child seed for handing to another seeded routine."""
    ss = np.random.SeedSequence([int(seed), *map(int, labels)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)
