"""Seed derivation for reproducible, order-independent random streams."""

import numpy as np


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    Create a generator whose stream depends only on (seed, keys).

    Streams for different key tuples are statistically independent, so jobs
    and trials can be sampled in any order or on any thread.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=keys))


def derive_seed(seed: int, *keys: int) -> int:
    """Derive a child 64-bit seed from (seed, keys)."""
    state = np.random.SeedSequence(seed, spawn_key=keys).generate_state(1, np.uint64)
    return int(state[0])
