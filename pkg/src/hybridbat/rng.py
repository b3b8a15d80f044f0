"""Seedable random source shared by every stochastic step.

Each optimisation run owns one :class:`RngState`. Runs started from the same
seed consume an identical stream, independent of machine or wall clock.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["RngState", "derive_seed", "as_rng"]

_SEED_MASK = (1 << 64) - 1


class RngState:
    """Thin wrapper around a PCG64 bit generator.

    All draws accept an optional ``size``; a batched draw yields the same
    values, in row-major order, as the equivalent sequence of scalar draws.
    """

    def __init__(self, seed: int) -> None:
        seed = int(seed)
        if not 0 <= seed <= _SEED_MASK:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed})"

    def uniform01(self, size=None):
        """Uniform variate(s) on [0, 1)."""
        return self._gen.random(size)

    def uniform_range(self, lo: float, hi: float, size=None):
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("bounds must be finite")
        if lo >= hi:
            raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
        u = self.uniform01(size)
        out = lo + (hi - lo) * u
        # lo + (hi - lo) * u can round up to hi for u close to 1
        return np.minimum(out, np.nextafter(hi, lo)) if size is not None else min(out, math.nextafter(hi, lo))

    def index_below(self, n, size=None):
        """Unbiased integer(s) in ``[0, n)``; ``n`` may be an array broadcast against ``size``."""
        n_arr = np.asarray(n)
        if np.any(n_arr < 1):
            raise ValueError("index_below needs n >= 1")
        return self._gen.integers(0, n_arr, size=size)


def derive_seed(master_seed: int, *keys: int) -> int:
    """Split ``master_seed`` into an independent 64-bit child seed.

    The child depends only on the master seed and the key tuple, never on the
    order in which children are requested.
    """
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def as_rng(seed) -> RngState:
    if isinstance(seed, RngState):
        return seed
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
    return RngState(seed)
