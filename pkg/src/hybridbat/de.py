"""Differential-evolution operators: rand/1 mutation, binomial crossover, greedy selection.

Operators act on a single target or on a batch of targets at once. Batched
calls consume draws in row-major order, so a batch of ``k`` targets is
equivalent to a fixed, documented sequence of scalar draws:

* :func:`draw_donors` -- three raw indices per target (ranges ``NP-1``,
  ``NP-2``, ``NP-3``), target by target.
* :func:`crossover_bin` -- the ``k * D`` gate variates first, then the ``k``
  forced indices.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .rng import RngState

__all__ = [
    "DeParams",
    "Strategy",
    "parse_strategy",
    "draw_donors",
    "mutate",
    "crossover_bin",
    "select",
]


@dataclass(frozen=True)
class DeParams:
    f: float = 0.5
    cr: float = 0.9

    def __post_init__(self):
        if not (math.isfinite(self.f) and 0.1 <= self.f <= 1.0):
            raise ValueError(f"F must lie in [0.1, 1.0], got {self.f}")
        if not (math.isfinite(self.cr) and 0.0 <= self.cr <= 1.0):
            raise ValueError(f"CR must lie in [0.0, 1.0], got {self.cr}")


class Base(str, Enum):
    RAND = "rand"
    BEST = "best"


class Crossover(str, Enum):
    BIN = "bin"
    EXP = "exp"


@dataclass(frozen=True)
class Strategy:
    base: Base
    num_differences: int
    crossover: Crossover

    def __str__(self) -> str:
        return f"DE/{self.base.value}/{self.num_differences}/{self.crossover.value}"

    @property
    def is_supported(self) -> bool:
        """Only DE/rand/1/bin can be executed."""
        return self.base is Base.RAND and self.num_differences == 1 and self.crossover is Crossover.BIN


_STRATEGY_RE = re.compile(r"^DE/([A-Za-z\-]+)/(\d+)/([A-Za-z]+)$", re.IGNORECASE)


def parse_strategy(s: str) -> Strategy:
    """Parse ``DE/<base>/<k>/<crossover>`` notation, e.g. ``DE/rand/1/bin``."""
    m = _STRATEGY_RE.match(str(s).strip())
    if m is None:
        raise ValueError(f"malformed strategy {s!r}; expected DE/<base>/<k>/<crossover>")
    base, k, xover = m.groups()
    try:
        base_t = Base(base.lower())
    except ValueError:
        raise ValueError(f"unsupported base vector {base!r} in {s!r}") from None
    try:
        xover_t = Crossover(xover.lower())
    except ValueError:
        raise ValueError(f"unsupported crossover {xover!r} in {s!r}") from None
    if int(k) < 1:
        raise ValueError(f"number of differences must be >= 1 in {s!r}")
    return Strategy(base_t, int(k), xover_t)


def draw_donors(pop_size: int, targets, rng: RngState) -> np.ndarray:
    """Three mutually distinct donor indices per target, all different from the target.

    Returns an int array of shape ``(len(targets), 3)`` holding ``r0, r1, r2``.
    Each index is drawn uniformly from the indices still allowed, so exactly
    three draws are made per target.
    """
    if pop_size < 4:
        raise ValueError(f"DE/rand/1 needs a population of at least 4, got {pop_size}")
    targets = np.atleast_1d(np.asarray(targets, dtype=np.int64))
    raw = np.asarray(rng.index_below(np.array([pop_size - 1, pop_size - 2, pop_size - 3]), size=(targets.size, 3)))
    donors = np.empty_like(raw)
    taken = targets[:, None]
    for col in range(3):
        # map the raw draw onto the pool with the taken indices removed
        pick = raw[:, col].copy()
        for e in np.sort(taken, axis=1).T:
            pick += pick >= e
        donors[:, col] = pick
        taken = np.concatenate([taken, pick[:, None]], axis=1)
    return donors


def mutate(population, targets, f: float, rng: RngState):
    """``w_r0 + F * (w_r1 - w_r2)`` for each target index.

    ``targets`` may be an int (returns a ``(D,)`` vector) or a sequence of
    ints (returns ``(k, D)``). The mutant is not clamped.
    """
    population = np.asarray(population, dtype=float)
    scalar = np.ndim(targets) == 0
    donors = draw_donors(population.shape[0], targets, rng)
    w0, w1, w2 = (population[donors[:, c]] for c in range(3))
    mutant = w0 + f * (w1 - w2)
    return mutant[0] if scalar else mutant


def crossover_bin(target, mutant, cr: float, rng: RngState):
    """Binomial crossover; at least one coordinate always comes from the mutant."""
    target = np.asarray(target, dtype=float)
    mutant = np.asarray(mutant, dtype=float)
    if target.shape != mutant.shape or target.ndim == 0:
        raise ValueError(f"target and mutant shapes differ: {target.shape} vs {mutant.shape}")
    d = target.shape[-1]
    lead = target.shape[:-1]
    gate = np.asarray(rng.uniform01(lead + (d,))) <= cr
    j_rand = np.asarray(rng.index_below(d, size=lead or None))
    gate |= np.arange(d) == j_rand[..., None]
    return np.where(gate, mutant, target)


def select(target, target_fitness, trial, trial_fitness):
    """Keep the trial when it is no worse than the target.

    Returns ``(vector, fitness)``. Batched inputs select row by row.
    """
    take = np.asarray(trial_fitness) <= np.asarray(target_fitness)
    vec = np.where(np.asarray(take)[..., None], trial, target)
    fit = np.where(take, trial_fitness, target_fitness)
    if np.ndim(fit) == 0:
        return vec, float(fit)
    return vec, fit
