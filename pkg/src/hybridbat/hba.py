"""Hybrid Bat Algorithm: the bat loop with a DE/rand/1/bin local search.

Everything except the local-search branch is shared with :mod:`hybridbat.bat`.
When a bat's pulse-rate gate fires, its proposal is the DE trial built from
its own position and donors drawn from the current swarm, instead of a random
walk around the best.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bat import BatParams, RunRecord, SwarmState, _run
from .benchmarks import ObjectiveSpec
from .de import DeParams, Strategy, crossover_bin, mutate, parse_strategy
from .rng import RngState

__all__ = ["HbaParams", "de_local_modify", "run_hba"]


@dataclass(frozen=True)
class HbaParams:
    bat: BatParams = field(default_factory=BatParams)
    de: DeParams = field(default_factory=DeParams)
    strategy: Strategy = field(default_factory=lambda: parse_strategy("DE/rand/1/bin"))

    def __post_init__(self):
        if isinstance(self.strategy, str):
            object.__setattr__(self, "strategy", parse_strategy(self.strategy))
        if not self.strategy.is_supported:
            raise ValueError(f"strategy {self.strategy} is not implemented; only DE/rand/1/bin runs")
        if self.bat.population_size < 4:
            raise ValueError("the hybrid needs population_size >= 4 for DE donors")


def de_local_modify(state: SwarmState, idx, params: HbaParams, rng: RngState, spec: ObjectiveSpec):
    """DE/rand/1/bin trial for the bats in ``idx``, clamped to the box.

    The swarm positions double as the DE population.
    """
    idx = np.asarray(idx)
    mutant = mutate(state.positions, idx, params.de.f, rng)
    trial = crossover_bin(state.positions[idx], mutant, params.de.cr, rng)
    return np.clip(trial, spec.lower_bound, spec.upper_bound)


def run_hba(spec: ObjectiveSpec, params: HbaParams, seed) -> RunRecord:
    """One complete hybrid run of ``params.bat.max_generations`` generations."""

    def search(state, idx, rng):
        return de_local_modify(state, idx, params, rng, spec)

    return _run(spec, params.bat, seed, "hba", search)
