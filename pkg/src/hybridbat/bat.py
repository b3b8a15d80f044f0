"""Original Bat Algorithm, split into its individual update steps.

The swarm is held as arrays (one row per bat) and each generation updates all
bats synchronously: every bat moves relative to the best position known at
the start of the generation, and the best is re-ranked once at the end.

Draw schedule of one generation (needed to replay runs from a tape):

1. ``n`` frequency draws (:func:`move_candidate`)
2. ``n`` local-search gate draws
3. the local-search draws for the ``k`` gated bats, in bat order
4. ``n`` acceptance draws
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .benchmarks import ObjectiveSpec, evaluate
from .rng import RngState, as_rng

__all__ = [
    "BatParams",
    "Candidate",
    "SwarmState",
    "RunRecord",
    "init_swarm",
    "move_candidate",
    "local_walk",
    "anneal",
    "pulse_rate_at",
    "step",
    "run_ba",
]


@dataclass(frozen=True)
class BatParams:
    """Tunables of the bat swarm.

    ``loudness`` is the initial loudness A0, ``pulse_rate`` the limit r0 of
    the pulse-rate schedule.
    ``epsilon`` scales the local random walk.
    """

    population_size: int = 30
    max_generations: int = 1000
    q_min: float = 0.0
    q_max: float = 2.0
    loudness: float = 0.5
    pulse_rate: float = 0.5
    alpha: float = 0.9
    gamma: float = 0.9
    epsilon: float = 0.1

    def __post_init__(self):
        for name in ("q_min", "q_max", "loudness", "pulse_rate", "alpha", "gamma", "epsilon"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if self.max_generations < 0:
            raise ValueError("max_generations must be >= 0")
        if self.q_min > self.q_max:
            raise ValueError("q_min must not exceed q_max")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.epsilon < 0.0 or self.loudness < 0.0:
            raise ValueError("epsilon and loudness must be non-negative")
        if not 0.0 <= self.pulse_rate <= 1.0:
            raise ValueError("pulse_rate must lie in [0, 1]")


@dataclass
class Candidate:
    """One bat, as a standalone record."""

    position: np.ndarray
    velocity: np.ndarray
    frequency: float
    loudness: float
    pulse_rate: float
    fitness: float


@dataclass
class SwarmState:
    positions: np.ndarray
    velocities: np.ndarray
    frequencies: np.ndarray
    loudness: np.ndarray
    pulse_rates: np.ndarray
    fitness: np.ndarray
    best: np.ndarray
    best_fitness: float
    t: int = 0
    n_evaluations: int = 0

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    def candidate(self, i: int) -> Candidate:
        return Candidate(
            self.positions[i].copy(),
            self.velocities[i].copy(),
            float(self.frequencies[i]),
            float(self.loudness[i]),
            float(self.pulse_rates[i]),
            float(self.fitness[i]),
        )

    def copy(self) -> "SwarmState":
        return replace(
            self,
            **{
                name: getattr(self, name).copy()
                for name in ("positions", "velocities", "frequencies", "loudness", "pulse_rates", "fitness", "best")
            },
        )


@dataclass
class RunRecord:
    algorithm: str
    function: str
    dimension: int
    seed: int
    trace: np.ndarray
    final_best_vector: np.ndarray
    final_best_fitness: float
    run_index: int = 0
    n_evaluations: int = 0
    params: dict = field(default_factory=dict)


def _clamp(x, spec: ObjectiveSpec):
    return np.clip(x, spec.lower_bound, spec.upper_bound)


def init_swarm(spec: ObjectiveSpec, params: BatParams, rng: RngState) -> SwarmState:
    """Random positions in the box, zero velocities and loudness A0.

    Pulse rates start at the annealing schedule's value for t = 0, which is 0;
    r0 is the ceiling they rise towards.
    """
    n, d = params.population_size, spec.dimension
    positions = np.asarray(rng.uniform_range(spec.lower_bound, spec.upper_bound, size=(n, d)))
    fitness = evaluate(spec, positions)
    i_best = int(np.argmin(fitness))
    return SwarmState(
        positions=positions,
        velocities=np.zeros((n, d)),
        frequencies=np.zeros(n),
        loudness=np.full(n, float(params.loudness)),
        pulse_rates=np.full(n, float(pulse_rate_at(0, params))),
        fitness=fitness,
        best=positions[i_best].copy(),
        best_fitness=float(fitness[i_best]),
        t=0,
        n_evaluations=n,
    )


def move_candidate(positions, velocities, best, params: BatParams, rng: RngState, spec: Optional[ObjectiveSpec] = None):
    """Frequency-tuned flight towards/away from ``best``.

    Works on one bat (``(D,)`` arrays) or a batch (``(k, D)``), drawing one
    frequency per bat. Returns ``(frequency, new_velocity, new_position)``;
    positions are clamped to the box of ``spec`` when given, velocities are not.
    """
    positions = np.asarray(positions, dtype=float)
    u = rng.uniform01(positions.shape[:-1] or None)
    freq = params.q_min + (params.q_max - params.q_min) * np.asarray(u)
    new_v = velocities + (positions - best) * freq[..., None]
    new_x = positions + new_v
    if spec is not None:
        new_x = _clamp(new_x, spec)
    return freq, new_v, new_x


def local_walk(best, loudness, params: BatParams, rng: RngState, spec: Optional[ObjectiveSpec] = None):
    """Random walk around ``best`` scaled by ``epsilon * loudness``.

    ``loudness`` is a scalar for a single walk or a ``(k,)`` array for ``k``
    walks, giving a ``(k, D)`` result. Each coordinate draws its own variate.
    """
    best = np.asarray(best, dtype=float)
    loudness = np.asarray(loudness, dtype=float)
    u = rng.uniform01(loudness.shape + best.shape)
    out = best + params.epsilon * loudness[..., None] * (2.0 * u - 1.0)
    if spec is not None:
        out = _clamp(out, spec)
    return out


def pulse_rate_at(t: int, params: BatParams):
    return params.pulse_rate * (1.0 - np.exp(-params.gamma * t))


def anneal(c: Candidate, t: int, params: BatParams) -> Candidate:
    """Loudness decays by ``alpha``; pulse rate rises towards r0 with ``t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return replace(c, loudness=params.alpha * c.loudness, pulse_rate=float(pulse_rate_at(t, params)))


LocalSearch = Callable[[SwarmState, np.ndarray, RngState], np.ndarray]


def _walk_search(spec: ObjectiveSpec, params: BatParams) -> LocalSearch:
    def search(state, idx, rng):
        return local_walk(state.best, state.loudness[idx], params, rng, spec)

    return search


def step(
    state: SwarmState,
    spec: ObjectiveSpec,
    params: BatParams,
    rng: RngState,
    local_search: Optional[LocalSearch] = None,
) -> SwarmState:
    """Advance the swarm by one generation, in place. Returns ``state``.

    ``local_search(state, idx, rng)`` produces proposals for the bats in
    ``idx`` whose gate fired; it defaults to the random walk around the best.
    """
    if local_search is None:
        local_search = _walk_search(spec, params)
    n = state.size

    freq, state.velocities, proposals = move_candidate(
        state.positions, state.velocities, state.best, params, rng, spec
    )
    state.frequencies = freq

    gate = np.asarray(rng.uniform01(n)) > state.pulse_rates
    idx = np.flatnonzero(gate)
    if idx.size:
        proposals[idx] = local_search(state, idx, rng)

    new_fitness = evaluate(spec, proposals)
    state.n_evaluations += n
    accept = (np.asarray(rng.uniform01(n)) < state.loudness) & (new_fitness < state.fitness)

    state.t += 1
    if accept.any():
        state.positions[accept] = proposals[accept]
        state.fitness[accept] = new_fitness[accept]
        state.loudness[accept] *= params.alpha
        state.pulse_rates[accept] = pulse_rate_at(state.t, params)

    i_best = int(np.argmin(state.fitness))
    if state.fitness[i_best] < state.best_fitness:
        state.best = state.positions[i_best].copy()
        state.best_fitness = float(state.fitness[i_best])
    return state


def _run(spec, params: BatParams, seed, algorithm, local_search=None) -> RunRecord:
    rng = as_rng(seed)
    state = init_swarm(spec, params, rng)
    trace = np.empty(params.max_generations + 1)
    trace[0] = state.best_fitness
    for g in range(1, params.max_generations + 1):
        step(state, spec, params, rng, local_search)
        trace[g] = state.best_fitness
    return RunRecord(
        algorithm=algorithm,
        function=spec.name,
        dimension=spec.dimension,
        seed=rng.seed,
        trace=trace,
        final_best_vector=state.best.copy(),
        final_best_fitness=state.best_fitness,
        n_evaluations=state.n_evaluations,
    )


def run_ba(spec: ObjectiveSpec, params: BatParams, seed) -> RunRecord:
    """One complete BA run of ``params.max_generations`` generations."""
    return _run(spec, params, seed, "ba")
