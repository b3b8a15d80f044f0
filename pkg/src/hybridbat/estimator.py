"""scikit-learn style front end for the two optimisers.

``fit(objective, dimension)`` runs one optimisation and stores the outcome in
trailing-underscore attributes, so the optimisers work with ``get_params``,
``set_params``, ``clone`` and friends.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .bat import BatParams, run_ba
from .benchmarks import evaluate
from .de import DeParams
from .hba import HbaParams, run_hba
from .validation import check_is_fitted, check_objective, check_random_state

__all__ = ["BatAlgorithm", "HybridBatAlgorithm"]


class BatAlgorithm(BaseEstimator):
    """Original Bat Algorithm.

    Parameters
    ----------
    population_size : int, default=30
    max_generations : int, default=1000
    q_min, q_max : float, default=0.0, 2.0
        Frequency range.
    loudness, pulse_rate : float, default=0.5
        Initial loudness A0 and pulse rate r0.
    alpha : float, default=0.9
        Loudness decay applied on each accepted move.
    gamma : float, default=0.9
        Pulse-rate growth constant.
    epsilon : float, default=0.1
        Step scale of the local random walk.
    random_state : int or None
        Seed; ``None`` draws fresh entropy.

    Attributes
    ----------
    best_position_ : ndarray of shape (D,)
    best_fitness_ : float
    trace_ : ndarray of shape (max_generations + 1,)
        Best fitness after each generation, starting with the initial swarm.
    n_evaluations_ : int
    record_ : RunRecord
    """

    _algorithm = "ba"

    def __init__(
        self,
        population_size=30,
        max_generations=1000,
        q_min=0.0,
        q_max=2.0,
        loudness=0.5,
        pulse_rate=0.5,
        alpha=0.9,
        gamma=0.9,
        epsilon=0.1,
        random_state=None,
    ):
        self.population_size = population_size
        self.max_generations = max_generations
        self.q_min = q_min
        self.q_max = q_max
        self.loudness = loudness
        self.pulse_rate = pulse_rate
        self.alpha = alpha
        self.gamma = gamma
        self.epsilon = epsilon
        self.random_state = random_state

    def _bat_params(self) -> BatParams:
        return BatParams(
            population_size=self.population_size,
            max_generations=self.max_generations,
            q_min=self.q_min,
            q_max=self.q_max,
            loudness=self.loudness,
            pulse_rate=self.pulse_rate,
            alpha=self.alpha,
            gamma=self.gamma,
            epsilon=self.epsilon,
        )

    def _run(self, spec, seed):
        return run_ba(spec, self._bat_params(), seed)

    def fit(self, objective, dimension=None):
        """Minimise ``objective`` (a benchmark name or ``ObjectiveSpec``)."""
        spec = check_objective(objective, dimension)
        seed = check_random_state(self.random_state)
        record = self._run(spec, seed)
        self.objective_ = spec
        self.record_ = record
        self.best_position_ = record.final_best_vector
        self.best_fitness_ = record.final_best_fitness
        self.trace_ = record.trace
        self.n_evaluations_ = record.n_evaluations
        return self

    def score(self, X=None):
        """Negated fitness, so that higher is better.

        Without ``X`` this is the fitted best; otherwise the objective is
        evaluated at each row of ``X``.
        """
        check_is_fitted(self)
        if X is None:
            return -self.best_fitness_
        return -evaluate(self.objective_, np.asarray(X, dtype=float))


class HybridBatAlgorithm(BatAlgorithm):
    """Bat Algorithm whose local search is a DE/rand/1/bin trial.

    Takes every :class:`BatAlgorithm` parameter plus ``f`` (scale factor,
    default 0.5), ``cr`` (crossover rate, default 0.9) and ``strategy``.
    """

    _algorithm = "hba"

    def __init__(
        self,
        population_size=30,
        max_generations=1000,
        q_min=0.0,
        q_max=2.0,
        loudness=0.5,
        pulse_rate=0.5,
        alpha=0.9,
        gamma=0.9,
        epsilon=0.1,
        f=0.5,
        cr=0.9,
        strategy="DE/rand/1/bin",
        random_state=None,
    ):
        super().__init__(
            population_size=population_size,
            max_generations=max_generations,
            q_min=q_min,
            q_max=q_max,
            loudness=loudness,
            pulse_rate=pulse_rate,
            alpha=alpha,
            gamma=gamma,
            epsilon=epsilon,
            random_state=random_state,
        )
        self.f = f
        self.cr = cr
        self.strategy = strategy

    def _run(self, spec, seed):
        params = HbaParams(bat=self._bat_params(), de=DeParams(self.f, self.cr), strategy=self.strategy)
        return run_hba(spec, params, seed)
