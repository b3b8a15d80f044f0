"""The five-function test suite (Griewank, Rosenbrock, Sphere, Rastrigin, Ackley).

Every function accepts a single point of shape ``(D,)`` or a batch of points
of shape ``(..., D)`` and reduces over the last axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = ["FunctionId", "ObjectiveSpec", "evaluate", "spec_by_name", "FUNCTION_IDS"]


class FunctionId(str, Enum):
    GRIEWANK = "griewank"
    ROSENBROCK = "rosenbrock"
    SPHERE = "sphere"
    RASTRIGIN = "rastrigin"
    ACKLEY = "ackley"

    @property
    def short_name(self) -> str:
        return _SHORT_NAMES[self]


_SHORT_NAMES = {
    FunctionId.GRIEWANK: "f1",
    FunctionId.ROSENBROCK: "f2",
    FunctionId.SPHERE: "f3",
    FunctionId.RASTRIGIN: "f4",
    FunctionId.ACKLEY: "f5",
}
_BY_SHORT = {v: k for k, v in _SHORT_NAMES.items()}

# (half-width of the symmetric box, minimum dimension)
_DOMAINS = {
    FunctionId.GRIEWANK: (600.0, 1),
    FunctionId.ROSENBROCK: (15.0, 2),
    FunctionId.SPHERE: (15.0, 1),
    FunctionId.RASTRIGIN: (15.0, 1),
    FunctionId.ACKLEY: (32.0, 2),
}

FUNCTION_IDS = tuple(_SHORT_NAMES.values())


@dataclass(frozen=True)
class ObjectiveSpec:
    function_id: FunctionId
    dimension: int
    lower_bound: float
    upper_bound: float

    def __post_init__(self):
        fid = FunctionId(self.function_id)
        object.__setattr__(self, "function_id", fid)
        min_dim = _DOMAINS[fid][1]
        if int(self.dimension) != self.dimension or self.dimension < min_dim:
            raise ValueError(f"{fid.value} needs an integer dimension >= {min_dim}, got {self.dimension}")
        if not self.lower_bound < self.upper_bound:
            raise ValueError("lower_bound must be below upper_bound")

    @property
    def name(self) -> str:
        return self.function_id.short_name

    @property
    def optimum(self) -> np.ndarray:
        """Location of the global minimum."""
        if self.function_id is FunctionId.ROSENBROCK:
            return np.ones(self.dimension)
        return np.zeros(self.dimension)


def _griewank(x):
    i = np.arange(1, x.shape[-1] + 1)
    prod = np.prod(np.cos(x / np.sqrt(i)), axis=-1)
    return np.sum(x * x, axis=-1) / 4000.0 + (1.0 - prod)


def _rosenbrock(x):
    head, tail = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2, axis=-1)


def _sphere(x):
    return np.sum(x * x, axis=-1)


def _rastrigin(x):
    return np.sum(x * x + 10.0 * (1.0 - np.cos(2.0 * np.pi * x)), axis=-1)


def _ackley(x):
    # sum of (D - 1) two-dimensional Ackley terms over consecutive pairs
    a, b = x[..., :-1], x[..., 1:]
    radial = 20.0 * (1.0 - np.exp(-0.2 * np.sqrt(0.5 * (a * a + b * b))))
    wave = np.e - np.exp(0.5 * (np.cos(2.0 * np.pi * a) + np.cos(2.0 * np.pi * b)))
    return np.sum(radial + wave, axis=-1)


_FUNCTIONS = {
    FunctionId.GRIEWANK: _griewank,
    FunctionId.ROSENBROCK: _rosenbrock,
    FunctionId.SPHERE: _sphere,
    FunctionId.RASTRIGIN: _rastrigin,
    FunctionId.ACKLEY: _ackley,
}


def evaluate(spec: ObjectiveSpec, x):
    """Objective value at ``x``; a float for one point, an array for a batch.

    Bounds are not enforced here. Raises ``ValueError`` on a dimension
    mismatch or non-finite coordinates.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != spec.dimension:
        raise ValueError(f"expected last axis of length {spec.dimension}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("objective input contains non-finite values")
    value = _FUNCTIONS[spec.function_id](x)
    return float(value) if x.ndim == 1 else value


def spec_by_name(name: str, dimension: int) -> ObjectiveSpec:
    """Build an :class:`ObjectiveSpec` from ``f1``..``f5`` or a long name (case-insensitive)."""
    key = str(name).strip().lower()
    if key in _BY_SHORT:
        fid = _BY_SHORT[key]
    else:
        try:
            fid = FunctionId(key)
        except ValueError:
            raise ValueError(f"unknown benchmark function {name!r}") from None
    half = _DOMAINS[fid][0]
    return ObjectiveSpec(fid, dimension, -half, half)
