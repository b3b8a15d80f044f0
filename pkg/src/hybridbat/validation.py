"""Input checks shared by the estimators and the harness."""

from __future__ import annotations

import numbers

from .benchmarks import ObjectiveSpec, spec_by_name


def check_objective(objective, dimension=None) -> ObjectiveSpec:
    """Coerce a function name or :class:`ObjectiveSpec` into a spec.

    A name needs ``dimension``; a spec must not contradict it.
    """
    if isinstance(objective, ObjectiveSpec):
        if dimension is not None and dimension != objective.dimension:
            raise ValueError(f"dimension={dimension} conflicts with objective of dimension {objective.dimension}")
        return objective
    if isinstance(objective, str):
        if dimension is None:
            raise ValueError("a dimension is required when the objective is given by name")
        return spec_by_name(objective, check_positive_int(dimension, "dimension"))
    raise TypeError(f"objective must be a function name or ObjectiveSpec, got {type(objective).__name__}")


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_random_state(random_state):
    """``None`` or a non-negative 64-bit integer seed."""
    if random_state is None:
        return None
    if isinstance(random_state, bool) or not isinstance(random_state, numbers.Integral):
        raise TypeError(f"random_state must be None or an int, got {random_state!r}")
    if not 0 <= random_state < 2**64:
        raise ValueError("random_state must fit in 64 unsigned bits")
    return int(random_state)


def check_is_fitted(estimator) -> None:
    if not hasattr(estimator, "best_fitness_"):
        raise NotFittedError(f"{type(estimator).__name__} is not fitted yet; call fit() first")


class NotFittedError(ValueError, AttributeError):
    pass
