"""Bat Algorithm and its DE-hybridised variant for continuous minimisation."""

from .bat import BatParams, RunRecord, SwarmState, run_ba
from .benchmarks import ObjectiveSpec, evaluate, spec_by_name
from .de import DeParams, parse_strategy
from .hba import HbaParams, run_hba
from .rng import RngState, derive_seed

__version__ = "0.1.0"

__all__ = [
    "BatParams",
    "DeParams",
    "HbaParams",
    "ObjectiveSpec",
    "RngState",
    "RunRecord",
    "SwarmState",
    "derive_seed",
    "evaluate",
    "parse_strategy",
    "run_ba",
    "run_hba",
    "spec_by_name",
]
