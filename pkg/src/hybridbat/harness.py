"""Experiment driver: the functions x dimensions x algorithms matrix.

Each (algorithm, function, dimension) cell is run ``runs_per_cell`` times
from seeds split off the master seed, summarised into five statistics and
written out as ``results.csv`` plus one plot table per function.
"""

from __future__ import annotations

import configparser
import csv
import logging
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .bat import BatParams, RunRecord, run_ba
from .benchmarks import FUNCTION_IDS, spec_by_name
from .de import DeParams, parse_strategy
from .hba import HbaParams, run_hba
from .rng import derive_seed

__all__ = [
    "ALGORITHMS",
    "DEFAULT_BUDGETS",
    "ExperimentConfig",
    "StatsSummary",
    "run_one",
    "run_cell",
    "run_experiment",
    "summarize",
    "emit_results_csv",
    "emit_plot_data",
    "load_config",
    "write_outputs",
]

log = logging.getLogger(__name__)

ALGORITHMS = ("ba", "hba")
DEFAULT_BUDGETS = {10: 1000, 20: 2000, 30: 3000}
RESULTS_HEADER = ["algorithm", "function", "dimension", "best", "worst", "mean", "median", "stdev"]
CONFIG_SECTION = "experiment"


def _canonical_function(name: str) -> str:
    # validates the name as a side effect
    return spec_by_name(name, 2).name


@dataclass(frozen=True)
class ExperimentConfig:
    functions: Tuple[str, ...] = FUNCTION_IDS
    dimensions: Tuple[int, ...] = (10, 20, 30)
    algorithms: Tuple[str, ...] = ALGORITHMS
    runs_per_cell: int = 25
    budgets: Mapping[int, int] = field(default_factory=lambda: dict(DEFAULT_BUDGETS))
    generations: Optional[int] = None
    master_seed: int = 42
    bat: BatParams = field(default_factory=BatParams)
    de: DeParams = field(default_factory=DeParams)
    strategy: str = "DE/rand/1/bin"
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(_canonical_function(f) for f in self.functions))
        object.__setattr__(self, "dimensions", tuple(int(d) for d in self.dimensions))
        algos = tuple(a.lower() for a in self.algorithms)
        for a in algos:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}; choose from {ALGORITHMS}")
        object.__setattr__(self, "algorithms", algos)
        object.__setattr__(self, "budgets", {int(k): int(v) for k, v in self.budgets.items()})
        strategy = parse_strategy(self.strategy)
        if "hba" in algos and not strategy.is_supported:
            raise ValueError(f"strategy {strategy} is not implemented; only DE/rand/1/bin runs")
        object.__setattr__(self, "strategy", str(strategy))
        if self.runs_per_cell < 1:
            raise ValueError("runs_per_cell must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.generations is not None and self.generations < 0:
            raise ValueError("generations must be >= 0")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 unsigned bits")
        for d in self.dimensions:
            self.budget_for(d)

    def budget_for(self, dimension: int) -> int:
        if self.generations is not None:
            return self.generations
        try:
            return self.budgets[dimension]
        except KeyError:
            raise ValueError(f"no generation budget for D={dimension}; pass generations or budget_{dimension}") from None

    def bat_params(self, dimension: int) -> BatParams:
        return replace(self.bat, max_generations=self.budget_for(dimension))

    def hba_params(self, dimension: int) -> HbaParams:
        return HbaParams(bat=self.bat_params(dimension), de=self.de, strategy=self.strategy)

    def run_seed(self, function: str, dimension: int, run_index: int) -> int:
        """Seed of one run; shared by both algorithms so they see common random streams."""
        return derive_seed(self.master_seed, FUNCTION_IDS.index(function), dimension, run_index)

    def metadata(self) -> List[Tuple[str, str]]:
        """Every parameter that influences results, as flat config keys."""
        b = self.bat
        items = [
            ("function", ",".join(self.functions)),
            ("dim", ",".join(map(str, self.dimensions))),
            ("algo", ",".join(self.algorithms)),
            ("runs", str(self.runs_per_cell)),
            ("seed", str(self.master_seed)),
        ]
        if self.generations is not None:
            items.append(("generations", str(self.generations)))
        items += [(f"budget_{d}", str(self.budget_for(d))) for d in self.dimensions]
        items += [
            ("pop_size", str(b.population_size)),
            ("q_min", repr(b.q_min)),
            ("q_max", repr(b.q_max)),
            ("loudness", repr(b.loudness)),
            ("pulse_rate", repr(b.pulse_rate)),
            ("alpha", repr(b.alpha)),
            ("gamma", repr(b.gamma)),
            ("epsilon", repr(b.epsilon)),
            ("de_f", repr(self.de.f)),
            ("de_cr", repr(self.de.cr)),
            ("strategy", self.strategy),
        ]
        return items

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "ExperimentConfig":
        """Build a config from flat keys (as in a config file or CLI flags); unset keys keep defaults."""
        v = {k.replace("-", "_"): val for k, val in values.items() if val is not None}
        unknown = {k for k in v if k not in _KNOWN_KEYS and not _BUDGET_KEY.match(k)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")

        kwargs = {}
        if "function" in v:
            kwargs["functions"] = _as_list(v["function"], str)
        if "dim" in v:
            kwargs["dimensions"] = _as_list(v["dim"], int)
        if "algo" in v:
            kwargs["algorithms"] = _as_list(v["algo"], str)
        if "runs" in v:
            kwargs["runs_per_cell"] = int(v["runs"])
        if "seed" in v:
            kwargs["master_seed"] = int(v["seed"])
        if "generations" in v:
            kwargs["generations"] = int(v["generations"])
        if "workers" in v:
            kwargs["workers"] = int(v["workers"])
        if "strategy" in v:
            kwargs["strategy"] = str(v["strategy"])

        budgets = dict(DEFAULT_BUDGETS)
        for k, val in v.items():
            if k.startswith("budget_"):
                budgets[int(k[len("budget_"):])] = int(val)
        kwargs["budgets"] = budgets

        bat_fields = {f: v[key] for key, f in _BAT_KEYS.items() if key in v}
        if bat_fields:
            bat_fields = {f: (int(x) if f == "population_size" else float(x)) for f, x in bat_fields.items()}
            kwargs["bat"] = BatParams(**bat_fields)
        de_defaults = DeParams()
        if "de_f" in v or "de_cr" in v:
            kwargs["de"] = DeParams(float(v.get("de_f", de_defaults.f)), float(v.get("de_cr", de_defaults.cr)))
        return cls(**kwargs)


_BAT_KEYS = {
    "pop_size": "population_size",
    "q_min": "q_min",
    "q_max": "q_max",
    "loudness": "loudness",
    "pulse_rate": "pulse_rate",
    "alpha": "alpha",
    "gamma": "gamma",
    "epsilon": "epsilon",
}
_BUDGET_KEY = re.compile(r"^budget_\d+$")
_KNOWN_KEYS = {"function", "dim", "algo", "runs", "seed", "generations", "workers", "strategy", "de_f", "de_cr"} | set(
    _BAT_KEYS
)


def _as_list(value, cast) -> List:
    if isinstance(value, str):
        items = [s.strip() for s in value.split(",") if s.strip()]
    elif isinstance(value, Iterable):
        items = list(value)
    else:
        items = [value]
    return [cast(x) for x in items]


def load_config(path) -> Dict[str, str]:
    """Read the flat key/value pairs of an ``[experiment]`` INI file."""
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    if not parser.has_section(CONFIG_SECTION):
        raise ValueError(f"{path}: missing [{CONFIG_SECTION}] section")
    return dict(parser.items(CONFIG_SECTION))


@dataclass(frozen=True)
class StatsSummary:
    best: float
    worst: float
    mean: float
    median: float
    stdev: float
    n_runs: int = 1


def summarize(records) -> StatsSummary:
    """Best/worst/mean/median/sample-stdev of the final fitness values.

    Accepts RunRecords or plain numbers. The median of an even count is the
    mean of the two middle values; stdev is 0 for a single run.
    """
    values = np.array([r.final_best_fitness if isinstance(r, RunRecord) else float(r) for r in records], dtype=float)
    if values.size == 0:
        raise ValueError("cannot summarise an empty batch of runs")
    stdev = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return StatsSummary(
        best=float(values.min()),
        worst=float(values.max()),
        mean=float(values.mean()),
        median=float(np.median(values)),
        stdev=stdev,
        n_runs=int(values.size),
    )


def run_one(config: ExperimentConfig, algorithm: str, function: str, dimension: int, run_index: int) -> RunRecord:
    spec = spec_by_name(function, dimension)
    seed = config.run_seed(spec.name, dimension, run_index)
    if algorithm == "ba":
        params = config.bat_params(dimension)
        record = run_ba(spec, params, seed)
        meta = {"bat": params}
    elif algorithm == "hba":
        params = config.hba_params(dimension)
        record = run_hba(spec, params, seed)
        meta = {"bat": params.bat, "de": params.de, "strategy": str(params.strategy)}
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return replace(record, run_index=run_index, params=meta)


def _run_task(args):
    return run_one(*args)


def _execute(config: ExperimentConfig, tasks: Sequence[tuple]) -> List[RunRecord]:
    jobs = [(config, *t) for t in tasks]
    if config.workers == 1 or len(jobs) <= 1:
        return [_run_task(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        # map keeps submission order, so output order is canonical
        return list(pool.map(_run_task, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))


def run_cell(config: ExperimentConfig, function: str, dimension: int, algorithm: str) -> List[RunRecord]:
    function = _canonical_function(function)
    tasks = [(algorithm, function, dimension, k) for k in range(config.runs_per_cell)]
    return _execute(config, tasks)


CellKey = Tuple[str, str, int]


def _cell_order(config: ExperimentConfig) -> List[CellKey]:
    return sorted(
        ((a, f, d) for a in config.algorithms for f in config.functions for d in config.dimensions),
        key=lambda c: (c[0], c[2], FUNCTION_IDS.index(c[1])),
    )


def run_experiment(config: ExperimentConfig) -> Tuple[Dict[CellKey, StatsSummary], Dict[CellKey, List[RunRecord]]]:
    """Run every cell; returns ``(summaries, records)`` keyed by ``(algorithm, function, dimension)``."""
    cells = _cell_order(config)
    tasks = [(a, f, d, k) for a, f, d in cells for k in range(config.runs_per_cell)]
    log.info("running %d cells, %d runs", len(cells), len(tasks))
    flat = _execute(config, tasks)
    records = {}
    for i, cell in enumerate(cells):
        records[cell] = flat[i * config.runs_per_cell : (i + 1) * config.runs_per_cell]
    summaries = {cell: summarize(recs) for cell, recs in records.items()}
    return summaries, records


def _metadata_lines(metadata) -> List[str]:
    return [f"# {k} = {v}\n" for k, v in (metadata or [])]


def _fmt(x: float) -> str:
    return f"{x:.6e}"


def emit_results_csv(summaries: Mapping[CellKey, StatsSummary], path, metadata=None) -> Path:
    """One row per cell, sorted by (algorithm, dimension, function), after a commented metadata block."""
    path = Path(path)
    rows = sorted(summaries.items(), key=lambda kv: (kv[0][0], kv[0][2], FUNCTION_IDS.index(kv[0][1])))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.writelines(_metadata_lines(metadata))
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for (algo, fn, dim), s in rows:
            writer.writerow([algo, fn, dim] + [_fmt(v) for v in (s.best, s.worst, s.mean, s.median, s.stdev)])
    return path


def emit_plot_data(summaries: Mapping[CellKey, StatsSummary], function: str, path, dimensions=None, metadata=None) -> Path:
    """Mean final fitness of BA and HBA against dimension, for a log-scale plot.

    ``zero_flag`` is 1 on rows where a mean is not strictly positive and so
    cannot be drawn on a log axis.
    """
    function = _canonical_function(function)
    if dimensions is None:
        dimensions = sorted({d for (_, f, d) in summaries if f == function})
    if not dimensions:
        raise KeyError(f"no results for function {function}")
    lines = _metadata_lines(metadata) + [f"# series = {function}\n", "# dimension ba_mean hba_mean zero_flag\n"]
    for d in dimensions:
        try:
            means = [summaries[(a, function, d)].mean for a in ALGORITHMS]
        except KeyError as exc:
            raise KeyError(f"missing result cell {exc.args[0]}") from None
        flag = int(any(not (m > 0 and math.isfinite(m)) for m in means))
        lines.append(f"{d} {_fmt(means[0])} {_fmt(means[1])} {flag}\n")
    path = Path(path)
    path.write_text("".join(lines), encoding="utf-8")
    return path


def write_outputs(config: ExperimentConfig, summaries, out_dir) -> List[Path]:
    """Write ``results.csv`` and, when both algorithms ran, ``f1.dat`` .. ``f5.dat``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = config.metadata()
    written = [emit_results_csv(summaries, out_dir / "results.csv", meta)]
    if set(ALGORITHMS) <= set(config.algorithms):
        for fn in config.functions:
            written.append(emit_plot_data(summaries, fn, out_dir / f"{fn}.dat", config.dimensions, meta))
    else:
        log.info("plot tables need both algorithms; skipped")
    return written
