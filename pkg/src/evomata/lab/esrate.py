"""Empirical geometric-rate check for the (1+1)-ES on the sphere function.

Each seeded run fits a least-squares line to log best-fitness against the
iteration index over the post-burn-in window. A run passes when the slope is
negative and the fit is tight (R^2 above the threshold); the experiment
passes when enough seeds pass. A run whose fitness sits at the log floor from
the start is reported as degenerate input, not as a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ConfigError
from ..es import OneFifthRule, es_minimize, sphere
from .report import ExperimentReport, digest_of


@dataclass(frozen=True)
class EsRateConfig:
    dimension: int = 5
    iterations: int = 2000
    sigma0: float = 1.0
    n_seeds: int = 50
    base_seed: int = 3000
    burn_in_fraction: float = 0.1
    log_floor: float = 1e-300
    min_r_squared: float = 0.9
    min_passing: int = 45
    rule: OneFifthRule = OneFifthRule(window=10, factor=0.82, sigma_floor=1e-12)
    initial_point: Optional[tuple] = None  # default: seeded uniform in [-5, 5]^d

    def __post_init__(self):
        if self.dimension < 1 or self.iterations < 1 or self.n_seeds < 1:
            raise ConfigError("dimension, iterations, and seed count must be >= 1")
        if not 0.0 <= self.burn_in_fraction < 1.0:
            raise ConfigError("burn-in fraction must be in [0, 1)")
        if self.log_floor <= 0:
            raise ConfigError("log floor must be > 0")
        if self.initial_point is not None and len(self.initial_point) != self.dimension:
            raise ConfigError("initial point dimension mismatch")


def fit_log_slope(values: np.ndarray, burn_in_fraction: float, floor: float):
    """Least-squares slope and R^2 of log(values) past the burn-in; returns
    (slope, r_squared, clipped) where clipped reports floor clipping."""
    clipped = bool(np.any(values < floor))
    y = np.log(np.maximum(values, floor))
    start = int(burn_in_fraction * len(y))
    y = y[start:]
    x = np.arange(len(y), dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    ss_res = float(((y - predicted) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return float(slope), float(r_squared), clipped


def es_rate_experiment(
    config: EsRateConfig = EsRateConfig(), config_digest: str = ""
) -> ExperimentReport:
    digest = config_digest or digest_of(
        {
            "experiment": "esrate",
            "dimension": config.dimension,
            "iterations": config.iterations,
            "sigma0": config.sigma0,
            "n_seeds": config.n_seeds,
            "base_seed": config.base_seed,
            "burn_in_fraction": config.burn_in_fraction,
            "min_r_squared": config.min_r_squared,
            "min_passing": config.min_passing,
            "window": config.rule.window,
            "factor": config.rule.factor,
            "sigma_floor": config.rule.sigma_floor,
        }
    )
    rows = []
    notes = []
    seeds = tuple(config.base_seed + i for i in range(config.n_seeds))
    passing = 0
    degenerate = 0
    for seed in seeds:
        init_child, run_child = np.random.SeedSequence(seed).spawn(2)
        if config.initial_point is not None:
            x0 = np.asarray(config.initial_point, dtype=float)
        else:
            x0 = np.random.default_rng(init_child).uniform(-5.0, 5.0, config.dimension)
        trace = es_minimize(sphere, x0, config.sigma0, config.iterations, run_child, config.rule)
        if bool(np.all(trace.best_fitness <= config.log_floor)):
            verdict = "degenerate"
            slope, r_squared, clipped = 0.0, 0.0, True
            degenerate += 1
            notes.append(f"seed {seed}: degenerate input (fitness at floor from start)")
        else:
            slope, r_squared, clipped = fit_log_slope(
                trace.best_fitness, config.burn_in_fraction, config.log_floor
            )
            verdict = "pass" if slope < 0 and r_squared >= config.min_r_squared else "fail"
            passing += verdict == "pass"
            if clipped:
                notes.append(f"seed {seed}: log clipped at floor {config.log_floor}")
        if trace.sigma_at_floor_throughout:
            notes.append(f"seed {seed}: no adaptation (sigma at floor for entire run)")
        rows.append((seed, repr(slope), repr(r_squared), verdict, int(clipped)))

    required = min(config.min_passing, config.n_seeds - degenerate)
    checks = {"geometric_rate": passing >= required}
    return ExperimentReport(
        name="esrate",
        config_digest=digest,
        seeds=seeds,
        columns=("seed", "slope", "r_squared", "verdict", "log_clipped"),
        rows=rows,
        checks=checks,
        extras={
            "passing": passing,
            "degenerate": degenerate,
            "required_passing": required,
            "min_r_squared": config.min_r_squared,
        },
        notes=tuple(notes),
    )
