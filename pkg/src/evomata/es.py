"""(1+1) evolution strategy with 1/5-success-rule step-size adaptation.

This operator minimizes: the offspring x + sigma * N(0, I) replaces the
parent only on strict improvement. Every `window` trials the step size is
multiplied by `factor` when the success rate fell below 1/5 and divided by it
when the rate exceeded 1/5; sigma never drops below the configured floor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


def sphere(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, x))


@dataclass(frozen=True)
class OneFifthRule:
    window: int = 10
    factor: float = 0.82
    sigma_floor: float = 1e-12

    def __post_init__(self):
        if self.window < 1:
            raise ConfigError(f"adaptation window must be >= 1, got {self.window}")
        if not 0.0 < self.factor < 1.0:
            raise ConfigError(f"adaptation factor must be in (0, 1), got {self.factor}")
        if self.sigma_floor <= 0:
            raise ConfigError("sigma floor must be > 0")


@dataclass(frozen=True)
class EsState:
    """Parent point, step size, cached fitness, and the adaptation counters."""

    x: np.ndarray
    sigma: float
    fitness: float
    successes: int = 0
    trials: int = 0
    floor_clamped: bool = False  # set on the step whose adaptation hit the floor


def es_one_plus_one_step(
    state: EsState, objective, rng: np.random.Generator, rule: OneFifthRule
) -> EsState:
    """One mutation/selection step; adapts sigma at window boundaries."""
    offspring = state.x + state.sigma * rng.standard_normal(state.x.shape)
    f_offspring = float(objective(offspring))
    success = f_offspring < state.fitness
    x, fitness = (offspring, f_offspring) if success else (state.x, state.fitness)
    trials = state.trials + 1
    successes = state.successes + int(success)
    sigma = state.sigma
    clamped = False
    if trials == rule.window:
        rate = successes / rule.window
        if rate > 0.2:
            sigma /= rule.factor
        elif rate < 0.2:
            sigma *= rule.factor
        if sigma < rule.sigma_floor:
            sigma = rule.sigma_floor
            clamped = True
        trials = successes = 0
    return EsState(x, sigma, fitness, successes, trials, clamped)


@dataclass
class EsTrace:
    """Per-iteration best fitness and sigma, plus floor-clamp accounting."""

    best_fitness: np.ndarray
    sigma: np.ndarray
    clamp_events: int
    adaptation_windows: int

    @property
    def sigma_at_floor_throughout(self) -> bool:
        return bool(np.all(self.sigma == self.sigma[0])) and self.clamp_events == self.adaptation_windows > 0


def es_minimize(objective, x0, sigma0: float, iterations: int, seed, rule: OneFifthRule) -> EsTrace:
    """Run the strategy for a fixed iteration count; deterministic per seed."""
    if sigma0 <= 0:
        raise ConfigError(f"initial sigma must be > 0, got {sigma0}")
    if iterations < 1:
        raise ConfigError(f"iteration count must be >= 1, got {iterations}")
    rng = np.random.default_rng(seed)
    x0 = np.asarray(x0, dtype=float)
    state = EsState(x0, sigma0, float(objective(x0)))
    best = [state.fitness]
    sigmas = [state.sigma]
    clamps = 0
    windows = 0
    for step in range(1, iterations + 1):
        state = es_one_plus_one_step(state, objective, rng, rule)
        best.append(state.fitness)
        sigmas.append(state.sigma)
        clamps += int(state.floor_clamped)
        if step % rule.window == 0:
            windows += 1
    return EsTrace(np.array(best), np.array(sigmas), clamps, windows)
