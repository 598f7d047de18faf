"""Monte Carlo check of the classical one-generation schema lower bound.

For a schema H in a fixed population X[t], the expected next-generation count
under a generational GA (proportional selection, then one-point crossover,
then per-bit mutation — the order the bound describes) satisfies

    E[m(H, t+1)] >= m(H,t) * (fbar(H,t)/fbar(t))
                    * (1 - pc * delta(H)/(n-1)) * (1 - pm)^o(H)

The experiment estimates the left side over many independent transitions from
the same X[t] and passes iff the estimate is no more than three standard
errors below the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, InputError
from ..ea import BitFlip, OnePointCrossover, Selection, onemax
from .report import ExperimentReport, digest_of


@dataclass(frozen=True)
class Schema:
    """A pattern over {0, 1, #}; # is don't-care."""

    pattern: str

    def __post_init__(self):
        if not self.pattern:
            raise InputError("schema pattern must be non-empty")
        bad = set(self.pattern) - set("01#")
        if bad:
            raise InputError(f"schema pattern may only contain 0, 1, #; got {sorted(bad)}")

    @property
    def fixed_positions(self) -> tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.pattern) if ch != "#")

    @property
    def order(self) -> int:
        return len(self.fixed_positions)

    @property
    def defining_length(self) -> int:
        fixed = self.fixed_positions
        return fixed[-1] - fixed[0] if len(fixed) >= 2 else 0

    def match_mask(self, genomes: np.ndarray) -> np.ndarray:
        fixed = self.fixed_positions
        if not fixed:
            return np.ones(len(genomes), dtype=bool)
        wanted = np.array([int(self.pattern[i]) for i in fixed], dtype=np.uint8)
        return np.all(genomes[:, list(fixed)] == wanted, axis=1)

    def count_matches(self, genomes: np.ndarray) -> int:
        return int(self.match_mask(genomes).sum())


@dataclass(frozen=True)
class SchemaGaConfig:
    genome_length: int = 10
    population_size: int = 200
    crossover_probability: float = 0.6
    mutation_probability: float = 0.01
    transitions: int = 1000
    seed: int = 202

    def __post_init__(self):
        if self.genome_length < 1 or self.population_size < 1 or self.transitions < 1:
            raise ConfigError("genome length, population size, and transitions must be >= 1")
        for p in (self.crossover_probability, self.mutation_probability):
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"probability must be in [0, 1], got {p}")


def holland_bound(
    count: int,
    schema_mean_fitness: float,
    population_mean_fitness: float,
    schema: Schema,
    config: SchemaGaConfig,
) -> float:
    """The pessimistic lower bound on E[m(H, t+1)]; 0 when the schema is absent."""
    if count == 0 or population_mean_fitness == 0.0:
        return 0.0
    n = config.genome_length
    crossover_survival = 1.0
    if n > 1:
        crossover_survival = 1.0 - config.crossover_probability * schema.defining_length / (n - 1)
    mutation_survival = (1.0 - config.mutation_probability) ** schema.order
    ratio = schema_mean_fitness / population_mean_fitness
    return count * ratio * max(crossover_survival, 0.0) * mutation_survival


def one_generation(
    genomes: np.ndarray, fitness: np.ndarray, config: SchemaGaConfig, rng: np.random.Generator
) -> np.ndarray:
    """One canonical GA generation: select N parents proportionally, cross
    adjacent pairs, then mutate per bit."""
    chosen = Selection("proportional").indices(fitness, len(genomes), rng)
    parents = genomes[chosen]
    crossed = OnePointCrossover(config.crossover_probability).apply(parents, rng)
    return BitFlip(config.mutation_probability).apply(crossed, rng)


def schema_experiment(
    schema: Schema, config: SchemaGaConfig = SchemaGaConfig(), config_digest: str = ""
) -> ExperimentReport:
    if len(schema.pattern) != config.genome_length:
        raise InputError(
            f"schema length {len(schema.pattern)} != genome length {config.genome_length}"
        )
    digest = config_digest or digest_of(
        {
            "experiment": "schema",
            "pattern": schema.pattern,
            "genome_length": config.genome_length,
            "population_size": config.population_size,
            "pc": config.crossover_probability,
            "pm": config.mutation_probability,
            "transitions": config.transitions,
            "seed": config.seed,
        }
    )
    fitness_fn = onemax(config.genome_length)
    streams = np.random.SeedSequence(config.seed).spawn(config.transitions + 1)
    init_rng = np.random.default_rng(streams[0])
    base = init_rng.integers(
        0, 2, size=(config.population_size, config.genome_length), dtype=np.uint8
    )
    fitness = fitness_fn.evaluate(base)

    count = schema.count_matches(base)
    mean_pop = float(fitness.mean())
    matches = schema.match_mask(base)
    mean_schema = float(fitness[matches].mean()) if count else 0.0
    bound = holland_bound(count, mean_schema, mean_pop, schema, config)

    next_counts = np.empty(config.transitions, dtype=float)
    for i in range(config.transitions):
        rng = np.random.default_rng(streams[i + 1])
        next_counts[i] = schema.count_matches(one_generation(base, fitness, config, rng))

    mean = float(next_counts.mean())
    stderr = float(next_counts.std(ddof=1) / math.sqrt(config.transitions))
    passed = mean >= bound - 3.0 * stderr

    notes = () if count else ("schema absent from X[t]; bound is trivially 0",)
    rows = [(i, int(c)) for i, c in enumerate(next_counts)]
    return ExperimentReport(
        name="schema",
        config_digest=digest,
        seeds=(config.seed,),
        columns=("transition", "next_generation_count"),
        rows=rows,
        checks={"holland_lower_bound": bool(passed)},
        extras={
            "pattern": schema.pattern,
            "order": schema.order,
            "defining_length": schema.defining_length,
            "initial_count": count,
            "schema_mean_fitness": mean_schema,
            "population_mean_fitness": mean_pop,
            "bound": bound,
            "monte_carlo_mean": mean,
            "standard_error": stderr,
        },
        notes=notes,
    )
