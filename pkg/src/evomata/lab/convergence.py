"""Finite shadows of the elitist-convergence claim on OneMax.

The limit statement itself is not finitely observable; what is checked here:
elitist runs with a complete bit-flip operator reach the known optimum within
a generous generation cap and their best fitness never decreases, while
proportional selection without elitism loses the best individual in at least
one replicate.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError
from ..ea import (
    BitFlip,
    EvolutionaryAlgorithm,
    Representation,
    RngStreams,
    Selection,
    Termination,
    ea_run,
    ea_step,
    init_population,
    onemax,
)
from .report import ExperimentReport, digest_of


@dataclass(frozen=True)
class ConvergenceConfig:
    genome_length: int = 16
    population_size: int = 20
    flip_probability: float = 1.0 / 16.0
    keep_fraction: float = 0.5
    elitist_replicates: int = 50
    nonelitist_replicates: int = 100
    max_generations: int = 2000
    base_seed: int = 1000
    stop_nonelitist_on_decrease: bool = True

    def __post_init__(self):
        if not 0.0 < self.flip_probability < 1.0:
            raise ConfigError(
                "convergence experiment needs a complete variation operator: "
                f"flip probability must be in (0, 1), got {self.flip_probability}"
            )
        if self.elitist_replicates < 1 or self.nonelitist_replicates < 1:
            raise ConfigError("replicate counts must be >= 1")
        if self.max_generations < 1:
            raise ConfigError("generation cap must be >= 1")


def _algorithm(config: ConvergenceConfig, seed: int, elitist: bool) -> EvolutionaryAlgorithm:
    n = config.genome_length
    if elitist:
        selection = Selection("truncation", keep_fraction=config.keep_fraction, elitist=True)
        termination = Termination(
            max_generations=config.max_generations, target_fitness=float(n)
        )
    else:
        selection = Selection("proportional", elitist=False)
        termination = Termination(max_generations=config.max_generations)
    return EvolutionaryAlgorithm(
        representation=Representation("bits", n),
        population_size=config.population_size,
        fitness=onemax(n),
        selection=selection,
        variation=(BitFlip(config.flip_probability),),
        termination=termination,
        seed=seed,
    )


def convergence_experiment(
    config: ConvergenceConfig = ConvergenceConfig(), config_digest: str = ""
) -> ExperimentReport:
    digest = config_digest or digest_of(
        {
            "experiment": "convergence",
            "genome_length": config.genome_length,
            "population_size": config.population_size,
            "flip_probability": config.flip_probability,
            "keep_fraction": config.keep_fraction,
            "elitist_replicates": config.elitist_replicates,
            "nonelitist_replicates": config.nonelitist_replicates,
            "max_generations": config.max_generations,
            "base_seed": config.base_seed,
        }
    )
    optimum = float(config.genome_length)
    rows = []
    seeds = []

    hits = 0
    total_violations = 0
    for i in range(config.elitist_replicates):
        seed = config.base_seed + i
        seeds.append(seed)
        trace = ea_run(_algorithm(config, seed, elitist=True))
        series = trace.best_fitness_series()
        violations = int((series[1:] < series[:-1]).sum())
        hit = bool(series[-1] >= optimum)
        hits += hit
        total_violations += violations
        rows.append(
            ("elitist", seed, trace.generations, series[-1], int(hit), violations, "")
        )

    decreases = 0
    for i in range(config.nonelitist_replicates):
        seed = config.base_seed + 10_000 + i
        seeds.append(seed)
        alg = _algorithm(config, seed, elitist=False)
        streams = RngStreams.from_seed(seed, len(alg.variation))
        population = init_population(alg, streams.init)
        previous = population.best_fitness
        decreased = False
        while population.generation < config.max_generations:
            population = ea_step(alg, population, streams)
            if population.best_fitness < previous:
                decreased = True
                if config.stop_nonelitist_on_decrease:
                    break
            previous = population.best_fitness
        decreases += decreased
        rows.append(
            (
                "proportional",
                seed,
                population.generation,
                population.best_fitness,
                "",
                "",
                int(decreased),
            )
        )

    hit_fraction = hits / config.elitist_replicates
    checks = {
        "elitist_all_hit_optimum": hits == config.elitist_replicates,
        "elitist_monotone_best_fitness": total_violations == 0,
        "nonelitist_decrease_observed": decreases >= 1,
    }
    return ExperimentReport(
        name="convergence",
        config_digest=digest,
        seeds=tuple(seeds),
        columns=(
            "mode",
            "seed",
            "generations",
            "final_best",
            "hit_optimum",
            "monotone_violations",
            "decrease_observed",
        ),
        rows=rows,
        checks=checks,
        extras={
            "optimum": optimum,
            "hit_fraction": hit_fraction,
            "total_monotone_violations": total_violations,
            "runs_with_decrease": decreases,
        },
    )
