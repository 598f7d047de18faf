"""Generic evolutionary algorithm engine.

One generation is the recurrence X[t+1] = s(v(X[t])): the variation operators
are applied first to produce an offspring pool, then selection draws the next
population from that pool. The parent population re-enters only through
elitism, which copies the best parent over the worst selected individual.

Randomness discipline: a run owns one root seed; every operator instance gets
its own deterministically derived stream, so traces are a pure function of
(algorithm, seed) and adding instrumentation never perturbs sampling.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import ConfigError, ContractError, InputError
from .automata import FiniteAutomaton, fa_run
from .fsm_mutation import FsmMutationConfig, mutate_fsm
from .words import Word

Genomes = Union[np.ndarray, list]


# ---------------------------------------------------------------------------
# representations and populations

@dataclass(frozen=True)
class Representation:
    """Shape of the search space: fixed bitstrings, real vectors, or FSMs."""

    kind: str  # "bits" | "reals" | "fsm"
    length: int = 0  # bit count n or dimension d; unused for fsm
    init_low: float = -5.0
    init_high: float = 5.0
    initial_fsm: Optional[FiniteAutomaton] = None

    def __post_init__(self):
        if self.kind not in ("bits", "reals", "fsm"):
            raise ConfigError(f"unknown representation kind {self.kind!r}")
        if self.kind in ("bits", "reals") and self.length < 1:
            raise ConfigError(f"{self.kind} representation needs length >= 1")
        if self.kind == "fsm" and self.initial_fsm is None:
            raise ConfigError("fsm representation needs an initial automaton")


@dataclass
class Population:
    """An ordered multiset of genomes with cached fitness values."""

    kind: str
    genomes: Genomes
    fitness: np.ndarray
    generation: int = 0

    def __post_init__(self):
        if self.size == 0:
            raise InputError("population must be non-empty")
        if len(self.fitness) != self.size:
            raise ContractError("fitness cache length does not match population size")

    @property
    def size(self) -> int:
        return len(self.genomes)

    @property
    def best_index(self) -> int:
        return int(np.argmax(self.fitness))

    @property
    def best_fitness(self) -> float:
        return float(self.fitness[self.best_index])

    @property
    def mean_fitness(self) -> float:
        return float(np.mean(self.fitness))

    def best_genome(self):
        return self.genomes[self.best_index]


@dataclass(frozen=True)
class FitnessFunction:
    """Pure, nonnegative fitness; `batch` maps a whole genome pool at once."""

    name: str
    kind: str
    batch: Callable[[Genomes], np.ndarray]
    known_optimum: Optional[float] = None

    def evaluate(self, genomes: Genomes) -> np.ndarray:
        values = np.asarray(self.batch(genomes), dtype=float)
        if values.ndim != 1 or len(values) != len(genomes):
            raise ContractError(f"fitness {self.name!r} returned a malformed value array")
        if not np.all(np.isfinite(values)):
            raise ContractError(f"fitness {self.name!r} produced non-finite values")
        if np.any(values < 0):
            raise ContractError(f"fitness {self.name!r} produced negative values")
        return values


def onemax(n: int) -> FitnessFunction:
    """Number of 1-bits; optimum is n."""
    return FitnessFunction(
        "onemax", "bits", lambda g: np.asarray(g).sum(axis=1).astype(float), float(n)
    )


def leading_ones(n: int) -> FitnessFunction:
    """Length of the leading all-ones prefix; optimum is n."""

    def batch(genomes):
        arr = np.asarray(genomes)
        has_zero = (arr == 0).any(axis=1)
        first_zero = np.argmin(arr, axis=1)
        return np.where(has_zero, first_zero, arr.shape[1]).astype(float)

    return FitnessFunction("leading_ones", "bits", batch, float(n))


def fsm_label_match(samples: Sequence[Word], labels: Sequence[bool]) -> FitnessFunction:
    """Count of sample words an FSM classifies correctly; optimum = len(samples)."""
    pairs = list(zip(samples, labels))

    def batch(genomes):
        return np.array(
            [sum(fa_run(fa, w).accepted == want for w, want in pairs) for fa in genomes],
            dtype=float,
        )

    return FitnessFunction("fsm_label_match", "fsm", batch, float(len(pairs)))


def population_fitness(fitness: FitnessFunction, population: Population) -> float:
    """Fitness extended to populations as the best individual's value."""
    if population.size == 0:
        raise InputError("population must be non-empty")
    return float(np.max(population.fitness))


# ---------------------------------------------------------------------------
# variation operators

@dataclass(frozen=True)
class BitFlip:
    """Flip each bit independently with probability p; complete iff 0 < p < 1."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"bit-flip probability must be in [0, 1], got {self.p}")

    @property
    def is_complete(self) -> bool:
        return 0.0 < self.p < 1.0

    def apply(self, genomes, rng):
        arr = np.asarray(genomes, dtype=np.uint8)
        mask = rng.random(arr.shape) < self.p
        return arr ^ mask.astype(np.uint8)


@dataclass(frozen=True)
class OnePointCrossover:
    """Cross adjacent pairs (0,1), (2,3), ... with probability pc per pair."""

    pc: float

    def __post_init__(self):
        if not 0.0 <= self.pc <= 1.0:
            raise ConfigError(f"crossover probability must be in [0, 1], got {self.pc}")

    def apply(self, genomes, rng):
        arr = np.asarray(genomes).copy()
        count, n = arr.shape
        n_pairs = count // 2
        if n_pairs == 0 or n < 2:
            return arr
        # draw a decision and a cut for every pair so the stream length is fixed
        crossing = rng.random(n_pairs) < self.pc
        cuts = rng.integers(1, n, size=n_pairs)
        for pair, (do_cross, cut) in enumerate(zip(crossing, cuts)):
            if do_cross:
                i, j = 2 * pair, 2 * pair + 1
                tail = arr[i, cut:].copy()
                arr[i, cut:] = arr[j, cut:]
                arr[j, cut:] = tail
        return arr


@dataclass(frozen=True)
class GaussianMutation:
    """Add N(0, sigma^2) per coordinate; tau, if set, log-normally scales sigma
    per individual before sampling."""

    sigma: float
    tau: Optional[float] = None

    def __post_init__(self):
        if self.sigma <= 0:
            raise ConfigError(f"sigma must be > 0, got {self.sigma}")

    def apply(self, genomes, rng):
        arr = np.asarray(genomes, dtype=float)
        if self.tau is None:
            return arr + rng.normal(0.0, self.sigma, arr.shape)
        scale = self.sigma * np.exp(self.tau * rng.standard_normal(arr.shape[0]))
        return arr + scale[:, None] * rng.standard_normal(arr.shape)


@dataclass(frozen=True)
class FsmEdit:
    """EP-style FSM mutation applied to every genome."""

    config: FsmMutationConfig

    def apply(self, genomes, rng):
        return [mutate_fsm(fa, rng, self.config) for fa in genomes]


VariationOperator = Union[BitFlip, OnePointCrossover, GaussianMutation, FsmEdit]


# ---------------------------------------------------------------------------
# selection

@dataclass(frozen=True)
class Selection:
    """Selection policy; `elitist` additionally preserves the best parent."""

    method: str  # "truncation" | "proportional" | "tournament"
    keep_fraction: float = 0.5
    tournament_size: int = 2
    elitist: bool = False

    def __post_init__(self):
        if self.method not in ("truncation", "proportional", "tournament"):
            raise ConfigError(f"unknown selection method {self.method!r}")
        if not 0.0 < self.keep_fraction <= 1.0:
            raise ConfigError(f"keep fraction must be in (0, 1], got {self.keep_fraction}")
        if self.tournament_size < 1:
            raise ConfigError(f"tournament size must be >= 1, got {self.tournament_size}")

    def indices(self, fitness: np.ndarray, size: int, rng: np.random.Generator) -> np.ndarray:
        pool = len(fitness)
        if self.method == "truncation":
            # stable sort: ties keep original order
            order = np.argsort(-fitness, kind="stable")
            k = max(1, math.ceil(self.keep_fraction * pool))
            kept = order[:k]
            return kept[np.arange(size) % k]
        if self.method == "proportional":
            total = float(fitness.sum())
            if total <= 0.0:
                # all-zero fitness: fall back to uniform sampling
                probs = np.full(pool, 1.0 / pool)
            else:
                probs = fitness / total
            return rng.choice(pool, size=size, replace=True, p=probs)
        draws = rng.integers(0, pool, size=(size, self.tournament_size))
        winners = np.argmax(fitness[draws], axis=1)  # earliest draw wins ties
        return draws[np.arange(size), winners]


# ---------------------------------------------------------------------------
# termination

@dataclass(frozen=True)
class Termination:
    """Any-of stopping conditions; a generation cap is always required."""

    max_generations: Optional[int] = None
    target_fitness: Optional[float] = None
    tolerance: float = 0.0
    target_predicate: Optional[Callable[[Population], bool]] = None
    stagnation_window: Optional[int] = None
    min_improvement: float = 0.0

    def __post_init__(self):
        if self.max_generations is not None and self.max_generations < 1:
            raise ConfigError(f"generation cap must be >= 1, got {self.max_generations}")
        if self.stagnation_window is not None and self.stagnation_window < 1:
            raise ConfigError("stagnation window must be >= 1")
        if self.tolerance < 0 or self.min_improvement < 0:
            raise ConfigError("tolerance and min improvement must be >= 0")

    def check(self, population: Population, best_history: Sequence[float]) -> Optional[str]:
        if self.target_predicate is not None and self.target_predicate(population):
            return "target_set"
        if (
            self.target_fitness is not None
            and population.best_fitness >= self.target_fitness - self.tolerance
        ):
            return "fitness_optimum"
        window = self.stagnation_window
        if window is not None and len(best_history) > window:
            if best_history[-1] - best_history[-1 - window] < self.min_improvement:
                return "stagnation"
        if self.max_generations is not None and population.generation >= self.max_generations:
            return "max_generations"
        return None


# ---------------------------------------------------------------------------
# the algorithm and its recurrence

@dataclass(frozen=True)
class EvolutionaryAlgorithm:
    """The full tuple: space, initial population, fitness, s, v, C, and seed."""

    representation: Representation
    population_size: int
    fitness: FitnessFunction
    selection: Selection
    variation: tuple[VariationOperator, ...]
    termination: Termination
    seed: int
    initial_population: Optional[Population] = None

    def __post_init__(self):
        if self.population_size < 1:
            raise ConfigError(f"population size must be >= 1, got {self.population_size}")
        if self.fitness.kind != self.representation.kind:
            raise ConfigError(
                f"fitness {self.fitness.name!r} is for {self.fitness.kind!r} genomes, "
                f"got representation {self.representation.kind!r}"
            )


@dataclass
class RngStreams:
    """Per-operator random streams derived from one root seed."""

    init: np.random.Generator
    selection: np.random.Generator
    variation: tuple[np.random.Generator, ...]

    @classmethod
    def from_seed(cls, seed: int, n_variation: int) -> "RngStreams":
        children = np.random.SeedSequence(seed).spawn(2 + n_variation)
        gens = [np.random.default_rng(child) for child in children]
        return cls(init=gens[0], selection=gens[1], variation=tuple(gens[2:]))


def init_population(alg: EvolutionaryAlgorithm, rng: np.random.Generator) -> Population:
    rep = alg.representation
    if rep.kind == "bits":
        genomes = rng.integers(0, 2, size=(alg.population_size, rep.length), dtype=np.uint8)
    elif rep.kind == "reals":
        genomes = rng.uniform(rep.init_low, rep.init_high, size=(alg.population_size, rep.length))
    else:
        genomes = [rep.initial_fsm] * alg.population_size
    return Population(rep.kind, genomes, alg.fitness.evaluate(genomes), generation=0)


def _gather(genomes: Genomes, indices: np.ndarray) -> Genomes:
    if isinstance(genomes, np.ndarray):
        return genomes[indices].copy()
    return [genomes[i] for i in indices]


def ea_step(alg: EvolutionaryAlgorithm, population: Population, streams: RngStreams) -> Population:
    """One application of X[t+1] = s(v(X[t])).

    The streams object is the rng-state: it advances in place and carries all
    randomness between steps.
    """
    offspring = population.genomes
    for op, rng in zip(alg.variation, streams.variation):
        offspring = op.apply(offspring, rng)
    fitness = alg.fitness.evaluate(offspring)
    chosen = alg.selection.indices(fitness, alg.population_size, streams.selection)
    new_genomes = _gather(offspring, chosen)
    new_fitness = fitness[chosen].copy()
    if alg.selection.elitist:
        best = population.best_index
        worst = int(np.argmin(new_fitness))
        new_genomes[worst] = population.genomes[best]
        new_fitness[worst] = population.fitness[best]
    return Population(population.kind, new_genomes, new_fitness, population.generation + 1)


# ---------------------------------------------------------------------------
# traces

TRACE_COLUMNS = ("generation", "best_fitness", "mean_fitness", "best_genome", "stop_reason")


def format_genome(kind: str, genome) -> str:
    if kind == "bits":
        return "".join("1" if b else "0" for b in genome)
    if kind == "reals":
        return ";".join(repr(float(v)) for v in genome)
    return f"fsm({len(genome.states)}s,{len(genome.accepting)}a)"


def _format_value(value: float) -> str:
    return repr(float(value))


@dataclass(frozen=True)
class TraceRow:
    generation: int
    best_fitness: float
    mean_fitness: float
    best_genome: str


@dataclass
class RunTrace:
    """Per-generation history of a run plus its stop reason."""

    rows: list[TraceRow]
    stop_reason: str
    seed: int
    final_population: Population

    def best_fitness_series(self) -> np.ndarray:
        return np.array([row.best_fitness for row in self.rows])

    @property
    def generations(self) -> int:
        return self.rows[-1].generation

    def write_csv(self, handle) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for row in self.rows:
            writer.writerow(
                (
                    row.generation,
                    _format_value(row.best_fitness),
                    _format_value(row.mean_fitness),
                    row.best_genome,
                    self.stop_reason,
                )
            )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()


def _trace_row(population: Population) -> TraceRow:
    return TraceRow(
        population.generation,
        population.best_fitness,
        population.mean_fitness,
        format_genome(population.kind, population.best_genome()),
    )


def ea_run(alg: EvolutionaryAlgorithm) -> RunTrace:
    """Iterate ea_step from X[0] until the termination condition fires.

    An explicit generation cap is required: unbounded runs are only realized
    through budgets.
    """
    if alg.termination.max_generations is None:
        raise ConfigError("ea_run requires a max_generations cap")
    streams = RngStreams.from_seed(alg.seed, len(alg.variation))
    population = alg.initial_population or init_population(alg, streams.init)
    rows = [_trace_row(population)]
    best_history = [population.best_fitness]
    reason = alg.termination.check(population, best_history)
    while reason is None:
        population = ea_step(alg, population, streams)
        rows.append(_trace_row(population))
        best_history.append(population.best_fitness)
        reason = alg.termination.check(population, best_history)
    return RunTrace(rows, reason, alg.seed, population)
