"""Exhaustive no-free-lunch check on a complete function enumeration.

For a finite domain X and codomain Y, every one of the |Y|^|X| cost functions
is enumerated. Each search algorithm visits all of X without resampling; the
per-step multiset of best-value-found over all functions is its performance
vector. All valid algorithms must produce exactly equal vectors at every step.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ConfigError
from .report import ExperimentReport, digest_of

#: next_point(history, domain_size) -> index of an unvisited point.
#: history is the list of (point, value) pairs observed so far.
NextPoint = Callable[[list, int], int]


@dataclass(frozen=True)
class NflProblem:
    """Complete enumeration of all functions from a small domain to a small codomain."""

    domain_size: int
    codomain: tuple

    def __post_init__(self):
        if self.domain_size < 1 or self.domain_size > 6:
            raise ConfigError(f"domain size must be in 1..6, got {self.domain_size}")
        if not 1 <= len(self.codomain) <= 3:
            raise ConfigError(f"codomain size must be in 1..3, got {len(self.codomain)}")
        if len(set(self.codomain)) != len(self.codomain):
            raise ConfigError("codomain values must be distinct")
        if self.n_functions > 100_000:
            raise ConfigError("function enumeration too large")

    @property
    def n_functions(self) -> int:
        return len(self.codomain) ** self.domain_size

    def functions(self):
        """All |Y|^|X| value tuples, each one a function X -> Y; duplicate-free."""
        return itertools.product(self.codomain, repeat=self.domain_size)


@dataclass(frozen=True)
class SearchAlgorithm:
    name: str
    next_point: NextPoint


def scan_search() -> SearchAlgorithm:
    """Visit the domain in canonical index order."""

    def nxt(history, domain_size):
        visited = {p for p, _ in history}
        return next(i for i in range(domain_size) if i not in visited)

    return SearchAlgorithm("scan", nxt)


def shuffled_search(seed: int) -> SearchAlgorithm:
    """Visit the domain in one fixed seeded permutation; deterministic per seed."""

    def nxt(history, domain_size):
        order = np.random.default_rng(seed).permutation(domain_size)
        visited = {p for p, _ in history}
        return next(int(i) for i in order if i not in visited)

    return SearchAlgorithm(f"shuffle[{seed}]", nxt)


def neighbor_climb_search() -> SearchAlgorithm:
    """Greedy climber on the cycle neighborhood: among the unvisited points
    adjacent to some visited point, pick the one next to the best value seen;
    ties break to the smallest index. Adaptive, deterministic, non-resampling."""

    def nxt(history, domain_size):
        if not history:
            return 0
        values = dict(history)
        best_candidate = None
        best_score = None
        for u in range(domain_size):
            if u in values:
                continue
            neighbors = ((u - 1) % domain_size, (u + 1) % domain_size)
            seen = [values[v] for v in neighbors if v in values]
            if not seen:
                continue
            score = max(seen)
            if best_score is None or score > best_score:
                best_score, best_candidate = score, u
        return best_candidate

    return SearchAlgorithm("neighbor-climb", nxt)


def performance_vector(problem: NflProblem, algorithm: SearchAlgorithm) -> list[Counter]:
    """Best-value-by-step multisets over all functions; raises ConfigError on
    resampling or an out-of-range point."""
    counters = [Counter() for _ in range(problem.domain_size)]
    for fvals in problem.functions():
        history: list = []
        visited = set()
        best = None
        for k in range(problem.domain_size):
            point = algorithm.next_point(history, problem.domain_size)
            if point is None or not 0 <= point < problem.domain_size:
                raise ConfigError(f"algorithm {algorithm.name!r} emitted invalid point {point!r}")
            if point in visited:
                raise ConfigError(
                    f"algorithm {algorithm.name!r} resampled point {point} on function {fvals}"
                )
            visited.add(point)
            value = fvals[point]
            history.append((point, value))
            best = value if best is None else max(best, value)
            counters[k][best] += 1
    return counters


def _histogram(counter: Counter) -> str:
    return ";".join(f"{value}:{count}" for value, count in sorted(counter.items()))


def nfl_experiment(
    problem: NflProblem, algorithms: list[SearchAlgorithm], config_digest: str = ""
) -> ExperimentReport:
    """Compare performance vectors of all algorithms; pass iff exactly equal."""
    if not algorithms:
        raise ConfigError("need at least one search algorithm")
    digest = config_digest or digest_of(
        {
            "experiment": "nfl",
            "domain_size": problem.domain_size,
            "codomain": problem.codomain,
            "algorithms": tuple(a.name for a in algorithms),
        }
    )
    vectors: dict[str, list[Counter]] = {}
    notes: list[str] = []
    disqualified: list[str] = []
    for algorithm in algorithms:
        try:
            vectors[algorithm.name] = performance_vector(problem, algorithm)
        except ConfigError as exc:
            disqualified.append(algorithm.name)
            notes.append(f"disqualified {algorithm.name}: {exc}")

    names = [a.name for a in algorithms if a.name in vectors]
    reference = vectors[names[0]] if names else None
    all_equal = all(vectors[name] == reference for name in names)

    rows = [
        (name, k + 1, _histogram(counter))
        for name in names
        for k, counter in enumerate(vectors[name])
    ]
    checks = {
        "all_non_resampling": not disqualified,
        "identical_performance_vectors": all_equal and not disqualified,
    }
    return ExperimentReport(
        name="nfl",
        config_digest=digest,
        seeds=(),
        columns=("algorithm", "step", "best_value_histogram"),
        rows=rows,
        checks=checks,
        extras={
            "n_functions": problem.n_functions,
            "domain_size": problem.domain_size,
            "codomain_size": len(problem.codomain),
        },
        notes=tuple(notes),
    )
