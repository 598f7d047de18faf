"""Evolutionary automata: lazily generated sequences of level automata.

A level sequence E[0], E[1], ... is produced by one of three generators
(explicit list, pure index rule, or seeded mutation chain). A word is
accepted *terminally* if some level accepts it as the word passes unchanged
through the sequence; a single level defines a *local* language.

Terminal acceptance is a semi-decision procedure. Without a membership
certificate the only negative answer is UNKNOWN after the level budget; with
a certificate, known non-members are rejected without iterating.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError
from .words import Alphabet, Word
from .automata import (
    FiniteAutomaton,
    PushdownAutomaton,
    RunVerdict,
    StepBudget,
    TuringMachine,
    fa_run,
    make_dfa,
    pda_run,
    tm_inductive_run,
    tm_run,
)
from .fsm_mutation import FsmMutationConfig, mutate_fsm

LevelAutomaton = "FiniteAutomaton | PushdownAutomaton | TuringMachine"


class LevelKind(Enum):
    FA = "fa"
    PDA = "pda"
    TM = "tm"

    @property
    def automaton_type(self):
        return {"fa": FiniteAutomaton, "pda": PushdownAutomaton, "tm": TuringMachine}[self.value]


class ExplicitLevels:
    """A finite, fully materialized level sequence."""

    def __init__(self, levels: Sequence):
        if not levels:
            raise ConfigError("explicit level list must contain at least one automaton")
        self._levels = tuple(levels)

    @property
    def known_length(self) -> Optional[int]:
        return len(self._levels)

    def level(self, t: int):
        return self._levels[t]


class IndexedLevels:
    """Levels produced by a pure function of the level index, memoized."""

    def __init__(self, rule: Callable[[int], object]):
        self._rule = rule
        self._cache: dict[int, object] = {}
        self._lock = threading.Lock()

    @property
    def known_length(self) -> Optional[int]:
        return None

    def level(self, t: int):
        with self._lock:
            if t not in self._cache:
                self._cache[t] = self._rule(t)
            return self._cache[t]


class MutatedLevels:
    """Level t+1 derived from level t by a seeded deterministic mutation step.

    The produced sequence is memoized behind a lock, so concurrent queries
    observe one canonical sequence and the same seed always reproduces it.
    """

    def __init__(self, initial, step: Callable[[object, np.random.Generator, int], object], seed: int):
        self._levels = [initial]
        self._step = step
        self._rng = np.random.default_rng(seed)
        self._lock = threading.Lock()

    @property
    def known_length(self) -> Optional[int]:
        return None

    def level(self, t: int):
        with self._lock:
            while len(self._levels) <= t:
                nxt = self._step(self._levels[-1], self._rng, len(self._levels) - 1)
                self._levels.append(nxt)
            return self._levels[t]


class TerminalStatus(Enum):
    ACCEPTED = "accepted"
    REJECTED_BY_CERTIFICATE = "rejected-by-certificate"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TerminalVerdict:
    """Result of a budgeted terminal-mode acceptance query.

    `budget_limited_levels` counts levels whose own run hit its step budget;
    those levels are treated as non-accepting but are reported here.
    """

    status: TerminalStatus
    level: Optional[int] = None
    steps: Optional[int] = None
    levels_explored: int = 0
    budget_limited_levels: int = 0

    @property
    def accepted(self) -> bool:
        return self.status is TerminalStatus.ACCEPTED


@dataclass(frozen=True)
class LevelBudget:
    """Maximum number of levels a terminal query may explore."""

    max_levels: int

    def __post_init__(self):
        if self.max_levels < 1:
            raise ConfigError(f"level budget must be >= 1, got {self.max_levels}")

    @classmethod
    def of(cls, budget: "int | LevelBudget") -> "LevelBudget":
        return budget if isinstance(budget, LevelBudget) else cls(budget)


@dataclass(frozen=True)
class EvolutionaryAutomaton:
    """A level sequence plus acceptance machinery.

    `certificate`, when present, must be a pure membership predicate for the
    terminal language; it lets known languages reject in finite time.
    TM levels run in halting mode unless `tm_stability_window` is set, in
    which case the inductive (stable-output) mode is used.
    """

    alphabet: Alphabet
    levels: "ExplicitLevels | IndexedLevels | MutatedLevels"
    level_kind: LevelKind
    step_budget: StepBudget = StepBudget(10_000)
    certificate: Optional[Callable[[Word], bool]] = None
    tm_stability_window: Optional[int] = None

    def level(self, t: int):
        if t < 0:
            raise ConfigError(f"level index must be >= 0, got {t}")
        automaton = self.levels.level(t)
        if not isinstance(automaton, self.level_kind.automaton_type):
            raise ConfigError(
                f"level {t} is a {type(automaton).__name__}, expected {self.level_kind.value}"
            )
        return automaton

    def run_level(self, t: int, word: Word) -> RunVerdict:
        automaton = self.level(t)
        if self.level_kind is LevelKind.FA:
            return fa_run(automaton, word)
        if self.level_kind is LevelKind.PDA:
            return pda_run(automaton, word, self.step_budget)
        if self.tm_stability_window is not None:
            return tm_inductive_run(automaton, word, self.step_budget, self.tm_stability_window)
        return tm_run(automaton, word, self.step_budget)


def local_accept(ea: EvolutionaryAutomaton, t: int, word: Word) -> RunVerdict:
    """Run only level t on the word, under the per-level budget."""
    return ea.run_level(t, word)


def terminal_accept(
    ea: EvolutionaryAutomaton, word: Word, level_budget: "int | LevelBudget"
) -> TerminalVerdict:
    """Feed the word through E[0], E[1], ... until some level accepts.

    The word passes through unchanged (identity pass-through). A level whose
    own run is UNKNOWN counts as non-accepting. Without a certificate this
    never claims rejection.
    """
    max_levels = LevelBudget.of(level_budget).max_levels
    if ea.certificate is not None and not ea.certificate(word):
        return TerminalVerdict(TerminalStatus.REJECTED_BY_CERTIFICATE)
    known = ea.levels.known_length
    if known is not None:
        max_levels = min(max_levels, known)
    budget_limited = 0
    for t in range(max_levels):
        verdict = ea.run_level(t, word)
        if verdict.accepted:
            return TerminalVerdict(
                TerminalStatus.ACCEPTED,
                level=t,
                steps=verdict.steps_used,
                levels_explored=t + 1,
                budget_limited_levels=budget_limited,
            )
        if verdict.unknown:
            budget_limited += 1
    return TerminalVerdict(
        TerminalStatus.UNKNOWN,
        levels_explored=max_levels,
        budget_limited_levels=budget_limited,
    )


def singleton_word_dfa(alphabet: Alphabet, word: Word) -> FiniteAutomaton:
    """The minimal DFA accepting exactly `word`: a chain plus a dead state."""
    chain = [f"p{i}" for i in range(len(word) + 1)]
    dead = "dead"
    delta: dict[tuple[str, str], str] = {}
    for i, state in enumerate(chain):
        for sym in alphabet:
            if i < len(word) and word.symbols[i] == sym:
                delta[(state, sym)] = chain[i + 1]
            else:
                delta[(state, sym)] = dead
    for sym in alphabet:
        delta[(dead, sym)] = dead
    return make_dfa(alphabet, chain + [dead], chain[0], {chain[-1]}, delta)


def is_block_word(word: Word, blocks: tuple[str, ...]) -> bool:
    """True iff word = b0^n b1^n ... for the given block symbols and some n >= 0."""
    n, rem = divmod(len(word), len(blocks))
    if rem:
        return False
    expected = tuple(sym for block in blocks for sym in (block,) * n)
    return word.symbols == expected


def make_anbn_efa(step_budget: "int | StepBudget" = 10_000) -> EvolutionaryAutomaton:
    """Level t accepts exactly a^t b^t; terminal language is {a^n b^n | n >= 0}."""
    alphabet = Alphabet.of("a", "b")

    def rule(t: int) -> FiniteAutomaton:
        return singleton_word_dfa(alphabet, alphabet.word("a" * t + "b" * t))

    return EvolutionaryAutomaton(
        alphabet,
        IndexedLevels(rule),
        LevelKind.FA,
        StepBudget.of(step_budget),
        certificate=lambda w: is_block_word(w, ("a", "b")),
    )


def make_anbncn_efa(step_budget: "int | StepBudget" = 10_000) -> EvolutionaryAutomaton:
    """Level t accepts exactly a^t b^t c^t; terminal language is {a^n b^n c^n}."""
    alphabet = Alphabet.of("a", "b", "c")

    def rule(t: int) -> FiniteAutomaton:
        return singleton_word_dfa(alphabet, alphabet.word("a" * t + "b" * t + "c" * t))

    return EvolutionaryAutomaton(
        alphabet,
        IndexedLevels(rule),
        LevelKind.FA,
        StepBudget.of(step_budget),
        certificate=lambda w: is_block_word(w, ("a", "b", "c")),
    )


def make_singleton_efa(
    alphabet: Alphabet,
    enumerator: Callable[[int], Word],
    certificate: Optional[Callable[[Word], bool]] = None,
    step_budget: "int | StepBudget" = 10_000,
) -> EvolutionaryAutomaton:
    """Level t is the minimal DFA accepting exactly enumerator(t).

    Any language given by a total enumeration of its words becomes a terminal
    language this way; the enumerator must be pure.
    """

    def rule(t: int) -> FiniteAutomaton:
        word = enumerator(t)
        if word.alphabet.symbols != alphabet.symbols:
            raise ConfigError(
                f"enumerator produced a word over {word.alphabet.symbols}, expected {alphabet.symbols}"
            )
        return singleton_word_dfa(alphabet, word)

    return EvolutionaryAutomaton(
        alphabet, IndexedLevels(rule), LevelKind.FA, StepBudget.of(step_budget), certificate
    )


def make_ep_mutated_efa(
    seed: int,
    initial: FiniteAutomaton,
    mutation_config: FsmMutationConfig,
    step_budget: "int | StepBudget" = 10_000,
) -> EvolutionaryAutomaton:
    """Levels evolve from `initial` by seeded EP-style FSM edits."""

    def step(fa: FiniteAutomaton, rng: np.random.Generator, _t: int) -> FiniteAutomaton:
        return mutate_fsm(fa, rng, mutation_config)

    return EvolutionaryAutomaton(
        initial.alphabet,
        MutatedLevels(initial, step, seed),
        LevelKind.FA,
        StepBudget.of(step_budget),
    )
