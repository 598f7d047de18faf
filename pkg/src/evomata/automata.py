"""Classical abstract automata with deterministic, budgeted execution.

All machines are immutable values; every run function is a pure function of
its inputs, so results are reproducible and safe to share across threads.

Conventions (documented choices where textbooks differ):

* PDAs accept by final state once the whole input is consumed; the stack need
  not be empty. Nondeterminism is explored breadth-first and the step budget
  counts dequeued configurations, so ``UNKNOWN`` means the frontier was still
  alive when the budget ran out.
* Turing machines use a single one-way-infinite tape; moving left at cell 0
  stays at cell 0. A missing transition halts and rejects.
* The inductive run mode watches a designated output cell (cell 0) and
  reports once its content has been unchanged for a configured number of
  consecutive steps; this is an explicit finite surrogate for "the output
  stops changing forever", which is not observable in finite time.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import ConfigError, InputError
from .words import EPSILON, Alphabet, Word


class Verdict(Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RunVerdict:
    """Outcome of one budgeted machine run."""

    verdict: Verdict
    steps_used: int

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPTED

    @property
    def rejected(self) -> bool:
        return self.verdict is Verdict.REJECTED

    @property
    def unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN


@dataclass(frozen=True)
class StepBudget:
    """Upper bound on the number of execution steps of a single run."""

    max_steps: int

    def __post_init__(self):
        if self.max_steps < 1:
            raise ConfigError(f"step budget must be >= 1, got {self.max_steps}")

    @classmethod
    def of(cls, budget: "int | StepBudget") -> "StepBudget":
        return budget if isinstance(budget, StepBudget) else cls(budget)


def _check_word(word: Word, alphabet: Alphabet, what: str) -> None:
    for sym in word:
        if sym not in alphabet:
            raise InputError(f"symbol {sym!r} of word {word} not in {what} alphabet")


@dataclass(frozen=True, eq=True)
class FiniteAutomaton:
    """A DFA or NFA. NFA transition tables may use EPSILON ("") as a symbol.

    Deterministic automata must have a total transition function: exactly one
    successor for every (state, symbol) pair and no epsilon moves.
    """

    alphabet: Alphabet
    states: frozenset[str]
    start: str
    accepting: frozenset[str]
    transitions: Mapping[tuple[str, str], frozenset[str]]
    deterministic: bool

    def __post_init__(self):
        if self.start not in self.states:
            raise ConfigError(f"start state {self.start!r} not among states")
        if not self.accepting <= self.states:
            raise ConfigError("accepting states must be a subset of states")
        for (src, sym), dsts in self.transitions.items():
            if src not in self.states:
                raise ConfigError(f"transition from unknown state {src!r}")
            if sym != EPSILON and sym not in self.alphabet:
                raise ConfigError(f"transition on unknown symbol {sym!r}")
            if not dsts <= self.states:
                raise ConfigError(f"transition from {src!r} on {sym!r} targets unknown state")
        if self.deterministic:
            for state in self.states:
                for sym in self.alphabet:
                    dsts = self.transitions.get((state, sym))
                    if dsts is None or len(dsts) != 1:
                        raise ConfigError(
                            f"deterministic automaton needs exactly one successor for "
                            f"({state!r}, {sym!r})"
                        )
                if (state, EPSILON) in self.transitions:
                    raise ConfigError("deterministic automaton may not have epsilon moves")

    def __hash__(self):  # transitions mapping is not hashable; identity is fine here
        return id(self)


def make_dfa(
    alphabet: Alphabet,
    states,
    start: str,
    accepting,
    delta: Mapping[tuple[str, str], str],
) -> FiniteAutomaton:
    """Convenience constructor for a deterministic automaton with total `delta`."""
    transitions = {key: frozenset({dst}) for key, dst in delta.items()}
    return FiniteAutomaton(
        alphabet, frozenset(states), start, frozenset(accepting), transitions, deterministic=True
    )


def make_nfa(
    alphabet: Alphabet,
    states,
    start: str,
    accepting,
    delta: Mapping[tuple[str, str], set],
) -> FiniteAutomaton:
    transitions = {key: frozenset(dsts) for key, dsts in delta.items()}
    return FiniteAutomaton(
        alphabet, frozenset(states), start, frozenset(accepting), transitions, deterministic=False
    )


def epsilon_closure(fa: FiniteAutomaton, states: frozenset[str]) -> frozenset[str]:
    closure = set(states)
    stack = list(states)
    while stack:
        state = stack.pop()
        for nxt in fa.transitions.get((state, EPSILON), ()):
            if nxt not in closure:
                closure.add(nxt)
                stack.append(nxt)
    return frozenset(closure)


def fa_run(fa: FiniteAutomaton, word: Word) -> RunVerdict:
    """Run a finite automaton; always decides, steps = symbols consumed."""
    _check_word(word, fa.alphabet, "automaton")
    if fa.deterministic:
        state = fa.start
        for sym in word:
            (state,) = fa.transitions[(state, sym)]
        accepted = state in fa.accepting
    else:
        current = epsilon_closure(fa, frozenset({fa.start}))
        for sym in word:
            moved = set()
            for state in current:
                moved.update(fa.transitions.get((state, sym), ()))
            current = epsilon_closure(fa, frozenset(moved))
            if not current:
                break
        accepted = bool(current & fa.accepting)
    verdict = Verdict.ACCEPTED if accepted else Verdict.REJECTED
    return RunVerdict(verdict, steps_used=len(word))


def nfa_determinize(fa: FiniteAutomaton) -> FiniteAutomaton:
    """Subset construction; the result accepts the same language and is total."""

    def name(subset: frozenset[str]) -> str:
        return "{" + ",".join(sorted(subset)) + "}"

    start_set = epsilon_closure(fa, frozenset({fa.start}))
    pending = [start_set]
    seen = {start_set}
    delta: dict[tuple[str, str], str] = {}
    accepting: set[str] = set()
    while pending:
        subset = pending.pop()
        if subset & fa.accepting:
            accepting.add(name(subset))
        for sym in fa.alphabet:
            moved = set()
            for state in subset:
                moved.update(fa.transitions.get((state, sym), ()))
            target = epsilon_closure(fa, frozenset(moved))
            delta[(name(subset), sym)] = name(target)
            if target not in seen:
                seen.add(target)
                pending.append(target)
    states = {name(subset) for subset in seen}
    return make_dfa(fa.alphabet, states, name(start_set), accepting, delta)


@dataclass(frozen=True)
class PushdownAutomaton:
    """Nondeterministic PDA accepting by final state on fully consumed input.

    A transition maps (state, input symbol or EPSILON, stack top) to a set of
    (state, pushed sequence) pairs; the pushed sequence replaces the popped
    top, leftmost symbol becoming the new top.
    """

    alphabet: Alphabet
    states: frozenset[str]
    start: str
    accepting: frozenset[str]
    stack_alphabet: frozenset[str]
    initial_stack_symbol: str
    transitions: Mapping[tuple[str, str, str], frozenset[tuple[str, tuple[str, ...]]]]

    def __post_init__(self):
        if self.start not in self.states:
            raise ConfigError(f"start state {self.start!r} not among states")
        if not self.accepting <= self.states:
            raise ConfigError("accepting states must be a subset of states")
        if self.initial_stack_symbol not in self.stack_alphabet:
            raise ConfigError("initial stack symbol not in stack alphabet")
        for (src, sym, top), moves in self.transitions.items():
            if src not in self.states:
                raise ConfigError(f"transition from unknown state {src!r}")
            if sym != EPSILON and sym not in self.alphabet:
                raise ConfigError(f"transition on unknown input symbol {sym!r}")
            if top not in self.stack_alphabet:
                raise ConfigError(f"transition on unknown stack symbol {top!r}")
            for dst, push in moves:
                if dst not in self.states:
                    raise ConfigError(f"transition targets unknown state {dst!r}")
                for stack_sym in push:
                    if stack_sym not in self.stack_alphabet:
                        raise ConfigError(f"push sequence references unknown stack symbol {stack_sym!r}")

    def __hash__(self):
        return id(self)


def pda_run(pda: PushdownAutomaton, word: Word, budget: "int | StepBudget") -> RunVerdict:
    """Breadth-first exploration of all computation paths under a step budget.

    One step = one configuration dequeued. ACCEPTED as soon as a dequeued
    configuration has consumed the input in an accepting state; REJECTED when
    the frontier dies out; UNKNOWN when the budget is exhausted with live paths.
    """
    _check_word(word, pda.alphabet, "input")
    max_steps = StepBudget.of(budget).max_steps
    symbols = word.symbols
    start = (pda.start, 0, (pda.initial_stack_symbol,))
    queue: deque = deque([start])
    seen = {start}
    steps = 0
    while queue and steps < max_steps:
        state, pos, stack = queue.popleft()
        steps += 1
        if pos == len(symbols) and state in pda.accepting:
            return RunVerdict(Verdict.ACCEPTED, steps)
        if not stack:
            continue
        top, rest = stack[0], stack[1:]
        # consuming move first, then epsilon; successors sorted for determinism
        move_groups = []
        if pos < len(symbols):
            move_groups.append((pda.transitions.get((state, symbols[pos], top), frozenset()), pos + 1))
        move_groups.append((pda.transitions.get((state, EPSILON, top), frozenset()), pos))
        for group, next_pos in move_groups:
            for dst, push in sorted(group):
                config = (dst, next_pos, push + rest)
                if config not in seen:
                    seen.add(config)
                    queue.append(config)
    if queue:
        return RunVerdict(Verdict.UNKNOWN, steps)
    return RunVerdict(Verdict.REJECTED, steps)


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic single-tape TM; tape is one-way infinite to the right."""

    alphabet: Alphabet
    states: frozenset[str]
    start: str
    accepting: frozenset[str]
    rejecting: frozenset[str]
    tape_alphabet: frozenset[str]
    blank: str
    transitions: Mapping[tuple[str, str], tuple[str, str, str]]

    def __post_init__(self):
        if self.start not in self.states:
            raise ConfigError(f"start state {self.start!r} not among states")
        if self.accepting & self.rejecting:
            raise ConfigError("accepting and rejecting state sets overlap")
        if not (self.accepting | self.rejecting) <= self.states:
            raise ConfigError("halting states must be a subset of states")
        if self.blank not in self.tape_alphabet:
            raise ConfigError("blank symbol not in tape alphabet")
        for sym in self.alphabet:
            if sym not in self.tape_alphabet:
                raise ConfigError(f"input symbol {sym!r} not in tape alphabet")
        for (src, read), (dst, write, move) in self.transitions.items():
            if src not in self.states or dst not in self.states:
                raise ConfigError(f"transition {src!r}->{dst!r} references unknown state")
            if read not in self.tape_alphabet or write not in self.tape_alphabet:
                raise ConfigError(f"transition reads/writes unknown tape symbol")
            if move not in ("L", "R"):
                raise ConfigError(f"head move must be 'L' or 'R', got {move!r}")

    def __hash__(self):
        return id(self)


class _TmState:
    """Mutable simulation state shared by the two TM run modes."""

    __slots__ = ("machine", "tape", "head", "state", "steps")

    def __init__(self, machine: TuringMachine, word: Word):
        _check_word(word, machine.alphabet, "input")
        self.machine = machine
        self.tape = list(word.symbols) or [machine.blank]
        self.head = 0
        self.state = machine.start
        self.steps = 0

    def halted_verdict(self) -> Verdict | None:
        if self.state in self.machine.accepting:
            return Verdict.ACCEPTED
        if self.state in self.machine.rejecting:
            return Verdict.REJECTED
        return None

    def step(self) -> bool:
        """Apply one transition; False means no transition exists (halt-reject)."""
        symbol = self.tape[self.head]
        rule = self.machine.transitions.get((self.state, symbol))
        if rule is None:
            return False
        dst, write, move = rule
        self.tape[self.head] = write
        if move == "R":
            self.head += 1
            if self.head == len(self.tape):
                self.tape.append(self.machine.blank)
        elif self.head > 0:
            self.head -= 1
        self.state = dst
        self.steps += 1
        return True


def tm_run(machine: TuringMachine, word: Word, budget: "int | StepBudget") -> RunVerdict:
    """Halting-mode run: ACCEPTED/REJECTED on reaching a halting state in budget."""
    max_steps = StepBudget.of(budget).max_steps
    sim = _TmState(machine, word)
    verdict = sim.halted_verdict()
    while verdict is None and sim.steps < max_steps:
        if not sim.step():
            return RunVerdict(Verdict.REJECTED, sim.steps)
        verdict = sim.halted_verdict()
    if verdict is None:
        return RunVerdict(Verdict.UNKNOWN, sim.steps)
    return RunVerdict(verdict, sim.steps)


def tm_inductive_run(
    machine: TuringMachine,
    word: Word,
    budget: "int | StepBudget",
    stability_window: int,
    accept_symbol: str = "1",
) -> RunVerdict:
    """Watch the output cell (cell 0) and decide once it is stable long enough.

    The verdict is ACCEPTED iff the stable content equals `accept_symbol`.
    A machine that halts is stable forever, so its ordinary halting verdict is
    returned. UNKNOWN means the cell never stayed unchanged for
    `stability_window` consecutive steps within the budget.
    """
    if stability_window < 1:
        raise ConfigError(f"stability window must be >= 1, got {stability_window}")
    max_steps = StepBudget.of(budget).max_steps
    sim = _TmState(machine, word)
    verdict = sim.halted_verdict()
    if verdict is not None:
        return RunVerdict(verdict, 0)
    previous = sim.tape[0]
    streak = 0
    while sim.steps < max_steps:
        if not sim.step():
            return RunVerdict(Verdict.REJECTED, sim.steps)
        current = sim.tape[0]
        streak = streak + 1 if current == previous else 0
        previous = current
        if streak >= stability_window:
            result = Verdict.ACCEPTED if current == accept_symbol else Verdict.REJECTED
            return RunVerdict(result, sim.steps)
        verdict = sim.halted_verdict()
        if verdict is not None:
            return RunVerdict(verdict, sim.steps)
    return RunVerdict(Verdict.UNKNOWN, sim.steps)
