"""Seeded EP-style edits of deterministic finite automata.

Four edit kinds fire independently per mutation step, each with its own
probability: add a state, delete a state, retarget a transition, and flip one
state's accepting flag. Edits keep the automaton deterministic and total.
All random choices iterate states/transitions in sorted order, so a given
generator state always produces the same result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .automata import FiniteAutomaton, make_dfa


@dataclass(frozen=True)
class FsmMutationConfig:
    """Per-step firing probabilities for each edit kind."""

    p_add_state: float = 0.0
    p_delete_state: float = 0.0
    p_retarget: float = 0.0
    p_flip_accept: float = 0.0
    max_retries: int = 20

    def __post_init__(self):
        for name in ("p_add_state", "p_delete_state", "p_retarget", "p_flip_accept"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {p}")
        if self.max_retries < 1:
            raise ConfigError("max_retries must be >= 1")


def _pick(rng: np.random.Generator, items: list):
    return items[int(rng.integers(0, len(items)))]


def _fresh_name(states) -> str:
    k = 0
    while f"m{k}" in states:
        k += 1
    return f"m{k}"


def mutate_fsm(
    fa: FiniteAutomaton, rng: np.random.Generator, config: FsmMutationConfig
) -> FiniteAutomaton:
    """One mutation step; edits are attempted in a fixed order (add, delete,
    retarget, flip) so the consumed random stream is reproducible."""
    if not fa.deterministic:
        raise ConfigError("FSM mutation operates on deterministic automata")

    for _ in range(config.max_retries):
        states = sorted(fa.states)
        accepting = set(fa.accepting)
        delta = {key: next(iter(dsts)) for key, dsts in fa.transitions.items()}
        start = fa.start

        if rng.random() < config.p_add_state:
            new = _fresh_name(states)
            for sym in fa.alphabet:
                delta[(new, sym)] = _pick(rng, states)
            # redirect one existing transition into the new state so it can be reached
            key = _pick(rng, sorted(delta))
            if key[0] != new:
                delta[key] = new
            states.append(new)
            states.sort()

        if rng.random() < config.p_delete_state:
            candidates = [s for s in states if s != start]
            if candidates:
                doomed = _pick(rng, candidates)
                states.remove(doomed)
                accepting.discard(doomed)
                replacement = _pick(rng, states)
                delta = {
                    key: (replacement if dst == doomed else dst)
                    for key, dst in delta.items()
                    if key[0] != doomed
                }

        if rng.random() < config.p_retarget:
            key = _pick(rng, sorted(delta))
            others = [s for s in states if s != delta[key]]
            if others:
                delta[key] = _pick(rng, others)

        if rng.random() < config.p_flip_accept:
            state = _pick(rng, states)
            if state in accepting:
                accepting.discard(state)
            else:
                accepting.add(state)

        if states:
            return make_dfa(fa.alphabet, states, start, accepting, delta)
    raise ConfigError("FSM mutation kept producing an automaton with no states")
