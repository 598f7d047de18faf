"""Plain-text automaton descriptions: one declaration per line, `#` comments.

Common declarations::

    kind dfa|nfa|pda|tm
    alphabet a b
    state q0 q1 ...
    start q0
    accept q1 ...

Transitions depend on the kind (`eps` denotes the empty input):

    trans q0 a q1                      # dfa/nfa:  from symbol to
    trans q0 a Z q1 push A Z           # pda:      from symbol stacktop to [push new-top..]
    trans q0 a q1 X R                  # tm:       from read to write move

PDA descriptions additionally need `stackalphabet` and `stackstart`; TMs may
declare `reject`, `blank` (default `_`), and `tapealphabet` (default: input
alphabet plus blank plus every read/written symbol).

Malformed lines raise TextFormatError with their line number.
"""

from __future__ import annotations

from .errors import TextFormatError
from .words import EPSILON, Alphabet
from .automata import FiniteAutomaton, PushdownAutomaton, TuringMachine

_KINDS = ("dfa", "nfa", "pda", "tm")
_EPS_TOKEN = "eps"


def load_automaton(path) -> "FiniteAutomaton | PushdownAutomaton | TuringMachine":
    with open(path, "r", encoding="utf-8") as handle:
        return parse_automaton(handle.read())


def parse_automaton(text: str) -> "FiniteAutomaton | PushdownAutomaton | TuringMachine":
    decl: dict[str, list] = {
        "state": [],
        "accept": [],
        "reject": [],
        "trans": [],
        "alphabet": [],
        "stackalphabet": [],
        "tapealphabet": [],
    }
    single: dict[str, tuple[int, str]] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key, args = tokens[0], tokens[1:]
        if key in ("kind", "start", "stackstart", "blank"):
            if not len(args) == 1:
                raise TextFormatError(line_no, f"'{key}' takes exactly one argument")
            if key in single:
                raise TextFormatError(line_no, f"duplicate '{key}' declaration")
            single[key] = (line_no, args[0])
        elif key in ("state", "accept", "reject", "alphabet", "stackalphabet", "tapealphabet"):
            if not args:
                raise TextFormatError(line_no, f"'{key}' needs at least one argument")
            decl[key].extend(args)
        elif key == "trans":
            decl["trans"].append((line_no, args))
        else:
            raise TextFormatError(line_no, f"unknown declaration {key!r}")

    if "kind" not in single:
        raise TextFormatError(1, "missing 'kind' declaration")
    kind_line, kind = single["kind"]
    if kind not in _KINDS:
        raise TextFormatError(kind_line, f"kind must be one of {_KINDS}, got {kind!r}")
    if not decl["alphabet"]:
        raise TextFormatError(kind_line, "missing 'alphabet' declaration")
    if "start" not in single:
        raise TextFormatError(kind_line, "missing 'start' declaration")
    if not decl["state"]:
        raise TextFormatError(kind_line, "missing 'state' declarations")

    alphabet = Alphabet(tuple(decl["alphabet"]))
    states = decl["state"]
    start = single["start"][1]

    if kind in ("dfa", "nfa"):
        return _build_fa(kind, alphabet, states, start, decl)
    if kind == "pda":
        return _build_pda(alphabet, states, start, decl, single)
    return _build_tm(alphabet, states, start, decl, single)


def _symbol(token: str) -> str:
    return EPSILON if token == _EPS_TOKEN else token


def _build_fa(kind, alphabet, states, start, decl):
    delta: dict[tuple[str, str], set] = {}
    for line_no, args in decl["trans"]:
        if len(args) != 3:
            raise TextFormatError(line_no, "fa transition needs: trans FROM SYMBOL TO")
        src, sym, dst = args
        if kind == "dfa" and sym == _EPS_TOKEN:
            raise TextFormatError(line_no, "dfa may not have epsilon transitions")
        delta.setdefault((src, _symbol(sym)), set()).add(dst)
    transitions = {key: frozenset(dsts) for key, dsts in delta.items()}
    return FiniteAutomaton(
        alphabet,
        frozenset(states),
        start,
        frozenset(decl["accept"]),
        transitions,
        deterministic=(kind == "dfa"),
    )


def _build_pda(alphabet, states, start, decl, single):
    if not decl["stackalphabet"]:
        raise TextFormatError(1, "pda needs a 'stackalphabet' declaration")
    if "stackstart" not in single:
        raise TextFormatError(1, "pda needs a 'stackstart' declaration")
    delta: dict[tuple[str, str, str], set] = {}
    for line_no, args in decl["trans"]:
        if len(args) < 4:
            raise TextFormatError(
                line_no, "pda transition needs: trans FROM SYMBOL STACKTOP TO [push SYMS..]"
            )
        src, sym, top, dst = args[:4]
        push: tuple[str, ...] = ()
        if len(args) > 4:
            if args[4] != "push":
                raise TextFormatError(line_no, f"expected 'push', got {args[4]!r}")
            push = tuple(args[5:])
        delta.setdefault((src, _symbol(sym), top), set()).add((dst, push))
    transitions = {key: frozenset(moves) for key, moves in delta.items()}
    return PushdownAutomaton(
        alphabet,
        frozenset(states),
        start,
        frozenset(decl["accept"]),
        frozenset(decl["stackalphabet"]),
        single["stackstart"][1],
        transitions,
    )


def _build_tm(alphabet, states, start, decl, single):
    blank = single.get("blank", (0, "_"))[1]
    transitions: dict[tuple[str, str], tuple[str, str, str]] = {}
    for line_no, args in decl["trans"]:
        if len(args) != 5:
            raise TextFormatError(line_no, "tm transition needs: trans FROM READ TO WRITE MOVE")
        src, read, dst, write, move = args
        if move not in ("L", "R"):
            raise TextFormatError(line_no, f"tm head move must be L or R, got {move!r}")
        if (src, read) in transitions:
            raise TextFormatError(line_no, f"duplicate tm transition for ({src}, {read})")
        transitions[(src, read)] = (dst, write, move)
    tape_alphabet = set(decl["tapealphabet"])
    if not tape_alphabet:
        tape_alphabet = set(alphabet.symbols) | {blank}
        for (_, read), (_, write, _) in transitions.items():
            tape_alphabet.update((read, write))
    return TuringMachine(
        alphabet,
        frozenset(states),
        start,
        frozenset(decl["accept"]),
        frozenset(decl["reject"]),
        frozenset(tape_alphabet),
        blank,
        transitions,
    )
