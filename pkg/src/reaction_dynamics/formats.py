"""Text formats: reaction systems, states, DIMACS-style formulas and Turing machines.

Reaction-system documents (``.rs``)::

    # comment
    background: 0_a 1_a 0_b 1_b 0_out 1_out
    0_a 0_b / . -> 1_out

Each reaction is ``R / I -> P`` with ``.`` for an empty set. Without a
``background:`` header entities are numbered in order of first appearance.
Serialization always writes the header, and names within a set in ordinal order.
"""
from __future__ import annotations

import re
from typing import Optional

from .core import (
    ENTITY_NAME,
    EntitySet,
    EntityTable,
    Reaction,
    ReactionSystem,
    ReactionSystemError,
)
from .reductions.formulas import Clause, Formula, FormulaMode, QbfInstance
from .reductions.turing import ConstructionError, Direction, Transition, TuringMachine

EMPTY = "."
REACTION_LINE = re.compile(r"^(?P<r>[^/>]*)/(?P<i>[^/>]*)->(?P<p>[^/>]*)$")
TM_DIRECTIVES = ("states", "alphabet", "blank", "init", "accept")


class ParseError(ReactionSystemError, ValueError):
    """Raised when a document is malformed; ``line`` is 1-based, 0 for the whole document."""

    def __init__(self, message: str, line: int = 0) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((number, stripped))
    return lines


def _names(field: str, number: int) -> list[str]:
    tokens = field.split()
    if tokens == [EMPTY]:
        return []
    if not tokens:
        raise ParseError(f"empty set must be written as '{EMPTY}'", number)
    for token in tokens:
        if not ENTITY_NAME.fullmatch(token):
            raise ParseError(f"invalid entity name {token!r}", number)
    return tokens


# --------------------------------------------------------------------------- reaction systems


def parse_rs(text: str, max_background: Optional[int] = None) -> ReactionSystem:
    background: Optional[list[str]] = None
    triples: list[tuple[int, list[str], list[str], list[str]]] = []
    for number, line in _content_lines(text):
        if line.startswith("background:"):
            if background is not None or triples:
                raise ParseError("background must be declared once, before any reaction", number)
            background = line[len("background:") :].split()
            seen: set[str] = set()
            for name in background:
                if not ENTITY_NAME.fullmatch(name):
                    raise ParseError(f"invalid entity name {name!r}", number)
                if name in seen:
                    raise ParseError(f"duplicate background entity {name!r}", number)
                seen.add(name)
            continue
        match = REACTION_LINE.match(line)
        if match is None:
            raise ParseError(f"expected 'R / I -> P', got {line!r}", number)
        reactants, inhibitors, products = (_names(match[g], number) for g in "rip")
        triples.append((number, reactants, inhibitors, products))

    if background is None:
        background = list(
            dict.fromkeys(name for _, r, i, p in triples for name in (*r, *i, *p))
        )
    else:
        declared = set(background)
        for number, r, i, p in triples:
            for name in (*r, *i, *p):
                if name not in declared:
                    raise ParseError(f"entity {name!r} is not in the background", number)
    table = EntityTable.from_names(background, max_background=max_background)
    reactions = tuple(
        Reaction(table.set_of(r), table.set_of(i), table.set_of(p)) for _, r, i, p in triples
    )
    return ReactionSystem(table, reactions)


def _set_text(system: ReactionSystem, entities: EntitySet) -> str:
    names = system.names_of(entities)
    return " ".join(names) if names else EMPTY


def serialize_rs(system: ReactionSystem) -> str:
    lines = ["background: " + " ".join(system.table.names)]
    for reaction in system.reactions:
        lines.append(
            f"{_set_text(system, reaction.reactants)} / {_set_text(system, reaction.inhibitors)}"
            f" -> {_set_text(system, reaction.products)}"
        )
    return "\n".join(lines) + "\n"


def parse_state(text: str, table: EntityTable) -> EntitySet:
    """``a,b``, ``{a, b}`` or ``a b``; the empty string and ``{}`` are ∅."""

    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    names = [token for token in re.split(r"[,\s]+", body) if token]
    return table.set_of(names)


def parse_word(text: str) -> list[str]:
    """Tape input: space/comma separated symbols, or one character per symbol."""

    if re.search(r"[,\s]", text.strip()):
        return [token for token in re.split(r"[,\s]+", text.strip()) if token]
    return list(text.strip())


# --------------------------------------------------------------------------- formulas


def _ints(line: str, number: int) -> list[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", number) from None


def _header(line: str, number: int, modes: tuple[str, ...]) -> tuple[FormulaMode, int, int]:
    parts = line.split()
    if len(parts) != 4 or parts[0] != "p" or parts[1] not in modes:
        raise ParseError(f"expected header 'p {'|'.join(modes)} <vars> <clauses>'", number)
    try:
        n, m = int(parts[2]), int(parts[3])
    except ValueError:
        raise ParseError("header counts must be integers", number) from None
    if n < 0 or m < 0:
        raise ParseError("header counts must be non-negative", number)
    return parts[1], n, m  # type: ignore[return-value]


def _clauses(lines: list[tuple[int, str]], n: int, m: int) -> list[Clause]:
    clauses: list[Clause] = []
    pending: list[int] = []
    last = 0
    for number, line in lines:
        last = number
        for literal in _ints(line, number):
            if literal == 0:
                clauses.append(Clause.from_literals(pending))
                pending = []
                continue
            if abs(literal) > n:
                raise ParseError(f"variable {abs(literal)} out of range 1..{n}", number)
            pending.append(literal)
    if pending:
        raise ParseError("last clause is not terminated by 0", last)
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses, found {len(clauses)}", last)
    return clauses


def _dimacs_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        lines.append((number, line))
    return lines


def _formula(text: str, modes: tuple[str, ...]) -> Formula:
    lines = _dimacs_lines(text)
    if not lines:
        raise ParseError("missing 'p' header")
    mode, n, m = _header(lines[0][1], lines[0][0], modes)
    return Formula(mode, n, tuple(_clauses(lines[1:], n, m)))


def parse_cnf(text: str) -> Formula:
    return _formula(text, ("cnf",))


def parse_dnf(text: str) -> Formula:
    return _formula(text, ("dnf",))


def parse_formula(text: str) -> Formula:
    return _formula(text, ("cnf", "dnf"))


def parse_qbf(text: str) -> QbfInstance:
    """QDIMACS-style ∃∀ instance: header, one ``e`` line, one ``a`` line, DNF body."""

    lines = _dimacs_lines(text)
    if not lines:
        raise ParseError("missing 'p' header")
    mode, n, m = _header(lines[0][1], lines[0][0], ("dnf",))
    blocks: dict[str, list[int]] = {}
    body_start = 1
    for number, line in lines[1:]:
        kind = line.split()[0]
        if kind not in ("e", "a"):
            break
        if kind in blocks:
            raise ParseError(f"more than one '{kind}' block", number)
        if kind == "a" and "e" not in blocks:
            raise ParseError("the 'e' block must come before the 'a' block", number)
        values = _ints(line[1:], number)
        if not values or values[-1] != 0:
            raise ParseError("quantifier block must end with 0", number)
        for v in values[:-1]:
            if not 1 <= v <= n:
                raise ParseError(f"variable {v} out of range 1..{n}", number)
        blocks[kind] = values[:-1]
        body_start += 1
    if set(blocks) != {"e", "a"}:
        raise ParseError("expected one 'e' block followed by one 'a' block")
    matrix = Formula(mode, n, tuple(_clauses(lines[body_start:], n, m)))
    try:
        return QbfInstance(tuple(blocks["e"]), tuple(blocks["a"]), matrix)
    except ConstructionError as exc:
        raise ParseError(str(exc)) from exc


def serialize_formula(formula: Formula) -> str:
    lines = [f"p {formula.mode} {formula.n} {len(formula.clauses)}"]
    lines += [" ".join(str(v) for v in clause.literals() + [0]) for clause in formula.clauses]
    return "\n".join(lines) + "\n"


def serialize_qbf(instance: QbfInstance) -> str:
    header, *body = serialize_formula(instance.matrix).splitlines()
    quantifiers = [
        "e " + " ".join(str(v) for v in [*instance.exists, 0]),
        "a " + " ".join(str(v) for v in [*instance.forall, 0]),
    ]
    return "\n".join([header, *quantifiers, *body]) + "\n"


# --------------------------------------------------------------------------- machines


def parse_tm(text: str) -> TuringMachine:
    directives: dict[str, list[str]] = {}
    rules: list[Transition] = []
    seen: dict[tuple[str, str], int] = {}
    last = 0
    for number, line in _content_lines(text):
        last = number
        key, colon, rest = line.partition(":")
        if colon and key.strip() in TM_DIRECTIVES:
            name = key.strip()
            if name in directives:
                raise ParseError(f"duplicate '{name}:' directive", number)
            directives[name] = rest.split()
            continue
        parts = line.split()
        if len(parts) != 6 or parts[2] != "->":
            raise ParseError(f"expected 'q a -> q2 b D', got {line!r}", number)
        state, symbol, _, target, write, move = parts
        try:
            direction = Direction.from_str(move)
        except ValueError as exc:
            raise ParseError(str(exc), number) from None
        if (state, symbol) in seen:
            earlier = seen[(state, symbol)]
            message = f"nondeterministic: {state} {symbol} first defined on line {earlier}"
            raise ParseError(message, number)
        seen[(state, symbol)] = number
        rules.append(Transition(state, symbol, target, write, direction))

    for name in TM_DIRECTIVES:
        if name not in directives:
            raise ParseError(f"missing '{name}:' directive")
    for name in ("blank", "init", "accept"):
        if len(directives[name]) != 1:
            raise ParseError(f"'{name}:' takes exactly one name")
    try:
        return TuringMachine(
            states=tuple(directives["states"]),
            alphabet=tuple(directives["alphabet"]),
            blank=directives["blank"][0],
            initial=directives["init"][0],
            accept=directives["accept"][0],
            transitions=tuple(rules),
        )
    except ConstructionError as exc:
        raise ParseError(str(exc), last) from exc


def serialize_tm(machine: TuringMachine) -> str:
    lines = [
        "states: " + " ".join(machine.states),
        "alphabet: " + " ".join(machine.alphabet),
        f"blank: {machine.blank}",
        f"init: {machine.initial}",
        f"accept: {machine.accept}",
    ]
    lines += [str(rule) for rule in machine.transitions]
    return "\n".join(lines) + "\n"
