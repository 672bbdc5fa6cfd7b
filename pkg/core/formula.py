"""Abstract syntax of the three-sorted formula language.

Terms are sorted names; atoms are ``Val(a, s, p)``, same-sort equality and
the sort predicates ``P``, ``A``, ``S``. The printer emits the ASCII concrete
syntax accepted by :mod:`core.formula_parser`.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .errors import SortError


class Sort(Enum):
    PARTICULAR = "P"
    ARBITRARY = "A"
    STATE = "S"

    def __str__(self):
        return self.value


class Connective(Enum):
    AND = "&"
    OR = "|"
    IMPLIES = "->"
    IFF = "<->"


@dataclass(frozen=True)
class Var:
    name: str
    sort: Optional[Sort] = None


@dataclass(frozen=True)
class ValAtom:
    obj: Var
    state: Var
    value: Var


@dataclass(frozen=True)
class Equals:
    left: Var
    right: Var


@dataclass(frozen=True)
class SortAtom:
    sort: Sort
    term: Var


@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class BinOp:
    op: Connective
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quantifier:
    kind: str  # "forall" or "exists"
    var: Var
    body: "Formula"


Formula = Union[ValAtom, Equals, SortAtom, Truth, Not, BinOp, Quantifier]

# Binding strength; higher binds tighter.
_PRECEDENCE = {Connective.IFF: 1, Connective.IMPLIES: 2, Connective.OR: 3, Connective.AND: 4}
_NOT_PRECEDENCE = 5
_ATOM_PRECEDENCE = 6


def forall(var, body):
    return Quantifier("forall", var, body)


def exists(var, body):
    return Quantifier("exists", var, body)


def conj(left, right):
    return BinOp(Connective.AND, left, right)


def disj(left, right):
    return BinOp(Connective.OR, left, right)


def implies(left, right):
    return BinOp(Connective.IMPLIES, left, right)


def iff(left, right):
    return BinOp(Connective.IFF, left, right)


def _precedence(f):
    if isinstance(f, BinOp):
        return _PRECEDENCE[f.op]
    if isinstance(f, Not):
        return _NOT_PRECEDENCE
    if isinstance(f, Quantifier):
        return 0
    return _ATOM_PRECEDENCE


def _wrap(f, needed):
    text = to_text(f)
    # Quantifier bodies reach as far right as possible, so a quantifier
    # operand is always parenthesized.
    if isinstance(f, Quantifier) or _precedence(f) < needed:
        return f"({text})"
    return text


def to_text(f: Formula) -> str:
    if isinstance(f, ValAtom):
        return f"Val({f.obj.name},{f.state.name},{f.value.name})"
    if isinstance(f, Equals):
        return f"{f.left.name} = {f.right.name}"
    if isinstance(f, SortAtom):
        return f"{f.sort.value}({f.term.name})"
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return f"~{_wrap(f.body, _NOT_PRECEDENCE)}"
    if isinstance(f, BinOp):
        own = _PRECEDENCE[f.op]
        if f.op is Connective.IMPLIES:
            left, right = _wrap(f.left, own + 1), _wrap(f.right, own)
        else:
            left, right = _wrap(f.left, own), _wrap(f.right, own + 1)
        return f"{left} {f.op.value} {right}"
    if isinstance(f, Quantifier):
        return f"{f.kind} {f.var.name}:{f.var.sort.value}. {to_text(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def free_variables(f: Formula, bound=frozenset()):
    """Free names with their sorts, in order of first occurrence."""
    found = {}

    def visit(node, bound):
        if isinstance(node, ValAtom):
            terms = (node.obj, node.state, node.value)
        elif isinstance(node, Equals):
            terms = (node.left, node.right)
        elif isinstance(node, SortAtom):
            terms = (node.term,)
        elif isinstance(node, Truth):
            terms = ()
        elif isinstance(node, Not):
            visit(node.body, bound)
            return
        elif isinstance(node, BinOp):
            visit(node.left, bound)
            visit(node.right, bound)
            return
        elif isinstance(node, Quantifier):
            visit(node.body, bound | {node.var.name})
            return
        else:
            raise TypeError(f"not a formula: {node!r}")
        for term in terms:
            if term.name not in bound:
                found.setdefault(term.name, term.sort)

    visit(f, frozenset(bound))
    return found


def substitute(f: Formula, name: str, term: Var) -> Formula:
    """Replace the free occurrences of ``name`` by ``term``.

    Substitution is sort-preserving: a term of another sort is a SortError.
    """
    def replace(var):
        if var.name != name:
            return var
        if var.sort is not None and term.sort is not None and var.sort != term.sort:
            raise SortError(
                f"cannot substitute {term.name} of sort {term.sort} for {name} of sort {var.sort}"
            )
        return term

    def visit(node):
        if isinstance(node, ValAtom):
            return ValAtom(replace(node.obj), replace(node.state), replace(node.value))
        if isinstance(node, Equals):
            return Equals(replace(node.left), replace(node.right))
        if isinstance(node, SortAtom):
            return SortAtom(node.sort, replace(node.term))
        if isinstance(node, Truth):
            return node
        if isinstance(node, Not):
            return Not(visit(node.body))
        if isinstance(node, BinOp):
            return BinOp(node.op, visit(node.left), visit(node.right))
        if isinstance(node, Quantifier):
            if node.var.name == name:
                return node
            return Quantifier(node.kind, node.var, visit(node.body))
        raise TypeError(f"not a formula: {node!r}")

    return visit(f)


def names(f: Formula):
    """Every name occurring in ``f``, free or bound."""
    if isinstance(f, ValAtom):
        return {f.obj.name, f.state.name, f.value.name}
    if isinstance(f, Equals):
        return {f.left.name, f.right.name}
    if isinstance(f, SortAtom):
        return {f.term.name}
    if isinstance(f, Truth):
        return set()
    if isinstance(f, Not):
        return names(f.body)
    if isinstance(f, BinOp):
        return names(f.left) | names(f.right)
    if isinstance(f, Quantifier):
        return names(f.body) | {f.var.name}
    raise TypeError(f"not a formula: {f!r}")


def fresh_name(base: str, taken) -> str:
    candidate, index = base, 0
    while candidate in taken:
        index += 1
        candidate = f"{base}{index}"
    return candidate
