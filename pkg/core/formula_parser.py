"""Concrete syntax for formulas.

    formula   := quantified | formula <-> formula | formula -> formula
               | formula | formula | formula & formula | ~ formula | atom | ( formula )
    quantified:= (forall | exists) name : sort . formula
    atom      := Val(name, name, name) | sort(name) | name = name | true | false
    sort      := P | A | S

Precedence from tightest: ``~``, ``&``, ``|``, ``->`` (right-associative),
``<->``. A quantifier's body extends as far to the right as possible.
Unicode connectives (``¬ ∧ ∨ → ↔ ∀ ∃``) are accepted as well.

Sorts of free names come from the caller's declarations, from the naming
convention below, or are inferred from Val argument positions, sort
predicates and equalities.
"""

import logging
import re

import pyparsing as pp

from .errors import FormulaSyntaxError, SortError
from .formula import (
    BinOp, Connective, Equals, Not, Quantifier, Sort, SortAtom, Truth, ValAtom, Var, names,
)

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

KEYWORDS = {"forall", "exists", "not", "true", "false", "Val", "P", "A", "S"}

_CONNECTIVES = {
    "&": Connective.AND, "∧": Connective.AND,
    "|": Connective.OR, "∨": Connective.OR,
    "->": Connective.IMPLIES, "→": Connective.IMPLIES,
    "<->": Connective.IFF, "↔": Connective.IFF,
}
_QUANTIFIERS = {"forall": "forall", "∀": "forall", "exists": "exists", "∃": "exists"}

# Conventional sorts of undeclared free names: a, b (and object labels such as
# a1@3f2c9e01) are arbitrary objects, s, t states, p, q particulars.
_CONVENTIONAL_NAME = re.compile(r"^([a-z])\d*(@[0-9a-f]+)?$")
_CONVENTIONAL_SORTS = {
    "a": Sort.ARBITRARY, "b": Sort.ARBITRARY,
    "s": Sort.STATE, "t": Sort.STATE,
    "p": Sort.PARTICULAR, "q": Sort.PARTICULAR,
}


def _fold_not(tokens):
    items = tokens[0]
    body = items[-1]
    for _ in items[:-1]:
        body = Not(body)
    return body


def _fold_left(tokens):
    items = tokens[0]
    result = items[0]
    for index in range(1, len(items), 2):
        result = BinOp(_CONNECTIVES[items[index]], result, items[index + 1])
    return result


def _fold_right(tokens):
    items = tokens[0]
    result = items[-1]
    for index in range(len(items) - 2, 0, -2):
        result = BinOp(_CONNECTIVES[items[index]], items[index - 1], result)
    return result


def _build_grammar():
    lpar, rpar, comma, colon, dot = map(pp.Suppress, "(),:.")

    identifier = pp.Regex(r"[A-Za-z0-9_][A-Za-z0-9_@']*").add_condition(
        lambda tokens: tokens[0] not in KEYWORDS, message="reserved word used as a name"
    )
    name = identifier.copy().set_parse_action(lambda tokens: Var(tokens[0]))
    sort = pp.MatchFirst([pp.Keyword(s.value) for s in Sort]).set_parse_action(lambda tokens: Sort(tokens[0]))

    val_atom = (pp.Keyword("Val").suppress() + lpar + name + comma + name + comma + name + rpar)
    val_atom.set_parse_action(lambda tokens: ValAtom(tokens[0], tokens[1], tokens[2]))
    sort_atom = (sort + lpar + name + rpar).set_parse_action(lambda tokens: SortAtom(tokens[0], tokens[1]))
    equality = (name + pp.Suppress("=") + name).set_parse_action(lambda tokens: Equals(tokens[0], tokens[1]))
    truth = (pp.Keyword("true") | pp.Keyword("false")).set_parse_action(lambda tokens: Truth(tokens[0] == "true"))

    formula = pp.Forward()
    quantifier = (pp.Keyword("forall") | pp.Keyword("exists") | pp.Literal("∀") | pp.Literal("∃"))
    quantifier.set_parse_action(lambda tokens: _QUANTIFIERS[tokens[0]])
    quantified = (quantifier + name + colon + sort + dot + formula).set_parse_action(
        lambda tokens: Quantifier(tokens[0], Var(tokens[1].name, tokens[2]), tokens[3])
    )

    operand = quantified | val_atom | sort_atom | truth | equality
    formula <<= pp.infix_notation(operand, [
        (pp.Literal("~") | pp.Literal("¬") | pp.Keyword("not"), 1, pp.OpAssoc.RIGHT, _fold_not),
        (pp.one_of("& ∧"), 2, pp.OpAssoc.LEFT, _fold_left),
        (pp.one_of("| ∨"), 2, pp.OpAssoc.LEFT, _fold_left),
        (pp.one_of("-> →"), 2, pp.OpAssoc.RIGHT, _fold_right),
        (pp.one_of("<-> ↔"), 2, pp.OpAssoc.LEFT, _fold_left),
    ])
    return formula


_GRAMMAR = _build_grammar()


# Sort inference

def _sort_in(name, scope, free):
    return scope[name] if name in scope else free.get(name)


def _seed(name, scope, free):
    if name in scope or name in free:
        return
    match = _CONVENTIONAL_NAME.match(name)
    free[name] = _CONVENTIONAL_SORTS.get(match.group(1)) if match else None


def _constrain(term, expected, scope, free):
    _seed(term.name, scope, free)
    current = _sort_in(term.name, scope, free)
    if current is not None and current != expected:
        raise SortError(f"'{term.name}' has sort {current} where sort {expected} is required")
    if term.name not in scope:
        free[term.name] = expected


def _collect(node, scope, free, equalities):
    if isinstance(node, ValAtom):
        for term, expected in ((node.obj, Sort.ARBITRARY), (node.state, Sort.STATE), (node.value, Sort.PARTICULAR)):
            _constrain(term, expected, scope, free)
    elif isinstance(node, SortAtom):
        _constrain(node.term, node.sort, scope, free)
    elif isinstance(node, Equals):
        for term in (node.left, node.right):
            _seed(term.name, scope, free)
        equalities.append((node.left.name, node.right.name, scope))
    elif isinstance(node, Not):
        _collect(node.body, scope, free, equalities)
    elif isinstance(node, BinOp):
        _collect(node.left, scope, free, equalities)
        _collect(node.right, scope, free, equalities)
    elif isinstance(node, Quantifier):
        _collect(node.body, {**scope, node.var.name: node.var.sort}, free, equalities)


def _propagate(free, equalities):
    changed = True
    while changed:
        changed = False
        for left, right, scope in equalities:
            left_sort, right_sort = _sort_in(left, scope, free), _sort_in(right, scope, free)
            if left_sort is not None and right_sort is not None:
                if left_sort != right_sort:
                    raise SortError(f"equality between '{left}' of sort {left_sort} and '{right}' of sort {right_sort}")
            elif left_sort is not None:
                free[right] = left_sort
                changed = True
            elif right_sort is not None:
                free[left] = right_sort
                changed = True


def _annotate(node, scope, free):
    def term(var):
        return Var(var.name, _sort_in(var.name, scope, free))

    if isinstance(node, ValAtom):
        return ValAtom(term(node.obj), term(node.state), term(node.value))
    if isinstance(node, SortAtom):
        return SortAtom(node.sort, term(node.term))
    if isinstance(node, Equals):
        return Equals(term(node.left), term(node.right))
    if isinstance(node, Truth):
        return node
    if isinstance(node, Not):
        return Not(_annotate(node.body, scope, free))
    if isinstance(node, BinOp):
        return BinOp(node.op, _annotate(node.left, scope, free), _annotate(node.right, scope, free))
    if isinstance(node, Quantifier):
        return Quantifier(node.kind, node.var, _annotate(node.body, {**scope, node.var.name: node.var.sort}, free))
    raise TypeError(f"not a formula: {node!r}")


def assign_sorts(formula, sorts=None, constants=None):
    """Check well-sortedness and give every name its sort.

    ``sorts`` declares free names, e.g. ``{"z": "P"}``. ``constants`` maps a
    name to the sort of the element it denotes, or None; a constant's sort
    takes precedence over the naming convention.
    """
    free = {name: Sort(sort) for name, sort in (sorts or {}).items()}
    if constants is not None:
        for name in sorted(names(formula) - free.keys()):
            sort = constants(name)
            if sort is not None:
                free[name] = sort
    equalities = []
    _collect(formula, {}, free, equalities)
    _propagate(free, equalities)
    unresolved = sorted(name for name, sort in free.items() if sort is None)
    if unresolved:
        raise SortError(f"cannot infer the sort of {', '.join(repr(name) for name in unresolved)}; declare it")
    return _annotate(formula, {}, free)


def parse(text, sorts=None, constants=None):
    try:
        raw = _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseException as error:
        raise FormulaSyntaxError(f"cannot parse formula: {error.msg}", error.loc, error.lineno, error.col) from None
    formula = assign_sorts(raw, sorts, constants)
    logger.debug(f"Parsed formula: {text}")
    return formula
