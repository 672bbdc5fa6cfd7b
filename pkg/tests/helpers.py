"""Fixtures shared by the test modules: the worked examples, random
universes and random well-sorted formulas."""

import os
import random
import sys

from hypothesis import strategies as st

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.abstraction import abstract
from core.formula import (
    BinOp, Connective, Equals, Not, Quantifier, Sort, SortAtom, Truth, ValAtom, Var,
)
from core.objects import validate_pos
from core.universe import Bounds, Universe

PROJECT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
MODELS_DIR = os.path.join(PROJECT_DIR, 'models')

EXAMPLE_ONE = [["p1", "p2"], ["p2", "p3"]]
EXAMPLE_TWO = [["0", "1"], ["1", "0"]]


def example_one():
    """Universe over p1, p2, p3 holding the two-object example; returns (u, system, state_map)."""
    u = Universe(["p1", "p2", "p3"])
    system, state_map = abstract(u, validate_pos(EXAMPLE_ONE))
    return u, system, state_map


def example_two():
    u = Universe(["0", "1"])
    system, state_map = abstract(u, validate_pos(EXAMPLE_TWO))
    return u, system, state_map


def singleton():
    u = Universe(["p"])
    system, state_map = abstract(u, validate_pos([["p"]]))
    return u, system, state_map


def random_blueprint(rng, atoms, max_width=3, max_rows=4):
    width = rng.randint(1, max_width)
    rows = [[rng.choice(atoms) for _ in range(width)] for _ in range(rng.randint(1, max_rows))]
    return validate_pos(rows)


def random_universe(rng, systems=6, bounds=Bounds(2, 2)):
    atoms = ["0", "1", "2"][:rng.randint(1, 3)]
    u = Universe(atoms, bounds)
    for _ in range(systems):
        abstract(u, random_blueprint(rng, atoms))
    return u


@st.composite
def blueprints(draw, atoms=("0", "1", "2"), max_width=3, max_rows=4):
    width = draw(st.integers(min_value=1, max_value=max_width))
    row = st.tuples(*[st.sampled_from(atoms)] * width)
    rows = draw(st.lists(row, min_size=1, max_size=max_rows))
    return validate_pos(rows)


_SORTS = (Sort.PARTICULAR, Sort.ARBITRARY, Sort.STATE)
_CONNECTIVES = tuple(Connective)


def _atom(rng, scope):
    by_sort = {sort: [var for var in scope if var.sort is sort] for sort in _SORTS}
    choices = ["truth", "sort"]
    if all(by_sort.values()):
        choices += ["val", "val"]
    if scope:
        choices.append("equals")
    kind = rng.choice(choices)
    if kind == "val":
        return ValAtom(rng.choice(by_sort[Sort.ARBITRARY]), rng.choice(by_sort[Sort.STATE]),
                       rng.choice(by_sort[Sort.PARTICULAR]))
    if kind == "equals":
        left = rng.choice(scope)
        return Equals(left, rng.choice(by_sort[left.sort]))
    if kind == "sort" and scope:
        var = rng.choice(scope)
        return SortAtom(var.sort, var)
    return Truth(rng.random() < 0.5)


def random_formula(rng, depth=4, scope=(), counter=None):
    """A random well-sorted formula over the variables in ``scope``."""
    counter = counter if counter is not None else [0]
    if depth == 0 or rng.random() < 0.2:
        return _atom(rng, list(scope))
    kind = rng.choice(["not", "binary", "binary", "quantifier"])
    if kind == "not":
        return Not(random_formula(rng, depth - 1, scope, counter))
    if kind == "binary":
        return BinOp(rng.choice(_CONNECTIVES), random_formula(rng, depth - 1, scope, counter),
                     random_formula(rng, depth - 1, scope, counter))
    var = Var(f"x{counter[0]}", rng.choice(_SORTS))
    counter[0] += 1
    return Quantifier(rng.choice(["forall", "exists"]), var,
                      random_formula(rng, depth - 1, tuple(scope) + (var,), counter))


def random_sentence(rng, depth=4):
    """A closed formula that opens with one quantifier of each sort."""
    counter = [0]
    scope = []
    for sort in _SORTS:
        scope.append(Var(f"x{counter[0]}", sort))
        counter[0] += 1
    body = random_formula(rng, depth, tuple(scope), counter)
    for var in reversed(scope):
        body = Quantifier(rng.choice(["forall", "exists"]), var, body)
    return body


def seeded(seed=20240501):
    return random.Random(seed)
