"""Classical satisfaction of formulas over a finite universe.

Quantifiers range over the universe's particulars, its registered arbitrary
objects and its registered states. A name not bound by a quantifier or the
environment is read as a constant: a particular atom or an object/state
label such as ``a1@3f2c9e01``.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .errors import SortError, UnboundVariable, UnknownValue
from .formula import (
    BinOp, Connective, Equals, Not, Quantifier, Sort, SortAtom, Truth, ValAtom, Var,
    fresh_name, forall, free_variables, implies, names, substitute, to_text,
)
from .formula_parser import assign_sorts
from .objects import ArbitraryObject, ParticularObject, State
from .universe import Universe, val, value_range

logger = logging.getLogger(__name__)

_SORT_OF_TYPE = {ParticularObject: Sort.PARTICULAR, ArbitraryObject: Sort.ARBITRARY, State: Sort.STATE}


def sort_of(element) -> Sort:
    try:
        return _SORT_OF_TYPE[type(element)]
    except KeyError:
        raise SortError(f"{element!r} is not an element of any sort") from None


def describe(u: Universe, element) -> str:
    """Printable name of a universe element."""
    if isinstance(element, State):
        return u.state_label(element)
    if isinstance(element, ArbitraryObject):
        return element.label
    return str(element)


class Evaluator:
    def __init__(self, u: Universe):
        self.universe = u
        self.domains = {
            Sort.PARTICULAR: tuple(u.particulars),
            Sort.ARBITRARY: tuple(u.objects()),
            Sort.STATE: tuple(u.states()),
        }

    def bind(self, env=None):
        """Normalize an environment; string values are resolved as constants."""
        bound = {}
        for name, value in (env or {}).items():
            if isinstance(value, str):
                element = self.universe.lookup(value)
                if element is None:
                    raise UnknownValue(f"'{value}' (bound to {name}) names nothing in this universe")
                value = element
            bound[name] = value
        return bound

    def constant_sort(self, name):
        """Sort of the element ``name`` denotes in this universe, or None."""
        element = self.universe.lookup(name)
        return sort_of(element) if element is not None else None

    def _resolve(self, var: Var, env):
        if var.name in env:
            element = env[var.name]
        else:
            element = self.universe.lookup(var.name)
            if element is None:
                raise UnboundVariable(f"'{var.name}' is neither bound nor a constant of this universe")
        if var.sort is not None and sort_of(element) is not var.sort:
            raise SortError(f"'{var.name}' has sort {var.sort} but denotes {describe(self.universe, element)}")
        return element

    def _satisfies(self, f, env):
        if isinstance(f, ValAtom):
            a = self._resolve(f.obj, env)
            s = self._resolve(f.state, env)
            p = self._resolve(f.value, env)
            return val(self.universe, a, s) == p
        if isinstance(f, Equals):
            return self._resolve(f.left, env) == self._resolve(f.right, env)
        if isinstance(f, SortAtom):
            return sort_of(self._resolve(f.term, env)) is f.sort
        if isinstance(f, Truth):
            return f.value
        if isinstance(f, Not):
            return not self._satisfies(f.body, env)
        if isinstance(f, BinOp):
            left = self._satisfies(f.left, env)
            if f.op is Connective.AND:
                return left and self._satisfies(f.right, env)
            if f.op is Connective.OR:
                return left or self._satisfies(f.right, env)
            if f.op is Connective.IMPLIES:
                return (not left) or self._satisfies(f.right, env)
            return left == self._satisfies(f.right, env)
        if isinstance(f, Quantifier):
            if f.var.sort is None:
                raise SortError(f"quantified variable '{f.var.name}' has no sort")
            domain = self.domains[f.var.sort]
            holds = (self._satisfies(f.body, {**env, f.var.name: element}) for element in domain)
            return all(holds) if f.kind == "forall" else any(holds)
        raise TypeError(f"not a formula: {f!r}")

    def _check_free(self, f, env):
        for name in free_variables(f):
            if name not in env and self.universe.lookup(name) is None:
                raise UnboundVariable(f"free variable '{name}' has no value")

    def evaluate(self, f, env=None) -> bool:
        env = self.bind(env)
        self._check_free(f, env)
        return self._satisfies(f, env)

    def counterexample(self, f, env=None):
        """A falsifying assignment to the leading universal variables of ``f``.

        Returns None when ``f`` holds and an empty dict for a false formula
        without leading universals.
        """
        env = self.bind(env)
        self._check_free(f, env)
        variables = []
        body = f
        while isinstance(body, Quantifier) and body.kind == "forall":
            variables.append(body.var)
            body = body.body
        for values in product(*(self.domains[var.sort] for var in variables)):
            assignment = {var.name: value for var, value in zip(variables, values)}
            if not self._satisfies(body, {**env, **assignment}):
                return assignment
        return None


def evaluate(u: Universe, f, env=None) -> bool:
    return Evaluator(u).evaluate(f, env)


def counterexample(u: Universe, f, env=None):
    return Evaluator(u).counterexample(f, env)


@dataclass(frozen=True)
class PGAResult:
    obj: ArbitraryObject
    in_every_state: bool
    over_value_range: bool
    naive_error: Optional[str]

    @property
    def surrogates_agree(self):
        return self.in_every_state == self.over_value_range

    def to_dict(self):
        return {
            "object": self.obj.label,
            "left": self.in_every_state,
            "right": self.over_value_range,
            "biconditional": self.surrogates_agree,
            "naive_substitution": self.naive_error or "accepted",
        }


@dataclass(frozen=True)
class PGAReport:
    system_id: str
    formula: str
    variable: str
    results: tuple

    @property
    def naive_rejected(self):
        return all(result.naive_error is not None for result in self.results)

    @property
    def surrogates_agree(self):
        return all(result.surrogates_agree for result in self.results)

    def to_dict(self):
        return {
            "system": self.system_id,
            "formula": self.formula,
            "variable": self.variable,
            "naive_rejected": self.naive_rejected,
            "objects": [result.to_dict() for result in self.results],
        }


def _pga_variable(u, phi, variable):
    free = {name: sort for name, sort in free_variables(phi).items() if u.lookup(name) is None}
    if variable is None:
        if len(free) != 1:
            raise SortError(f"phi must have exactly one free variable, found {sorted(free) or 'none'}")
        variable = next(iter(free))
    if free.get(variable) not in (None, Sort.PARTICULAR):
        raise SortError(f"'{variable}' has sort {free[variable]}; phi must be a particular-sort formula")
    return variable


def check_pga(u: Universe, system, phi, variable: str = None) -> PGAReport:
    """Compare the two surrogate sides of the generic attribution principle.

    For each object a of ``system``: the left side says a's value satisfies
    phi in every state, the right side that every value of a does. The naive
    reading phi(a) puts an arbitrary object where a particular belongs and is
    rejected as a sort error.
    """
    system = u.system(system.canonical_id)
    variable = _pga_variable(u, phi, variable)
    evaluator = Evaluator(u)
    phi = assign_sorts(phi, {variable: Sort.PARTICULAR.value}, evaluator.constant_sort)

    taken = names(phi)
    s_name = fresh_name("s", taken)
    p_name = fresh_name("p", taken | {s_name})
    s_var, p_var = Var(s_name, Sort.STATE), Var(p_name, Sort.PARTICULAR)

    results = []
    for a in system.objects():
        a_var = Var(a.label, Sort.ARBITRARY)
        left_formula = forall(s_var, forall(p_var, implies(ValAtom(a_var, s_var, p_var),
                                                           substitute(phi, variable, p_var))))
        left = evaluator.evaluate(left_formula, {a.label: a})
        right = all(evaluator.evaluate(phi, {variable: p}) for p in sorted(value_range(u, a)))
        try:
            substitute(phi, variable, a_var)
            naive_error = None
        except SortError as error:
            naive_error = str(error)
        logger.debug(f"PGA surrogates for {a.label}: left={left}, right={right}")
        results.append(PGAResult(a, left, right, naive_error))

    report = PGAReport(system.canonical_id, to_text(phi), variable, tuple(results))
    logger.info(f"PGA check on {system.short_id}: surrogates agree={report.surrogates_agree}, "
                f"naive reading rejected={report.naive_rejected}")
    return report
