"""Machine checks of the axioms, lemmas and propositions on finite universes.

Every check returns a :class:`CheckReport`; a failing report carries a
witness that names the objects, states or rows involved.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Optional

from .abstraction import (
    abstract, canonical_form, collapse, matrix_id, systems_equal,
)
from .config import AUDIT_CHECKS, DIAGONAL_BOUND, FORMAT_VERSION, MAX_STATE_POWER
from .enumeration import diagonal_system, enumerate_systems, search_space_size
from .errors import InfeasibleBounds, ParticularsMismatch
from .objects import ArbitraryObject, ParticularObject, State, validate_pos
from .universe import Bounds, Universe, state_space, val

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    passed: bool
    witness: Optional[Any] = None
    bounds_used: Bounds = field(default_factory=Bounds)
    details: str = ""

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {
            "check": self.check_name,
            "verdict": self.verdict,
            "witness": self.witness,
            "bounds": self.bounds_used.to_dict(),
            "details": self.details,
        }


def _report(name, passed, witness=None, bounds=None, details=""):
    report = CheckReport(name, passed, witness, bounds if bounds is not None else Bounds(), details)
    log = logger.info if passed else logger.warning
    log(f"{name}: {report.verdict}{' - ' + details if details else ''}")
    return report


def _atoms(row):
    return [entry.atom for entry in row]


def _state_ref(system, row):
    return {"system": system.short_id, "row": _atoms(row)}


# Axioms

def _axiom_particulars(u):
    return _report("axiom_1_particulars", len(u.particulars) >= 1,
                   None if u.particulars else {"particulars": []}, u.bounds)


def _axiom_disjoint(u):
    elements = list(u.particulars) + u.objects() + u.states()
    kinds = {ParticularObject: 0, ArbitraryObject: 0, State: 0}
    stray = []
    for element in elements:
        matches = [kind for kind in kinds if isinstance(element, kind)]
        if len(matches) != 1:
            stray.append(str(element))
        else:
            kinds[matches[0]] += 1
    return _report("axiom_2_disjoint_categories", not stray,
                   {"elements": stray} if stray else None, u.bounds,
                   f"{kinds[ParticularObject]} particulars, {kinds[ArbitraryObject]} objects, {kinds[State]} states")


def _val_triples(u):
    """The Val relation as stored, gathered from every entry of the universe."""
    for system in u.entries():
        for obj in system.objects():
            for state in system.states():
                yield obj, state, state.row[obj.column_index - 1]


def _axiom_partial_function(u):
    values = {}
    for obj, state, value in _val_triples(u):
        earlier = values.setdefault((obj, state), value)
        if earlier != value:
            return _report("axiom_3_partial_function", False,
                           {"object": obj.label, "state": _state_ref(u.system(state.system_id), state.row),
                            "values": [earlier.atom, value.atom]},
                           u.bounds, "an object takes two values in one state")
    return _report("axiom_3_partial_function", True, bounds=u.bounds,
                   details=f"{len(values)} defined pairs")


def _axiom_set_many_states(u):
    return _report("axiom_4_set_many_states", True, bounds=u.bounds,
                   details="finite model: trivially satisfied")


def _axiom_f_range(u):
    """Every state is F_o(x) for some blueprint o, namely the stored matrix itself."""
    for system in u.entries():
        scratch = Universe(u.particulars, u.bounds)
        blueprint = validate_pos(system.canonical_matrix)
        image, state_map = abstract(scratch, blueprint)
        covered = set(state_map.assignment.values())
        expected = {State(image.canonical_id, row) for row in image.canonical_matrix}
        if image.canonical_id != system.canonical_id or covered != expected:
            return _report("axiom_5_f_range", False,
                           {"system": system.short_id, "recomputed": image.short_id},
                           u.bounds, "a stored state is not the F-image of its own blueprint")
    return _report("axiom_5_f_range", True, bounds=u.bounds)


def _comprehension(u):
    """Relativized existence: every blueprint within bounds abstracts to a
    system satisfying clause 1, and re-abstraction gives the same id."""
    try:
        matrices = enumerate_systems(u.particulars, u.bounds.max_objects, u.bounds.max_states)
    except InfeasibleBounds as error:
        logger.warning(f"Comprehension not instantiated: {error}")
        size = search_space_size(len(u.particulars), u.bounds.max_objects, u.bounds.max_states)
        return True, {"outside_bounds": True, "search_space": size}
    registered = u.system_ids()
    scratch = u.copy()
    virtual = 0
    for matrix in matrices:
        blueprint = validate_pos(matrix)
        system, state_map = abstract(scratch, blueprint)
        again, _ = abstract(scratch, blueprint)
        if again.canonical_id != system.canonical_id:
            return False, {"blueprint": [_atoms(row) for row in matrix]}
        for row in blueprint.rows:
            for alpha, obj in enumerate(state_map.sequence()):
                if val(scratch, obj, state_map(row)) != row[alpha]:
                    return False, {"blueprint": [_atoms(r) for r in matrix], "row": _atoms(row),
                                   "object": obj.label}
        if system.canonical_id not in registered:
            virtual += 1
    return True, {"blueprints": len(matrices), "registered": len(matrices) - virtual, "virtual": virtual}


def _axiom_abstraction(u):
    entries = u.entries()
    # Clause 3: an object of one system takes no value in a state of another.
    for first, second in combinations(entries, 2):
        if first == second:
            continue
        shared = set(first.states()) & set(second.states())
        if shared:
            state = min(shared)
            return _report("axiom_6_abstraction", False,
                           {"systems": [first.short_id, second.short_id],
                            "state": _state_ref(first, state.row)},
                           u.bounds, "clause 3: objects of one system take values in a state of another")
    # Uniqueness: the stored id and matrix are the ones abstraction produces.
    for system in entries:
        if matrix_id(system.canonical_matrix) != system.canonical_id:
            return _report("axiom_6_abstraction", False, {"system": system.short_id},
                           u.bounds, "stored id does not match the canonical matrix")
        if canonical_form(validate_pos(system.canonical_matrix)).matrix != system.canonical_matrix:
            return _report("axiom_6_abstraction", False, {"system": system.short_id},
                           u.bounds, "stored matrix is not canonical")
    ok, witness = _comprehension(u)
    if not ok:
        return _report("axiom_6_abstraction", False, witness, u.bounds, "comprehension within bounds failed")
    if witness.get("outside_bounds"):
        details = f"outside bounds: {witness['search_space']} row sets exceed the search limit"
    else:
        details = f"{witness['virtual']} of {witness['blueprints']} blueprints within bounds not registered"
    return _report("axiom_6_abstraction", True, witness, u.bounds, details)


def _axiom_closure(u):
    for a in u.objects():
        if a not in u.system_of_object(a).objects():
            return _report("axiom_7_closure", False, {"object": a.label}, u.bounds)
    return _report("axiom_7_closure", True, bounds=u.bounds,
                   details=f"{len(u.objects())} objects in {len(u.systems())} systems")


def _axiom_shared_state_space(u):
    for system in u.entries():
        widths = {len(row) for row in system.canonical_matrix}
        if len(widths) != 1 or 0 in widths:
            return _report("axiom_8_shared_state_space", False,
                           {"system": system.short_id, "widths": sorted(widths)},
                           u.bounds, "objects of one system are defined on different states")
    return _report("axiom_8_shared_state_space", True, bounds=u.bounds)


def _axiom_internal_extensionality(u):
    for system in u.entries():
        seen = {}
        for index, column in enumerate(system.columns(), start=1):
            if column in seen:
                return _report("axiom_9_internal_extensionality", False,
                               {"system": system.short_id, "objects": [seen[column], index],
                                "column": _atoms(column)},
                               u.bounds, "two objects agree in every state")
            seen[column] = index
    return _report("axiom_9_internal_extensionality", True, bounds=u.bounds)


def _axiom_external_extensionality(u):
    by_matrix = {}
    for system in u.entries():
        matrix = canonical_form(validate_pos(system.canonical_matrix)).matrix
        other = by_matrix.get(matrix)
        if other is not None and other != system:
            return _report("axiom_10_external_extensionality", False,
                           {"systems": [other.short_id, system.short_id]},
                           u.bounds, "two systems are related by a value-preserving state bijection")
        by_matrix[matrix] = system
    return _report("axiom_10_external_extensionality", True, bounds=u.bounds)


def check_axioms(u: Universe):
    """One report per axiom, relativized to the universe's bounds."""
    return [
        _axiom_particulars(u),
        _axiom_disjoint(u),
        _axiom_partial_function(u),
        _axiom_set_many_states(u),
        _axiom_f_range(u),
        _axiom_abstraction(u),
        _axiom_closure(u),
        _axiom_shared_state_space(u),
        _axiom_internal_extensionality(u),
        _axiom_external_extensionality(u),
    ]


# Lemmas

def check_lemma_isolation(u: Universe) -> CheckReport:
    """State spaces of two systems are disjoint unless the systems are identical."""
    for first, second in combinations(u.entries(), 2):
        if first == second:
            continue
        shared = set(first.states()) & set(second.states())
        if shared:
            state = min(shared)
            return _report("lemma_isolation", False,
                           {"systems": [first.short_id, second.short_id],
                            "state": _state_ref(first, state.row)}, u.bounds)
    return _report("lemma_isolation", True, bounds=u.bounds,
                   details=f"{len(u.entries())} systems pairwise isolated")


def _profile(u, a):
    return frozenset((s, val(u, a, s)) for s in state_space(u, a))


def check_identity_criterion(u: Universe) -> CheckReport:
    """a = b exactly when a and b take the same values in the same states."""
    objects = u.objects()
    profiles = {a: _profile(u, a) for a in objects}
    for a in objects:
        for b in objects:
            if (a == b) != (profiles[a] == profiles[b]):
                return _report("lemma_identity_criterion", False,
                               {"objects": [a.label, b.label], "same_profile": profiles[a] == profiles[b]},
                               u.bounds)
    return _report("lemma_identity_criterion", True, bounds=u.bounds,
                   details=f"{len(objects)} objects compared pairwise")


def check_collapse_lemma(o1, o2) -> CheckReport:
    """Identity of abstractions against canonical forms of the collapses.

    The verdict follows the canonical-form reading. Whether literal equality
    of the collapses agrees is reported alongside, since it diverges for
    blueprints that differ only by a column permutation.
    """
    same_system = systems_equal(o1, o2)
    same_canonical = canonical_form(collapse(o1)).matrix == canonical_form(collapse(o2)).matrix
    literal = collapse(o1) == collapse(o2)
    witness = {
        "systems_equal": same_system,
        "canonical_collapse_equal": same_canonical,
        "literal_collapse_equal": literal,
        "divergence": literal != same_system,
    }
    details = "literal collapse equality disagrees" if literal != same_system else "readings agree"
    return _report("lemma_collapse", same_system == same_canonical, witness, Bounds(), details)


def check_state_space_corollary(u: Universe) -> CheckReport:
    """Identical systems have identical state spaces."""
    for first, second in combinations(u.entries(), 2):
        if set(first.objects()) == set(second.objects()) and set(first.states()) != set(second.states()):
            return _report("corollary_state_spaces", False,
                           {"systems": [first.short_id, second.short_id]}, u.bounds)
    return _report("corollary_state_spaces", True, bounds=u.bounds)


# Propositions

def check_uniform_state_spaces(u: Universe) -> CheckReport:
    for system in u.systems():
        spaces = {a: state_space(u, a) for a in system.objects()}
        reference = set(system.states())
        for a, space in spaces.items():
            if space != reference:
                return _report("uniform_state_spaces", False,
                               {"system": system.short_id, "object": a.label}, u.bounds)
    return _report("uniform_state_spaces", True, bounds=u.bounds)


def check_state_counts(u: Universe, blueprints) -> CheckReport:
    """|o| = |ST(a)| for every object abstracted from each blueprint."""
    for o in blueprints:
        _, state_map = abstract(u, o)
        for a in set(state_map.sequence()):
            if len(state_space(u, a)) != len(o):
                return _report("state_counts", False,
                               {"blueprint": o.to_atoms(), "object": a.label,
                                "rows": len(o), "states": len(state_space(u, a))}, u.bounds)
    return _report("state_counts", True, bounds=u.bounds)


def check_object_bound(u: Universe, blueprints) -> CheckReport:
    """|A(o)| <= l(o); blueprints with duplicate columns witness strict inequality."""
    strict = []
    for o in blueprints:
        system, _ = abstract(u, o)
        if system.object_count > o.width:
            return _report("object_bound", False,
                           {"blueprint": o.to_atoms(), "objects": system.object_count, "width": o.width},
                           u.bounds)
        if system.object_count < o.width:
            strict.append(o.to_atoms())
    return _report("object_bound", True, {"strict": strict} if strict else None, u.bounds,
                   f"{len(strict)} blueprints with fewer objects than columns")


def check_f_injective(u: Universe, blueprints=()) -> CheckReport:
    """F_o is one-to-one for every blueprint; the stored matrices serve when none are given.

    Distinct but equivalent blueprints share their images, so the two-place
    F is not injective jointly in (o, x); only the per-blueprint map is checked.
    """
    sources = list(blueprints) or [validate_pos(system.canonical_matrix) for system in u.systems()]
    shared_images = 0
    seen = {}
    for o in sources:
        _, state_map = abstract(u, o)
        images = list(state_map.assignment.values())
        if len(set(images)) != len(images):
            return _report("f_injective", False, {"blueprint": o.to_atoms()}, u.bounds)
        for row, state in state_map.assignment.items():
            owner = seen.setdefault(state, o)
            if owner != o:
                shared_images += 1
    return _report("f_injective", True, bounds=u.bounds,
                   details=f"per-blueprint injective; {shared_images} images shared across equivalent blueprints")


def check_max_states(u: Universe, m: int) -> CheckReport:
    """The largest state space of a system with exactly m objects is n^m."""
    n = len(u.particulars)
    limit = n ** m
    if m < 1 or limit > MAX_STATE_POWER:
        raise InfeasibleBounds(f"n^m = {limit} exceeds the configured limit {MAX_STATE_POWER}")
    matrices = [matrix for matrix in enumerate_systems(u.particulars, m, limit) if len(matrix[0]) == m]
    largest = max((len(matrix) for matrix in matrices), default=0)
    bounds = Bounds(m, limit)
    return _report("max_states", largest == limit,
                   {"n": n, "m": m, "max_states": largest, "expected": limit}, bounds,
                   f"{len(matrices)} systems with {m} objects")


def check_categoricity(u1: Universe, u2: Universe) -> CheckReport:
    """The finite systems of two universes over the same particulars coincide."""
    if u1.particulars != u2.particulars:
        raise ParticularsMismatch("universes have different particular objects")
    ids1, ids2 = u1.system_ids(), u2.system_ids()
    extra = sorted(ids1 ^ ids2)
    witness = {"only_first": sorted(ids1 - ids2), "only_second": sorted(ids2 - ids1)} if extra else None
    return _report("categoricity", not extra, witness, u1.bounds,
                   f"{len(ids1)} and {len(ids2)} systems")


def check_singleton_uniqueness(bounds: Bounds = None) -> CheckReport:
    """Over one particular object there is exactly one arbitrary object."""
    bounds = bounds if bounds is not None else Bounds()
    matrices = enumerate_systems(["p"], bounds.max_objects, bounds.max_states)
    objects = sum(len(matrix[0]) for matrix in matrices)
    return _report("singleton_uniqueness", len(matrices) == 1 and objects == 1,
                   {"systems": len(matrices), "objects": objects}, bounds)


def check_diagonal_growth(k_max: int = DIAGONAL_BOUND) -> CheckReport:
    """Diagonal systems of size 1..k_max give k objects, k states, pairwise distinct systems."""
    u = Universe(["0", "1"], Bounds(k_max, k_max))
    seen = []
    for k in range(1, k_max + 1):
        system, _ = abstract(u, diagonal_system(k))
        if system.object_count != k or system.state_count != k or system.canonical_id in seen:
            return _report("diagonal_growth", False,
                           {"k": k, "objects": system.object_count, "states": system.state_count},
                           u.bounds)
        seen.append(system.canonical_id)
    return _report("diagonal_growth", len(u.systems()) == k_max, {"sizes": list(range(1, k_max + 1))}, u.bounds)


AUDITS = {
    "axioms": check_axioms,
    "isolation": check_lemma_isolation,
    "identity_criterion": check_identity_criterion,
    "uniform_state_spaces": check_uniform_state_spaces,
    "state_space_corollary": check_state_space_corollary,
    "f_injective": check_f_injective,
}


def run_audit(u: Universe, checks=None):
    """Run the configured universe-level checks in order."""
    reports = []
    for name in checks if checks is not None else AUDIT_CHECKS:
        result = AUDITS[name](u)
        reports.extend(result if isinstance(result, list) else [result])
    return reports


def reports_to_dict(reports):
    return {
        "format": FORMAT_VERSION,
        "passed": all(report.passed for report in reports),
        "reports": [report.to_dict() for report in reports],
    }
