"""The abstraction operator.

A particular object system is a blueprint; abstracting it yields an
arbitrary object system whose identity is decided by a canonical form:

* collapse removes later duplicate columns (internal extensionality);
* the canonical matrix is the lexicographically least row-sorted matrix over
  all column permutations of the collapse (external extensionality).

Two blueprints abstract to one and the same system exactly when their
canonical matrices coincide. The canonical id is the SHA-256 of the
canonical matrix serialization, so it is stable across runs.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from itertools import permutations
from types import MappingProxyType
from typing import Mapping, Tuple

from .config import FORMAT_VERSION, ID_PREFIX_LENGTH, MAX_CANONICAL_WIDTH
from .errors import InfeasibleBounds, RowNotInSystem, UnknownValue
from .objects import (
    ArbitraryObject, ParticularObjectSystem, Row, State, make_row, validate_pos,
)

logger = logging.getLogger(__name__)

Matrix = Tuple[Row, ...]


def matrix_id(matrix: Matrix) -> str:
    payload = {"format": FORMAT_VERSION, "rows": [[entry.atom for entry in row] for row in matrix]}
    text = json.dumps(payload, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ArbitraryObjectSystem:
    canonical_id: str
    canonical_matrix: Matrix

    @property
    def object_count(self):
        return len(self.canonical_matrix[0]) if self.canonical_matrix else 0

    @property
    def state_count(self):
        return len(self.canonical_matrix)

    @property
    def short_id(self):
        return self.canonical_id[:ID_PREFIX_LENGTH]

    def objects(self):
        return tuple(ArbitraryObject(self.canonical_id, index) for index in range(1, self.object_count + 1))

    def states(self):
        return tuple(State(self.canonical_id, row) for row in self.canonical_matrix)

    def column(self, column_index):
        return tuple(row[column_index - 1] for row in self.canonical_matrix)

    def columns(self):
        return [self.column(index) for index in range(1, self.object_count + 1)]

    def sort_key(self):
        return (self.object_count, self.state_count, self.canonical_matrix)

    def to_dict(self):
        return {
            "format": FORMAT_VERSION,
            "id": self.canonical_id,
            "rows": [[entry.atom for entry in row] for row in self.canonical_matrix],
        }


def system_from_matrix(matrix) -> ArbitraryObjectSystem:
    rows = tuple(make_row(row) for row in matrix)
    return ArbitraryObjectSystem(matrix_id(rows), rows)


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical matrix plus the bookkeeping that maps source rows onto it.

    ``kept_columns[i]`` is the source position of the i-th collapsed column;
    ``representatives[alpha]`` is the collapsed column that source position
    alpha duplicates; ``column_order[j]`` is the collapsed column shown at
    canonical position j.
    """
    matrix: Matrix
    column_order: Tuple[int, ...]
    kept_columns: Tuple[int, ...]
    representatives: Tuple[int, ...] = field(compare=False, repr=False)

    @property
    def canonical_id(self):
        return matrix_id(self.matrix)

    @property
    def object_count(self):
        return len(self.column_order)

    def image(self, row: Row) -> Row:
        return tuple(row[self.kept_columns[index]] for index in self.column_order)

    def source_to_canonical(self):
        """Map every source column position to a 1-based canonical column index."""
        position_of = {collapsed: position + 1 for position, collapsed in enumerate(self.column_order)}
        return tuple(position_of[collapsed] for collapsed in self.representatives)

    def to_dict(self):
        return {
            "format": FORMAT_VERSION,
            "rows": [[entry.atom for entry in row] for row in self.matrix],
            "column_order": [self.kept_columns[index] + 1 for index in self.column_order],
        }


def _kept_columns(o: ParticularObjectSystem):
    """Source positions of the first occurrence of every distinct column, and
    for each source position the index of its first occurrence among them."""
    kept, representative, seen = [], [], {}
    for alpha, column in enumerate(o.columns()):
        if column not in seen:
            seen[column] = len(kept)
            kept.append(alpha)
        representative.append(seen[column])
    return tuple(kept), tuple(representative)


def collapse(o: ParticularObjectSystem) -> ParticularObjectSystem:
    """Delete every later duplicate of an earlier column."""
    kept, _ = _kept_columns(o)
    if len(kept) == o.width:
        return o
    logger.debug(f"Collapsing width {o.width} to {len(kept)} columns")
    return validate_pos(tuple(row[alpha] for alpha in kept) for row in o.rows)


def canonical_form(o: ParticularObjectSystem) -> CanonicalForm:
    kept, representative = _kept_columns(o)
    width = len(kept)
    if width > MAX_CANONICAL_WIDTH:
        raise InfeasibleBounds(
            f"canonical form of width {width} exceeds the configured maximum {MAX_CANONICAL_WIDTH}"
        )
    collapsed_rows = [tuple(row[alpha] for alpha in kept) for row in o.rows]

    best_matrix, best_order = None, None
    for order in permutations(range(width)):
        candidate = tuple(sorted(tuple(row[index] for index in order) for row in collapsed_rows))
        if best_matrix is None or candidate < best_matrix:
            best_matrix, best_order = candidate, order
    logger.debug(f"Canonical column order {best_order} over {len(collapsed_rows)} rows")
    return CanonicalForm(best_matrix, best_order, kept, representative)


def systems_equal(o1: ParticularObjectSystem, o2: ParticularObjectSystem) -> bool:
    return canonical_form(o1).matrix == canonical_form(o2).matrix


@dataclass(frozen=True)
class StateMap:
    """F_o: the one-to-one map from the rows of ``source`` onto the states of
    the abstracted system."""
    source: ParticularObjectSystem
    system_id: str
    assignment: Mapping[Row, State]
    column_positions: Tuple[int, ...]

    def __call__(self, row) -> State:
        key = make_row(row)
        try:
            return self.assignment[key]
        except KeyError:
            raise RowNotInSystem(f"row ({', '.join(map(str, key))}) is not an element of the system") from None

    def sequence(self):
        """The ordered sequence <a_1, ..., a_l> of A(o); duplicate source columns repeat an object."""
        return tuple(ArbitraryObject(self.system_id, index) for index in self.column_positions)

    def to_dict(self, universe=None):
        label = universe.state_label if universe is not None else str
        return {
            "format": FORMAT_VERSION,
            "system": self.system_id,
            "sequence": [obj.label for obj in self.sequence()],
            "assignment": [
                {"row": [entry.atom for entry in row], "state": label(self.assignment[row])}
                for row in self.source.sorted_rows()
            ],
        }


def abstract(u, o: ParticularObjectSystem):
    """Abstract ``o`` into ``u`` and return the registered system with F_o."""
    unknown = sorted(o.values() - frozenset(u.particulars))
    if unknown:
        raise UnknownValue(f"values not among the universe's particulars: {', '.join(map(str, unknown))}")

    form = canonical_form(o)
    system = u.register(ArbitraryObjectSystem(form.canonical_id, form.matrix))
    assignment = {row: State(system.canonical_id, form.image(row)) for row in o.rows}
    state_map = StateMap(
        source=o,
        system_id=system.canonical_id,
        assignment=MappingProxyType(assignment),
        column_positions=form.source_to_canonical(),
    )
    return system, state_map


def f_map(u, o: ParticularObjectSystem, x) -> State:
    row = make_row(x)
    if row not in o.rows:
        raise RowNotInSystem(f"row ({', '.join(map(str, row))}) is not an element of the system")
    _, state_map = abstract(u, o)
    return state_map(row)
