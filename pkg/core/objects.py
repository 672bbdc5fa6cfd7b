"""Domain types: particular objects, particular object systems, states and
arbitrary objects.

States and arbitrary objects are ordered pairs over a canonical system id
(``<id, row>`` and ``<id, m>``), so the three categories are distinct Python
types and can never be confused for one another.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Tuple

from .config import ID_PREFIX_LENGTH
from .errors import DuplicateColumns, EmptySystem, NonUniformWidth, ZeroWidth

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ParticularObject:
    """An opaque atom. Atoms are ordered by their token string."""
    atom: str

    def __str__(self):
        return self.atom


Row = Tuple[ParticularObject, ...]


def particular(token) -> ParticularObject:
    if isinstance(token, ParticularObject):
        return token
    if isinstance(token, (ArbitraryObject, State)):
        raise TypeError(f"{token!r} is not a particular object")
    return ParticularObject(str(token))


def make_row(entries: Iterable) -> Row:
    return tuple(particular(entry) for entry in entries)


@dataclass(frozen=True)
class ParticularObjectSystem:
    rows: frozenset
    width: int

    def __len__(self):
        return len(self.rows)

    def __contains__(self, row):
        return make_row(row) in self.rows

    def sorted_rows(self):
        return sorted(self.rows)

    def columns(self):
        """Columns read top to bottom over the sorted rows."""
        ordered = self.sorted_rows()
        return [tuple(row[index] for row in ordered) for index in range(self.width)]

    def values(self):
        return frozenset(value for row in self.rows for value in row)

    def has_duplicate_columns(self):
        columns = self.columns()
        return len(set(columns)) != len(columns)

    def to_atoms(self):
        return [[entry.atom for entry in row] for row in self.sorted_rows()]


def validate_pos(rows: Iterable[Iterable], strict: bool = False) -> ParticularObjectSystem:
    """Validate a set of rows as a particular object system.

    Duplicate rows collapse into one (rows form a set). With ``strict`` the
    rows must also have pairwise distinct columns.
    """
    row_set = frozenset(make_row(row) for row in rows)
    if not row_set:
        raise EmptySystem("a particular object system needs at least one row")

    widths = {len(row) for row in row_set}
    if len(widths) != 1:
        raise NonUniformWidth(f"rows have different lengths: {sorted(widths)}")
    width = widths.pop()
    if width == 0:
        raise ZeroWidth("rows must have at least one entry")

    system = ParticularObjectSystem(rows=row_set, width=width)
    if strict and system.has_duplicate_columns():
        raise DuplicateColumns("strict mode rejects systems with identical columns")
    logger.debug(f"Validated system with {len(row_set)} rows of width {width}")
    return system


@dataclass(frozen=True, order=True)
class ArbitraryObject:
    """The pair <system, m>; ``column_index`` is 1-based in the canonical column order."""
    system_id: str
    column_index: int

    @property
    def label(self):
        return f"a{self.column_index}@{self.system_id[:ID_PREFIX_LENGTH]}"

    def __str__(self):
        return self.label


@dataclass(frozen=True, order=True)
class State:
    """The pair <system, row>; ``row`` is a row of the canonical matrix."""
    system_id: str
    row: Row

    def __str__(self):
        return f"<{self.system_id[:ID_PREFIX_LENGTH]}, ({', '.join(str(p) for p in self.row)})>"
