"""Exhaustive generation and counting of arbitrary object systems up to identity.

The search space for width k is the family of nonempty row sets drawn from
P^k. It is split into partitions by the least row of the set, so each
partition can be processed on its own and the merged result does not depend
on how many workers ran.

Two independent strategies produce the same set of canonical matrices:

``orderly``  keep a sorted row set only if it already is its own canonical
             form (and has distinct columns). Over two particulars the rows
             are packed into integers and column permutations act on bits.
``dedup``    canonicalize every row set (collapsing duplicate columns) and
             deduplicate in a set.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations, permutations, product

from .abstraction import canonical_form, system_from_matrix
from .config import DEFAULT_JOBS, DEFAULT_STRATEGY, MAX_SEARCH_SPACE
from .errors import AOTError, InfeasibleBounds
from .objects import ParticularObjectSystem, make_row, particular, validate_pos
from .utils import seconds_since, timer

logger = logging.getLogger(__name__)

STRATEGIES = ("orderly", "dedup")


def _atoms(particulars):
    atoms = sorted({particular(token) for token in particulars})
    if not atoms:
        raise AOTError("enumeration needs at least one particular object")
    return tuple(atoms)


def search_space_size(n_particulars, max_objects, max_states):
    """Number of row sets examined for widths 1..max_objects and at most max_states rows."""
    total = 0
    for width in range(1, max_objects + 1):
        rows = n_particulars ** width
        total += sum(math.comb(rows, size) for size in range(1, min(max_states, rows) + 1))
    return total


def _check_feasible(n_particulars, max_objects, max_states):
    if max_objects < 1 or max_states < 1:
        raise InfeasibleBounds("bounds must be at least 1")
    size = search_space_size(n_particulars, max_objects, max_states)
    if size > MAX_SEARCH_SPACE:
        raise InfeasibleBounds(
            f"search space of {size} row sets exceeds the configured limit {MAX_SEARCH_SPACE}"
        )
    return size


# Bit-packed rows (two particulars): entry 0 is the most significant bit, so
# integer order coincides with lexicographic row order.

def _pack(row, high):
    value = 0
    for entry in row:
        value = (value << 1) | (entry == high)
    return value


def _permute_bits(value, order, width):
    permuted = 0
    for index in order:
        permuted = (permuted << 1) | ((value >> (width - 1 - index)) & 1)
    return permuted


def _bit_columns_distinct(packed, width):
    columns = set()
    for index in range(width):
        columns.add(tuple((value >> (width - 1 - index)) & 1 for value in packed))
    return len(columns) == width


def _is_canonical_packed(packed, width):
    """``packed`` is sorted; it is canonical iff no column order gives a smaller sorted tuple."""
    for order in permutations(range(width)):
        candidate = tuple(sorted(_permute_bits(value, order, width) for value in packed))
        if candidate < packed:
            return False
    return True


def _row_sets(all_rows, first, max_states):
    rest = all_rows[first + 1:]
    for size in range(0, min(max_states - 1, len(rest)) + 1):
        for tail in combinations(rest, size):
            yield (all_rows[first],) + tail


def _partition(job):
    """Canonical matrices from every row set of one width whose least row is ``all_rows[first]``."""
    atoms, width, first, max_states, strategy = job
    all_rows = [tuple(row) for row in product(atoms, repeat=width)]
    found = set()

    if strategy == "orderly" and len(atoms) == 2:
        high = atoms[1]
        packed_rows = [_pack(row, high) for row in all_rows]
        for row_set in _row_sets(packed_rows, first, max_states):
            if _bit_columns_distinct(row_set, width) and _is_canonical_packed(row_set, width):
                found.add(tuple(tuple(atoms[(value >> (width - 1 - index)) & 1] for index in range(width))
                                for value in row_set))
    elif strategy == "orderly":
        for row_set in _row_sets(all_rows, first, max_states):
            system = ParticularObjectSystem(frozenset(row_set), width)
            if system.has_duplicate_columns():
                continue
            if canonical_form(system).matrix == row_set:
                found.add(row_set)
    else:
        for row_set in _row_sets(all_rows, first, max_states):
            found.add(canonical_form(ParticularObjectSystem(frozenset(row_set), width)).matrix)
    return found


def _jobs(atoms, max_objects, max_states, strategy):
    for width in range(1, max_objects + 1):
        for first in range(len(atoms) ** width):
            yield (atoms, width, first, max_states, strategy)


def _sort_key(matrix):
    return (len(matrix[0]), len(matrix), matrix)


@lru_cache(maxsize=64)
def _enumerate(atoms, max_objects, max_states, strategy, jobs):
    jobs_list = list(_jobs(atoms, max_objects, max_states, strategy))
    start_time = timer()
    found = set()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for partial in pool.map(_partition, jobs_list, chunksize=max(1, len(jobs_list) // (4 * jobs))):
                found |= partial
    else:
        for job in jobs_list:
            found |= _partition(job)
    logger.info(f"Enumerated {len(found)} systems over {len(atoms)} particulars "
                f"(objects <= {max_objects}, states <= {max_states}, {strategy}, "
                f"{len(jobs_list)} partitions, {timer(start_time)})")
    return tuple(sorted(found, key=_sort_key))


def enumerate_systems(particulars, max_objects, max_states, jobs=DEFAULT_JOBS, strategy=DEFAULT_STRATEGY):
    """All canonical matrices with at most ``max_objects`` columns and ``max_states`` rows.

    Output order: object count, then state count, then the matrix itself.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    atoms = _atoms(particulars)
    _check_feasible(len(atoms), max_objects, max_states)
    return list(_enumerate(atoms, max_objects, max_states, strategy, max(1, jobs)))


def count_systems(particulars, n, jobs=DEFAULT_JOBS, strategy=DEFAULT_STRATEGY, raw=False):
    """|C_P(n)|: systems with at most n objects, states bounded by |P|^n.

    With ``raw`` the blueprints themselves are counted, without collapse or
    canonical identification.
    """
    atoms = _atoms(particulars)
    max_states = len(atoms) ** n
    if raw:
        return _check_feasible(len(atoms), n, max_states)
    return len(enumerate_systems(atoms, n, max_states, jobs=jobs, strategy=strategy))


def count_table(particulars, ns, jobs=DEFAULT_JOBS, strategy=DEFAULT_STRATEGY, timing=False):
    """Rows (n, count[, seconds]) for the counting question."""
    table = []
    for n in ns:
        start_time = timer()
        count = count_systems(particulars, n, jobs=jobs, strategy=strategy)
        row = (n, count, seconds_since(start_time)) if timing else (n, count)
        logger.info(f"C_P({n}) = {count}")
        table.append(row)
    return table


def diagonal_system(k: int) -> ParticularObjectSystem:
    """The k x k system whose i-th row has 1 at position i and 0 elsewhere."""
    if k < 1:
        raise InfeasibleBounds("the diagonal system needs k >= 1")
    return validate_pos(make_row("1" if column == row else "0" for column in range(k)) for row in range(k))


def saturate(u, jobs=DEFAULT_JOBS, strategy=DEFAULT_STRATEGY):
    """Register every canonical system within the universe's bounds."""
    matrices = enumerate_systems(u.particulars, u.bounds.max_objects, u.bounds.max_states,
                                 jobs=jobs, strategy=strategy)
    for matrix in matrices:
        u.register(system_from_matrix(matrix))
    logger.info(f"Saturated universe with {len(matrices)} systems")
    return u
