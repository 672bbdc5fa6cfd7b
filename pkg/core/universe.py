"""Finite models: a set of particular objects plus the registered arbitrary
object systems, and the valuation relation over them."""

import logging
import threading
from typing import Iterable, NamedTuple

from .abstraction import ArbitraryObjectSystem
from .config import DEFAULT_MAX_OBJECTS, DEFAULT_MAX_STATES, ID_PREFIX_LENGTH
from .errors import AOTError, UnknownObject, UnknownState, UnknownSystem
from .objects import ArbitraryObject, ParticularObject, State, particular

logger = logging.getLogger(__name__)


class Bounds(NamedTuple):
    max_objects: int = DEFAULT_MAX_OBJECTS
    max_states: int = DEFAULT_MAX_STATES

    def to_dict(self):
        return {"max_objects": self.max_objects, "max_states": self.max_states}


class Universe:
    """A finite model of the theory.

    Systems registered through :meth:`register` are canonical and unique per
    id. :meth:`register_unchecked` stores a system as given, which is the
    only way to build a universe that violates the axioms.
    """

    def __init__(self, particulars: Iterable, bounds: Bounds = None):
        atoms = sorted({particular(token) for token in particulars})
        if not atoms:
            raise AOTError("a universe needs at least one particular object")
        self.particulars = tuple(atoms)
        self.bounds = bounds if bounds is not None else Bounds()
        self._entries = []
        self._by_id = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Universe({len(self.particulars)} particulars, {len(self._entries)} systems)"

    def copy(self):
        clone = Universe(self.particulars, self.bounds)
        clone._entries = list(self._entries)
        clone._by_id = dict(self._by_id)
        return clone

    # Registration

    def register(self, system: ArbitraryObjectSystem) -> ArbitraryObjectSystem:
        with self._lock:
            existing = self._by_id.get(system.canonical_id)
            if existing is not None:
                return existing
            self._entries.append(system)
            self._by_id[system.canonical_id] = system
        logger.info(f"Registered system {system.short_id} with {system.object_count} objects "
                    f"and {system.state_count} states")
        return system

    def register_unchecked(self, system: ArbitraryObjectSystem) -> ArbitraryObjectSystem:
        with self._lock:
            self._entries.append(system)
            self._by_id.setdefault(system.canonical_id, system)
        logger.warning(f"Stored system {system.short_id} without canonical checks")
        return system

    # Lookup

    def entries(self):
        """Every stored system, including unchecked duplicates, in insertion order."""
        return list(self._entries)

    def systems(self):
        return sorted(self._by_id.values(), key=ArbitraryObjectSystem.sort_key)

    def system(self, system_id) -> ArbitraryObjectSystem:
        try:
            return self._by_id[system_id]
        except KeyError:
            raise UnknownSystem(f"no system with id {system_id[:ID_PREFIX_LENGTH]}") from None

    def system_ids(self):
        return frozenset(self._by_id)

    def objects(self):
        return [obj for system in self.systems() for obj in system.objects()]

    def states(self):
        return [state for system in self.systems() for state in system.states()]

    def system_of_object(self, a: ArbitraryObject) -> ArbitraryObjectSystem:
        system = self._by_id.get(getattr(a, "system_id", None))
        if not isinstance(a, ArbitraryObject) or system is None or not 1 <= a.column_index <= system.object_count:
            raise UnknownObject(f"{a} is not an arbitrary object of this universe")
        return system

    def system_of_state(self, s: State) -> ArbitraryObjectSystem:
        system = self._by_id.get(getattr(s, "system_id", None))
        if not isinstance(s, State) or system is None or s.row not in system.canonical_matrix:
            raise UnknownState(f"{s} is not a state of this universe")
        return system

    def state_label(self, s: State) -> str:
        system = self.system_of_state(s)
        return f"s{system.canonical_matrix.index(s.row) + 1}@{system.short_id}"

    def lookup(self, name: str):
        """Resolve a constant: a particular atom, an object label or a state label."""
        candidate = ParticularObject(name)
        if candidate in self.particulars:
            return candidate
        if "@" in name and name[:1] in ("a", "s"):
            index_text, _, prefix = name[1:].partition("@")
            # An id prefix names a system only at full label length or longer.
            if index_text.isdigit() and len(prefix) >= ID_PREFIX_LENGTH:
                index = int(index_text)
                for system in self.systems():
                    if not system.canonical_id.startswith(prefix):
                        continue
                    if name[0] == "a" and 1 <= index <= system.object_count:
                        return ArbitraryObject(system.canonical_id, index)
                    if name[0] == "s" and 1 <= index <= system.state_count:
                        return State(system.canonical_id, system.canonical_matrix[index - 1])
        return None


def val(u: Universe, a: ArbitraryObject, s: State):
    """The value of ``a`` in ``s``, or None where Val is undefined."""
    u.system_of_object(a)
    u.system_of_state(s)
    if a.system_id != s.system_id:
        return None
    return s.row[a.column_index - 1]


def state_space(u: Universe, a: ArbitraryObject):
    system = u.system_of_object(a)
    return frozenset(system.states())


def value_range(u: Universe, a: ArbitraryObject):
    system = u.system_of_object(a)
    return frozenset(system.column(a.column_index))


def system_state_space(u: Universe, system: ArbitraryObjectSystem):
    """The state space shared by every object of ``system``."""
    return frozenset(u.system(system.canonical_id).states())
