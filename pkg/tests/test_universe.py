import unittest
import sys
import os

# Add the project root directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.abstraction import abstract, system_from_matrix
from core.errors import AOTError, UnknownObject, UnknownState, UnknownSystem
from core.objects import ArbitraryObject, ParticularObject, State, make_row, validate_pos
from core.universe import Bounds, Universe, state_space, system_state_space, val, value_range
from tests.helpers import EXAMPLE_ONE, EXAMPLE_TWO, example_one, singleton

P = ParticularObject


class TestUniverse(unittest.TestCase):
    def test_needs_a_particular(self):
        with self.assertRaises(AOTError):
            Universe([])

    def test_particulars_are_sorted_and_unique(self):
        u = Universe(["p2", "p1", "p2"])
        self.assertEqual(u.particulars, (P("p1"), P("p2")))
        self.assertEqual(u.bounds, Bounds())

    def test_register_is_idempotent(self):
        u = Universe(["p1", "p2", "p3"])
        first = u.register(system_from_matrix(EXAMPLE_ONE))
        second = u.register(system_from_matrix(EXAMPLE_ONE))
        self.assertIs(first, second)
        self.assertEqual(len(u.entries()), 1)

    def test_register_unchecked_keeps_duplicates(self):
        u = Universe(["p1", "p2", "p3"])
        u.register(system_from_matrix(EXAMPLE_ONE))
        u.register_unchecked(system_from_matrix(EXAMPLE_ONE))
        self.assertEqual(len(u.entries()), 2)
        self.assertEqual(len(u.systems()), 1)

    def test_copy_is_independent(self):
        u, _, _ = example_one()
        clone = u.copy()
        abstract(clone, validate_pos([["p3"]]))
        self.assertEqual(len(clone.systems()), 2)
        self.assertEqual(len(u.systems()), 1)

    def test_unknown_lookups_raise(self):
        u, system, _ = example_one()
        with self.assertRaises(UnknownSystem):
            u.system("0" * 64)
        with self.assertRaises(UnknownObject):
            u.system_of_object(ArbitraryObject(system.canonical_id, 3))
        with self.assertRaises(UnknownState):
            u.system_of_state(State(system.canonical_id, make_row(["p3", "p3"])))

    def test_lookup_resolves_atoms_and_labels(self):
        u, system, _ = example_one()
        a1, a2 = system.objects()
        s1, s2 = system.states()
        self.assertEqual(u.lookup("p2"), P("p2"))
        self.assertEqual(u.lookup(a2.label), a2)
        self.assertEqual(u.lookup(f"s2@{system.short_id}"), s2)
        self.assertIsNone(u.lookup("p9"))
        self.assertIsNone(u.lookup(f"a3@{system.short_id}"))

    def test_lookup_needs_a_full_id_prefix(self):
        u, system, _ = example_one()
        self.assertIsNone(u.lookup("a1@"))
        self.assertIsNone(u.lookup("s1@"))
        self.assertIsNone(u.lookup(f"a1@{system.canonical_id[:4]}"))
        self.assertEqual(u.lookup(f"a1@{system.canonical_id}"), system.objects()[0])


class TestValuation(unittest.TestCase):
    def test_state_space_and_value_range(self):
        u, system, state_map = example_one()
        a1, _ = system.objects()
        self.assertEqual(state_space(u, a1), frozenset({state_map(["p1", "p2"]), state_map(["p2", "p3"])}))
        self.assertEqual(value_range(u, a1), frozenset({P("p1"), P("p2")}))
        self.assertEqual(system_state_space(u, system), state_space(u, a1))

    def test_value_range_of_a_ten_state_object(self):
        digits = [str(digit) for digit in range(10)]
        u = Universe(digits)
        system, _ = abstract(u, validate_pos([[digit] for digit in digits]))
        (a,) = system.objects()
        self.assertEqual(value_range(u, a), frozenset(P(digit) for digit in digits))
        self.assertEqual(len(state_space(u, a)), 10)

    def test_singleton(self):
        u, system, _ = singleton()
        (a,), (s,) = system.objects(), system.states()
        self.assertEqual(val(u, a, s), P("p"))
        self.assertEqual(state_space(u, a), frozenset({s}))

    def test_val_is_undefined_across_systems(self):
        u = Universe(["p1", "p2", "p3", "0", "1"])
        first, _ = abstract(u, validate_pos(EXAMPLE_ONE))
        second, _ = abstract(u, validate_pos(EXAMPLE_TWO))
        self.assertIsNone(val(u, first.objects()[0], second.states()[0]))
        self.assertTrue(state_space(u, first.objects()[0]).isdisjoint(state_space(u, second.objects()[0])))


if __name__ == '__main__':
    unittest.main()
