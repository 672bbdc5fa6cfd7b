import hashlib
import unittest
import sys
import os
from itertools import combinations, permutations, product

from hypothesis import given, settings

# Add the project root directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.abstraction import (
    abstract, canonical_form, collapse, f_map, matrix_id, system_from_matrix, systems_equal,
)
from core.errors import InfeasibleBounds, RowNotInSystem, UnknownValue
from core.objects import ParticularObject, make_row, validate_pos
from core.universe import Universe, val
from tests.helpers import EXAMPLE_ONE, EXAMPLE_TWO, blueprints, example_one

P = ParticularObject


class TestExampleOne(unittest.TestCase):
    def setUp(self):
        self.u, self.system, self.state_map = example_one()
        self.a1, self.a2 = self.system.objects()
        self.s1 = self.state_map(["p1", "p2"])
        self.s2 = self.state_map(["p2", "p3"])

    def test_two_objects_and_two_states(self):
        self.assertEqual(self.system.object_count, 2)
        self.assertEqual(self.system.state_count, 2)
        self.assertEqual(len(self.u.objects()), 2)
        self.assertEqual(len(self.u.states()), 2)

    def test_val_facts(self):
        self.assertEqual(val(self.u, self.a1, self.s1), P("p1"))
        self.assertEqual(val(self.u, self.a1, self.s2), P("p2"))
        self.assertEqual(val(self.u, self.a2, self.s1), P("p2"))
        self.assertEqual(val(self.u, self.a2, self.s2), P("p3"))

    def test_f_map_sends_rows_to_states(self):
        o = validate_pos(EXAMPLE_ONE)
        self.assertEqual(f_map(self.u, o, ["p1", "p2"]), self.s1)
        self.assertEqual(self.u.state_label(self.s1), f"s1@{self.system.short_id}")
        with self.assertRaises(RowNotInSystem):
            f_map(self.u, o, ["p3", "p1"])

    def test_state_map_serialization(self):
        data = self.state_map.to_dict(self.u)
        self.assertEqual(data["sequence"], [self.a1.label, self.a2.label])
        self.assertEqual(data["assignment"][0], {"row": ["p1", "p2"], "state": f"s1@{self.system.short_id}"})

    def test_column_permutation_gives_the_same_system(self):
        swapped = validate_pos([["p2", "p1"], ["p3", "p2"]])
        system, state_map = abstract(self.u, swapped)
        self.assertEqual(system, self.system)
        self.assertEqual(len(self.u.systems()), 1)
        self.assertEqual(state_map.sequence(), (self.a2, self.a1))
        self.assertEqual(canonical_form(swapped).to_dict()["column_order"], [2, 1])

    def test_values_must_be_particulars_of_the_universe(self):
        with self.assertRaises(UnknownValue):
            abstract(Universe(["p1"]), validate_pos(EXAMPLE_ONE))


class TestCanonicalForm(unittest.TestCase):
    def test_swap_example_has_two_objects_and_two_states(self):
        system, _ = abstract(Universe(["0", "1"]), validate_pos(EXAMPLE_TWO))
        self.assertEqual((system.object_count, system.state_count), (2, 2))

    def test_canonical_id_is_sha256_of_compact_json(self):
        form = canonical_form(validate_pos(EXAMPLE_ONE))
        expected = hashlib.sha256(b'{"format":1,"rows":[["p1","p2"],["p2","p3"]]}').hexdigest()
        self.assertEqual(form.canonical_id, expected)
        self.assertEqual(matrix_id(form.matrix), expected)

    def test_collapse_keeps_the_first_of_equal_columns(self):
        o = validate_pos([["0", "0", "1"], ["1", "1", "0"]])
        self.assertEqual(collapse(o), validate_pos([["0", "1"], ["1", "0"]]))
        self.assertEqual(collapse(collapse(o)), collapse(o))

    def test_duplicate_columns_name_one_object(self):
        u = Universe(["0", "1"])
        system, state_map = abstract(u, validate_pos([["0", "0"], ["1", "1"]]))
        self.assertEqual((system.object_count, system.state_count), (1, 2))
        a1 = system.objects()[0]
        self.assertEqual(state_map.sequence(), (a1, a1))

    def test_systems_equal_ignores_row_and_column_order(self):
        self.assertTrue(systems_equal(validate_pos([["0", "1"]]), validate_pos([["1", "0"]])))
        self.assertFalse(systems_equal(validate_pos([["0"]]), validate_pos([["1"]])))

    def test_width_limit(self):
        wide = validate_pos([[str(index) for index in range(9)]])
        with self.assertRaises(InfeasibleBounds):
            canonical_form(wide)

    def test_system_from_matrix(self):
        system = system_from_matrix(EXAMPLE_ONE)
        self.assertEqual(system.canonical_matrix[0], make_row(["p1", "p2"]))
        self.assertEqual(system.to_dict()["rows"], EXAMPLE_ONE)

    @settings(max_examples=60, deadline=None)
    @given(blueprints())
    def test_canonical_matrix_is_a_fixed_point(self, o):
        form = canonical_form(o)
        again = canonical_form(validate_pos(form.matrix))
        self.assertEqual(again.matrix, form.matrix)
        self.assertEqual(len(set(validate_pos(form.matrix).columns())), form.object_count)

    @settings(max_examples=60, deadline=None)
    @given(blueprints())
    def test_reversed_columns_abstract_to_the_same_system(self, o):
        reversed_rows = [tuple(reversed(row)) for row in o.rows]
        self.assertTrue(systems_equal(o, validate_pos(reversed_rows)))

    @settings(max_examples=60, deadline=None)
    @given(blueprints())
    def test_collapsed_blueprint_abstracts_to_the_same_system(self, o):
        u = Universe(["0", "1", "2"])
        first, _ = abstract(u, o)
        second, _ = abstract(u, collapse(o))
        self.assertEqual(first.canonical_id, second.canonical_id)
        self.assertEqual(len(u.systems()), 1)


def related_by_state_bijection(o1, o2):
    """Some bijection between the rows of o1 and o2 carries o1's columns onto o2's."""
    if len(o1.rows) != len(o2.rows):
        return False
    rows = sorted(o1.rows)
    columns = {tuple(row[index] for row in rows) for index in range(o1.width)}
    for image in permutations(sorted(o2.rows)):
        if columns == {tuple(row[index] for row in image) for index in range(o2.width)}:
            return True
    return False


class TestExternalExtensionality(unittest.TestCase):
    def test_systems_equal_matches_state_bijections(self):
        small = []
        for width in (1, 2):
            rows = list(product("01", repeat=width))
            for size in (1, 2):
                small.extend(validate_pos(chosen) for chosen in combinations(rows, size))
        self.assertEqual(len(small), 13)
        for o1, o2 in product(small, repeat=2):
            self.assertEqual(systems_equal(o1, o2), related_by_state_bijection(o1, o2),
                             (o1.to_atoms(), o2.to_atoms()))


if __name__ == '__main__':
    unittest.main()
