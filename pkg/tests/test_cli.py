import io
import json
import unittest
import sys
import os
from contextlib import redirect_stderr, redirect_stdout

# Add the project root directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.abstraction import canonical_form
from core.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from core.objects import validate_pos
from tests.helpers import EXAMPLE_ONE, MODELS_DIR

EXAMPLE_ONE_JSON = os.path.join(MODELS_DIR, "example1.json")
EXAMPLE_ONE_CSV = os.path.join(MODELS_DIR, "example1.csv")
EXAMPLE_TWO_JSON = os.path.join(MODELS_DIR, "example2.json")
SINGLETON_JSON = os.path.join(MODELS_DIR, "singleton.json")
BINARY_JSON = os.path.join(MODELS_DIR, "binary.json")
FORMULAS_TXT = os.path.join(MODELS_DIR, "formulas.txt")


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue()


class TestSystemCommands(unittest.TestCase):
    def test_abstract_prints_the_val_table(self):
        short = canonical_form(validate_pos(EXAMPLE_ONE)).canonical_id[:8]
        code, output = invoke("abstract", "--in", EXAMPLE_ONE_JSON)
        self.assertEqual(code, EXIT_OK)
        for obj, state, value in ((1, 1, "p1"), (1, 2, "p2"), (2, 1, "p2"), (2, 2, "p3")):
            self.assertIn(f"Val(a{obj}@{short}, s{state}@{short}) = {value}", output)
        self.assertIn(f"F(p1, p2) = s1@{short}", output)

    def test_abstract_json(self):
        code, output = invoke("abstract", "--in", EXAMPLE_ONE_CSV, "--json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(output)
        self.assertEqual(data["system"]["rows"], EXAMPLE_ONE)
        self.assertEqual(data["canonical"]["column_order"], [1, 2])
        self.assertEqual(len(data["state_map"]["assignment"]), 2)

    def test_collapse_and_canon(self):
        code, output = invoke("collapse", "--in", EXAMPLE_TWO_JSON)
        self.assertEqual((code, output), (EXIT_OK, "0,1\n1,0\n"))
        code, output = invoke("canon", "--in", EXAMPLE_ONE_JSON)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(output)["id"], canonical_form(validate_pos(EXAMPLE_ONE)).canonical_id)

    def test_equal(self):
        self.assertEqual(invoke("equal", EXAMPLE_ONE_JSON, EXAMPLE_ONE_CSV), (EXIT_OK, "equal\n"))
        self.assertEqual(invoke("equal", EXAMPLE_ONE_JSON, EXAMPLE_TWO_JSON), (EXIT_FAILED, "different\n"))

    def test_deps(self):
        code, output = invoke("deps", "--in", EXAMPLE_TWO_JSON)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(output.startswith("digraph"))
        self.assertIn('[label="0->1, 1->0"]', output)
        code, output = invoke("deps", "--in", EXAMPLE_TWO_JSON, "--format", "json")
        self.assertEqual(len(json.loads(output)["witnesses"]), 4)


class TestCheckCommand(unittest.TestCase):
    def test_singleton_passes(self):
        code, output = invoke("check", "--universe", SINGLETON_JSON)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("axiom_6_abstraction", output)
        self.assertNotIn(" fail ", output)

    def test_json_report(self):
        code, output = invoke("check", "--universe", BINARY_JSON, "--saturate", "--json")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(output)["passed"])

    def test_categoricity_failure_exits_one(self):
        code, output = invoke("check", "--universe", EXAMPLE_TWO_JSON, "--against", BINARY_JSON,
                              "--checks", "isolation", "--max-objects", "2", "--max-states", "2")
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn("categoricity", output)


class TestEnumerationCommands(unittest.TestCase):
    def test_count(self):
        self.assertEqual(invoke("count", "--p", "2", "--n", "1"), (EXIT_OK, "n,count\n1,3\n"))
        code, output = invoke("count", "--p", "2", "--n", "1", "2", "--strategy", "dedup", "--raw")
        self.assertEqual((code, output), (EXIT_OK, "n,blueprints\n1,3\n2,18\n"))

    def test_count_with_timing(self):
        code, output = invoke("count", "--particulars", "a,b", "--n", "1", "--timing")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(output.startswith("n,count,seconds\n1,3,"))

    def test_enumerate_output_is_deterministic(self):
        args = ("enumerate", "--p", "2", "--max-objects", "2", "--max-states", "3")
        code, first = invoke(*args)
        _, second = invoke(*args, "--jobs", "2", "--strategy", "dedup")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(first, second)
        code, output = invoke("enumerate", "--p", "2", "--max-objects", "1", "--max-states", "2")
        self.assertEqual(json.loads(output)["count"], 3)

    def test_demo_diagonal(self):
        code, output = invoke("demo-diagonal", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("k=3  objects=3  states=3", output)
        self.assertIn("diagonal_growth: pass", output)


class TestLogicCommands(unittest.TestCase):
    def test_true_formula(self):
        code, output = invoke("eval", "--model", EXAMPLE_ONE_JSON,
                              "--formula", "forall x:A. exists y:S. exists z:P. Val(x,y,z)")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(output.startswith("true "))

    def test_false_formula_prints_a_counterexample(self):
        code, output = invoke("eval", "--model", EXAMPLE_ONE_JSON,
                              "--formula", "forall x:A. forall y:S. Val(x,y,p1)")
        self.assertEqual(code, EXIT_FAILED)
        self.assertTrue(output.startswith("false"))
        self.assertIn("counterexample: x = a1@", output)

    def test_environment_binding(self):
        code, _ = invoke("eval", "--model", EXAMPLE_ONE_JSON, "--env", "w=p3",
                         "--formula", "exists x:A. exists y:S. Val(x,y,w)")
        self.assertEqual(code, EXIT_OK)

    def test_formula_file(self):
        code, output = invoke("eval", "--model", EXAMPLE_ONE_JSON, "--formulas", FORMULAS_TXT)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(output.splitlines()), 3)

    def test_syntax_and_sort_errors_exit_two(self):
        self.assertEqual(invoke("eval", "--model", EXAMPLE_ONE_JSON, "--formula", "forall x:A")[0], EXIT_USAGE)
        self.assertEqual(invoke("eval", "--model", EXAMPLE_ONE_JSON, "--formula", "Val(p,s,a)")[0], EXIT_USAGE)
        self.assertEqual(invoke("eval", "--model", EXAMPLE_ONE_JSON,
                                "--formula", "exists s:S. Val(a1@,s,p1)")[0], EXIT_USAGE)

    def test_demo_pga(self):
        code, output = invoke("demo-pga")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("every state: false", output)
        self.assertIn("cannot substitute", output)
        code, output = invoke("demo-pga", "--phi", "z = z", "--json")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(all(entry["left"] and entry["right"] for entry in json.loads(output)["objects"]))


class TestUsage(unittest.TestCase):
    def test_usage_errors_exit_two(self):
        self.assertEqual(invoke()[0], EXIT_USAGE)
        self.assertEqual(invoke("unknown")[0], EXIT_USAGE)
        self.assertEqual(invoke("count")[0], EXIT_USAGE)
        self.assertEqual(invoke("count", "--p", "0")[0], EXIT_USAGE)
        self.assertEqual(invoke("eval", "--model", EXAMPLE_ONE_JSON, "--formula", "true", "--env", "z")[0], EXIT_USAGE)

    def test_input_errors_exit_two(self):
        self.assertEqual(invoke("abstract", "--in", os.path.join(MODELS_DIR, "missing.json"))[0], EXIT_USAGE)
        self.assertEqual(invoke("enumerate", "--p", "3", "--max-objects", "4", "--max-states", "81")[0], EXIT_USAGE)

    def test_help_exits_zero(self):
        self.assertEqual(invoke("--help")[0], EXIT_OK)


if __name__ == '__main__':
    unittest.main()
