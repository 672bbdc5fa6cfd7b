"""Command-line front end.

``run(argv)`` parses the arguments, dispatches to one subcommand and returns
the exit code: 0 on success, 1 when a check fails or a verdict is false, 2
on usage or input errors. Results go to stdout, logging to stderr.
"""

import argparse
import csv
import logging
import sys

from .abstraction import abstract, canonical_form, collapse, systems_equal
from .config import (
    COUNT_RANGE, DEFAULT_JOBS, DEFAULT_STRATEGY, DIAGONAL_BOUND, FORMAT_VERSION, LOG_TO_FILE,
)
from .dependence import dependence_graph, dependence_to_dot, dependence_to_json
from .enumeration import (
    STRATEGIES, count_systems, count_table, diagonal_system, enumerate_systems, saturate,
)
from .errors import AOTError, FormulaSyntaxError, InputFormatError
from .evaluator import Evaluator, check_pga, describe, sort_of
from .formula import Sort, to_text
from .formula_parser import parse
from .io_handler import (
    read_formulas, read_system, read_universe, system_to_csv, system_to_dict, to_json,
    universe_from_dict,
)
from .logger import setup_logging
from .objects import validate_pos
from .universe import Bounds, Universe
from .verify import AUDITS, check_categoricity, check_diagonal_growth, reports_to_dict, run_audit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

EXAMPLE_ONE_ROWS = [["p1", "p2"], ["p2", "p3"]]


def _assignment(text):
    name, sep, value = text.partition("=")
    if not sep or not name.strip() or not value.strip():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    return name.strip(), value.strip()


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be at least 1")
    return value


def _add_bounds(parser):
    parser.add_argument("--max-objects", type=_positive, help="Bound on objects per system")
    parser.add_argument("--max-states", type=_positive, help="Bound on states per system")


def _add_search(parser):
    parser.add_argument("--jobs", type=_positive, default=DEFAULT_JOBS,
                        help=f"Worker processes for enumeration (default: {DEFAULT_JOBS})")
    parser.add_argument("--strategy", choices=STRATEGIES, default=DEFAULT_STRATEGY,
                        help=f"Enumeration strategy (default: {DEFAULT_STRATEGY})")


def _add_particulars(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=_positive, metavar="N", help="Use the particulars 0 .. N-1")
    group.add_argument("--particulars", help="Comma-separated particular atoms")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", help="Enable debug logging")
    common.add_argument("--log-file", action="store_true", help="Also log to a dated file in the log directory")

    parser = argparse.ArgumentParser(prog="aot", description="Finite models of the theory of arbitrary objects")
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("abstract", parents=[common], help="Abstract a system and print its Val table")
    cmd.add_argument("--in", dest="input", required=True, help="System file (JSON or CSV)")
    cmd.add_argument("--universe", help="Universe file to abstract into")
    cmd.add_argument("--json", action="store_true", help="Print JSON instead of the Val table")

    cmd = commands.add_parser("collapse", parents=[common], help="Remove duplicate columns")
    cmd.add_argument("--in", dest="input", required=True, help="System file (JSON or CSV)")
    cmd.add_argument("--json", action="store_true", help="Print JSON instead of CSV")

    cmd = commands.add_parser("canon", parents=[common], help="Print the canonical form of a system")
    cmd.add_argument("--in", dest="input", required=True, help="System file (JSON or CSV)")

    cmd = commands.add_parser("equal", parents=[common], help="Decide whether two systems abstract to one")
    cmd.add_argument("first", help="First system file")
    cmd.add_argument("second", help="Second system file")

    cmd = commands.add_parser("deps", parents=[common], help="Dependence graph of a system")
    cmd.add_argument("--in", dest="input", required=True, help="System file (JSON or CSV)")
    cmd.add_argument("--format", choices=("dot", "json"), default="dot", help="Output format (default: dot)")

    cmd = commands.add_parser("check", parents=[common], help="Audit a universe file")
    cmd.add_argument("--universe", required=True, help="Universe file")
    cmd.add_argument("--checks", nargs="+", choices=sorted(AUDITS), help="Checks to run (default: configured list)")
    cmd.add_argument("--saturate", action="store_true", help="Register every system within the bounds first")
    cmd.add_argument("--against", help="Second universe file for the categoricity check")
    cmd.add_argument("--json", action="store_true", help="Print JSON instead of a table")
    _add_bounds(cmd)
    _add_search(cmd)

    cmd = commands.add_parser("enumerate", parents=[common], help="List all systems within bounds")
    _add_particulars(cmd)
    _add_bounds(cmd)
    _add_search(cmd)

    cmd = commands.add_parser("count", parents=[common], help="Count systems with at most n objects")
    _add_particulars(cmd)
    cmd.add_argument("--n", type=_positive, nargs="+", default=list(COUNT_RANGE),
                     help=f"Object bounds to count (default: {' '.join(map(str, COUNT_RANGE))})")
    cmd.add_argument("--timing", action="store_true", help="Add a seconds column")
    cmd.add_argument("--raw", action="store_true", help="Count blueprints instead of systems")
    _add_search(cmd)

    cmd = commands.add_parser("eval", parents=[common], help="Evaluate formulas over a universe")
    cmd.add_argument("--model", required=True, help="Universe or system file")
    source = cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--formula", action="append", help="Formula text (repeatable)")
    source.add_argument("--formulas", help="File with one formula per line")
    cmd.add_argument("--env", type=_assignment, action="append", default=[], metavar="NAME=VALUE",
                     help="Bind a free variable to a universe element")
    cmd.add_argument("--sort", type=_assignment, action="append", default=[], metavar="NAME=SORT",
                     help="Declare the sort (P, A or S) of a free variable; universe constants need none")

    cmd = commands.add_parser("demo-pga", parents=[common], help="Show how generic attribution fails")
    cmd.add_argument("--model", help="Universe or system file (default: the two-object example)")
    cmd.add_argument("--system", type=_positive, default=1, help="1-based system index in the universe")
    cmd.add_argument("--phi", default="z = p1", help="Particular-sort formula (default: 'z = p1')")
    cmd.add_argument("--variable", default="z", help="Free particular variable of phi (default: z)")
    cmd.add_argument("--json", action="store_true", help="Print JSON")

    cmd = commands.add_parser("demo-diagonal", parents=[common], help="Abstract the k x k diagonal systems")
    cmd.add_argument("k", type=_positive, nargs="?", default=DIAGONAL_BOUND,
                     help=f"Largest diagonal size (default: {DIAGONAL_BOUND})")
    return parser


# Helpers

def _particulars(args):
    if args.p is not None:
        return [str(index) for index in range(args.p)]
    atoms = [atom.strip() for atom in args.particulars.split(",") if atom.strip()]
    if not atoms:
        raise InputFormatError("--particulars needs at least one atom")
    return atoms


def _bounds(args, default=None):
    default = default if default is not None else Bounds()
    return Bounds(args.max_objects or default.max_objects, args.max_states or default.max_states)


def _universe_for(system, values):
    atoms = values if values is not None else sorted(value.atom for value in system.values())
    return Universe(atoms)


def _with_bounds(u, bounds):
    if bounds == u.bounds:
        return u
    rebound = Universe(u.particulars, bounds)
    for system in u.systems():
        rebound.register(system)
    return rebound


def _write(text):
    sys.stdout.write(text)


def _table(reports):
    lines = [f"{'check':<34}{'verdict':<9}details"]
    for report in reports:
        lines.append(f"{report.check_name:<34}{report.verdict:<9}{report.details}".rstrip())
    return "\n".join(lines) + "\n"


# Subcommands

def cmd_abstract(args):
    system_in, values = read_system(args.input)
    u = read_universe(args.universe) if args.universe else _universe_for(system_in, values)
    system, state_map = abstract(u, system_in)
    if args.json:
        _write(to_json({
            "format": FORMAT_VERSION,
            "system": system.to_dict(),
            "canonical": canonical_form(system_in).to_dict(),
            "state_map": state_map.to_dict(u),
        }))
        return EXIT_OK

    lines = [f"system {system.canonical_id} ({system.object_count} objects, {system.state_count} states)"]
    for obj in system.objects():
        for state in system.states():
            lines.append(f"Val({obj.label}, {u.state_label(state)}) = {state.row[obj.column_index - 1]}")
    for row in system_in.sorted_rows():
        lines.append(f"F({', '.join(map(str, row))}) = {u.state_label(state_map(row))}")
    _write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_collapse(args):
    system_in, values = read_system(args.input)
    collapsed = collapse(system_in)
    _write(to_json(system_to_dict(collapsed, values)) if args.json else system_to_csv(collapsed))
    return EXIT_OK


def cmd_canon(args):
    system_in, _ = read_system(args.input)
    form = canonical_form(system_in)
    _write(to_json({"id": form.canonical_id, **form.to_dict()}))
    return EXIT_OK


def cmd_equal(args):
    first, _ = read_system(args.first)
    second, _ = read_system(args.second)
    same = systems_equal(first, second)
    _write("equal\n" if same else "different\n")
    return EXIT_OK if same else EXIT_FAILED


def cmd_deps(args):
    system_in, values = read_system(args.input)
    u = _universe_for(system_in, values)
    system, _ = abstract(u, system_in)
    graph = dependence_graph(u, system)
    _write(dependence_to_dot(graph) if args.format == "dot" else to_json(dependence_to_json(graph)))
    return EXIT_OK


def cmd_check(args):
    u = read_universe(args.universe)
    u = _with_bounds(u, _bounds(args, u.bounds))
    if args.saturate:
        saturate(u, jobs=args.jobs, strategy=args.strategy)
    reports = run_audit(u, args.checks)
    if args.against:
        reports.append(check_categoricity(u, _with_bounds(read_universe(args.against), u.bounds)))
    _write(to_json(reports_to_dict(reports)) if args.json else _table(reports))
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def cmd_enumerate(args):
    particulars = _particulars(args)
    bounds = _bounds(args)
    matrices = enumerate_systems(particulars, bounds.max_objects, bounds.max_states,
                                 jobs=args.jobs, strategy=args.strategy)
    u = Universe(particulars, bounds)
    systems = []
    for matrix in matrices:
        system, _ = abstract(u, validate_pos(matrix))
        systems.append({"id": system.canonical_id, "rows": system.to_dict()["rows"]})
    _write(to_json({
        "format": FORMAT_VERSION,
        "particulars": [p.atom for p in u.particulars],
        "bounds": bounds.to_dict(),
        "count": len(systems),
        "systems": systems,
    }))
    return EXIT_OK


def cmd_count(args):
    particulars = _particulars(args)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.raw:
        writer.writerow(["n", "blueprints"])
        for n in args.n:
            writer.writerow([n, count_systems(particulars, n, raw=True)])
        return EXIT_OK
    writer.writerow(["n", "count", "seconds"] if args.timing else ["n", "count"])
    writer.writerows(count_table(particulars, args.n, jobs=args.jobs, strategy=args.strategy, timing=args.timing))
    return EXIT_OK


def _formula_sources(args):
    if args.formulas:
        return [(args.formulas, line, text) for line, text in read_formulas(args.formulas)]
    return [(None, None, text) for text in args.formula]


def cmd_eval(args):
    u = read_universe(args.model)
    evaluator = Evaluator(u)
    env = evaluator.bind(dict(args.env))
    sorts = {name: sort_of(element).value for name, element in env.items()}
    for name, sort in args.sort:
        try:
            sorts[name] = Sort(sort).value
        except ValueError:
            raise InputFormatError(f"unknown sort {sort!r} for {name}; expected P, A or S") from None

    all_true = True
    for path, line, text in _formula_sources(args):
        try:
            formula = parse(text, sorts, evaluator.constant_sort)
        except FormulaSyntaxError as error:
            if path is None:
                raise
            raise InputFormatError(str(error), path, line) from None
        witness = evaluator.counterexample(formula, env)
        holds = witness is None
        all_true = all_true and holds
        _write(f"{'true ' if holds else 'false'}  {to_text(formula)}\n")
        if witness:
            assignment = ", ".join(f"{name} = {describe(u, element)}" for name, element in witness.items())
            _write(f"       counterexample: {assignment}\n")
    return EXIT_OK if all_true else EXIT_FAILED


def cmd_demo_pga(args):
    if args.model:
        u = read_universe(args.model)
    else:
        u = universe_from_dict({"rows": EXAMPLE_ONE_ROWS})
    systems = u.systems()
    if args.system > len(systems):
        raise InputFormatError(f"the universe has {len(systems)} systems, not {args.system}")
    phi = parse(args.phi, {args.variable: Sort.PARTICULAR.value}, Evaluator(u).constant_sort)
    report = check_pga(u, systems[args.system - 1], phi, args.variable)
    if args.json:
        _write(to_json(report.to_dict()))
    else:
        lines = [f"phi({report.variable}) := {report.formula}"]
        for result in report.results:
            lines.append(f"{result.obj.label}  every state: {str(result.in_every_state).lower():<5}  "
                         f"value range: {str(result.over_value_range).lower():<5}  "
                         f"agree: {str(result.surrogates_agree).lower()}")
            lines.append(f"    naive phi({result.obj.label}): {result.naive_error or 'accepted'}")
        _write("\n".join(lines) + "\n")
    return EXIT_OK if report.naive_rejected and report.surrogates_agree else EXIT_FAILED


def cmd_demo_diagonal(args):
    u = Universe(["0", "1"], Bounds(args.k, args.k))
    for k in range(1, args.k + 1):
        system, _ = abstract(u, diagonal_system(k))
        _write(f"k={k}  objects={system.object_count}  states={system.state_count}  id={system.short_id}\n")
    report = check_diagonal_growth(args.k)
    _write(f"{report.check_name}: {report.verdict}\n")
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "abstract": cmd_abstract,
    "collapse": cmd_collapse,
    "canon": cmd_canon,
    "equal": cmd_equal,
    "deps": cmd_deps,
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "eval": cmd_eval,
    "demo-pga": cmd_demo_pga,
    "demo-diagonal": cmd_demo_diagonal,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_USAGE if exit_request.code else EXIT_OK

    log = setup_logging(args.command, args.debug, args.log_file or LOG_TO_FILE)
    try:
        log.debug(f"Running {args.command} with {vars(args)}")
        return COMMANDS[args.command](args)
    except AOTError as error:
        log.error(f"{args.command}: {error}")
        return EXIT_USAGE
    except Exception:
        log.exception("An unexpected error occurred:")
        return EXIT_FAILED
    finally:
        log.close()
