#!/usr/bin/env python3
"""
Arbitrary Object Toolkit

This script builds finite models of the theory of arbitrary objects and
checks them. Particular object systems (sets of equal-length rows of
particulars) are abstracted into arbitrary object systems; the resulting
universes can be audited against the axioms, enumerated, counted and used
to evaluate three-sorted formulas. Settings come from the YAML files in
configs/ through the core.config module.

Subcommands:
    abstract        Abstract a system file and print its Val table and F map
    collapse        Remove duplicate columns from a system
    canon           Print the canonical matrix, column order and id
    equal           Decide whether two systems abstract to the same system
    deps            Print the dependence graph of a system (DOT or JSON)
    check           Audit a universe file against the axioms and lemmas
    enumerate       List every system within the given bounds
    count           Count the systems with at most n objects
    eval            Evaluate formulas over a universe
    demo-pga        Show generic attribution failing by sort separation
    demo-diagonal   Abstract the k x k diagonal systems

Usage:
    $ python aot.py abstract --in models/example1.json
    $ python aot.py check --universe models/singleton.json
    $ python aot.py count --p 2 --n 1 2 3 [--jobs 4] [--strategy dedup]
    $ python aot.py eval --model models/example1.json --formula "forall a:A. exists s:S. exists p:P. Val(a,s,p)"

Options (every subcommand):
    --debug     Enable debug logging (default: warnings only)
    --log-file  Also write the log to logs/<date>_<command>.log
    --help      Show the subcommand help and exit

Dependencies:
    - core package (config, logger, abstraction, verify, enumeration, evaluator, cli, ...)
    - PyYAML, pyparsing, networkx

Exit codes:
    0: Success, every check passed or every formula is true
    1: A check failed or a formula is false
    2: Usage or input error (check the log for details)
"""

import sys

from core.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
