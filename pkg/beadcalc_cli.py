#!/usr/bin/env python3
"""
Bead Calculus command-line front end
Run `python beadcalc_cli.py <verb> --help` for the options of each verb
"""

import argparse
import os
import sys
from typing import List, Optional

import pandas as pd

# Add current directory to path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from beadcalc import config, formats
from beadcalc.algebra import Space, normalize, quotient_basis, reduce
from beadcalc.beadrings import EDGE, FLAG, H1, presentation
from beadcalc.contraction import break_graph, complete_contraction
from beadcalc.eqlink import OVER, UNDER, eq_linking, hopf_link, linking_number, require_valid, strut_part, unlink
from beadcalc.errors import BeadcalcError
from beadcalc.graphs import graph_from_document, load_json, theta
from beadcalc.hair import hair_map
from beadcalc.laurent import LaurentMatrix, LaurentPoly, block_negative_inverse
from beadcalc.runlog import RunLog
from database import ResultsStore
from services import AxiomSuiteService, DimensionService
from services.axioms import SUITES

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

# Graded dimensions of A(φ) for Euler degrees 0..4
KNOWN_PHI_DIMENSIONS = {0: 1, 1: 0, 2: 1, 3: 0, 4: 2}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _emit(args, document, text: str):
    if args.format == "json":
        sys.stdout.write(formats.dumps(document))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _open_store(args) -> Optional[ResultsStore]:
    if not args.store:
        return None
    store = ResultsStore(args.store)
    store.initialize_database()
    return store


def _frame_text(df: pd.DataFrame) -> str:
    return df.to_string(index=False) if len(df) else "(no checks)"


def _frame_records(df: pd.DataFrame) -> List[dict]:
    return [{column: (int(value) if column in ("checked", "passed", "failed") else value)
             for column, value in record.items()} for record in df.to_dict(orient="records")]


# Verbs

def cmd_reduce(args, log: RunLog) -> int:
    element = formats.parse_element(_read(args.input), source=args.input)
    degrees = element.euler_degrees()
    if args.euler is not None:
        euler = args.euler
    elif len(degrees) <= 1:
        euler = degrees[0] if degrees else 0
    else:
        raise BeadcalcError(f"element mixes Euler degrees {degrees}; pass --euler")
    legs = max((len(g.legs) for g, _ in element.items()), default=0)
    coordinates = reduce(element, euler, args.bead_window, legs)
    basis = quotient_basis(euler, args.bead_window, element.space, legs).basis
    log.log_step("reduce", "SUCCESS", f"{len(element)} terms onto {len(basis)} basis graphs")

    zero = not any(coordinates)
    document = {
        "space": element.space.value,
        "euler_degree": euler,
        "normal_form": formats.element_to_document(element),
        "coordinates": formats.coordinates_to_document(coordinates, basis),
        "zero": zero,
    }
    lines = [f"normal form: {element}", f"zero in quotient: {'yes' if zero else 'no'}"]
    lines += [f"  {c} * {g}" for c, g in zip(coordinates, basis) if c]
    _emit(args, document, "\n".join(lines))
    return EXIT_OK


def cmd_dim(args, log: RunLog) -> int:
    service = DimensionService(_open_store(args), log)
    report = service.dimension(Space(args.space), args.euler, args.bead_window, args.legs)
    lines = [str(report.dimension)]
    lines += [f"# {key}: {value}" for key, value in report.to_dict().items() if key != "dimension"]
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_hair(args, log: RunLog) -> int:
    element = formats.parse_element(_read(args.input), source=args.input)
    image = hair_map(element, args.max_degree)
    log.log_step("hair", "SUCCESS", f"{len(element)} terms to {len(image)} terms")
    _emit(args, formats.element_to_document(image), str(image))
    return EXIT_OK


def cmd_contract(args, log: RunLog) -> int:
    text = _read(args.input)
    if args.graph:
        scheme = break_graph(graph_from_document(load_json(text, args.input), source=args.input))
    else:
        scheme = formats.parse_scheme(text, source=args.input)
    result = complete_contraction(scheme)
    log.log_step("contract", "SUCCESS", f"{result.matchings} matchings over {result.vortex_count} vortices")
    _emit(args, formats.element_to_document(result.element), str(result.element))
    return EXIT_OK


def cmd_ring(args, log: RunLog) -> int:
    g = graph_from_document(load_json(_read(args.input), args.input), source=args.input)
    p = presentation(g, args.kind)
    document = formats.presentation_to_document(p, g)
    lines = [f"kind: {p.kind}", f"generators: {', '.join(p.generators) or '(none)'}"]
    lines += [f"relation: {' '.join(str(value) for value in relation)}" for relation in p.relations]
    lines += [f"rank: {document['rank']}", f"h1_rank: {document['h1_rank']}"]
    _emit(args, document, "\n".join(lines))
    return EXIT_OK


def cmd_eqlink(args, log: RunLog) -> int:
    if args.axioms:
        service = AxiomSuiteService(_open_store(args), log)
        df = service.run_eqlink(seed=args.seed, count=args.count)
        _emit(args, _frame_records(df), _frame_text(df))
        return EXIT_OK if service.all_passed(df) else EXIT_DOMAIN
    if not args.input:
        raise BeadcalcError("eqlink needs a diagram file or --axioms")
    d = require_valid(formats.parse_diagram(_read(args.input), source=args.input))
    if args.struts:
        element = strut_part(d, args.max_degree)
        log.log_step("eqlink", "SUCCESS", f"strut part with {len(element)} terms")
        _emit(args, formats.element_to_document(element), str(element))
        return EXIT_OK
    value = eq_linking(d, args.first, args.second, via=args.via)
    document = {"from": args.first, "to": args.second, "value": str(value),
                "linking_number": linking_number(d, args.first, args.second)}
    _emit(args, document, str(value))
    return EXIT_OK


def cmd_axioms(args, log: RunLog) -> int:
    service = AxiomSuiteService(_open_store(args), log)
    frames = [service.run_suite(suite, args.seed, args.count) for suite in (args.suite or SUITES)]
    df = pd.concat(frames, ignore_index=True)
    _emit(args, _frame_records(df), _frame_text(df))
    return EXIT_OK if service.all_passed(df) else EXIT_DOMAIN


def cmd_selftest(args, log: RunLog) -> int:
    """Quick end-to-end checks of every module"""
    checks = []

    def check(name: str, condition):
        try:
            ok = bool(condition())
            details = "ok" if ok else "mismatch"
        except BeadcalcError as e:
            ok, details = False, str(e)
        log.log_step(name, "SUCCESS" if ok else "ERROR", details)
        checks.append({"check": name, "passed": ok, "details": details})

    dimensions = DimensionService(_open_store(args), log)
    for euler, expected in KNOWN_PHI_DIMENSIONS.items():
        check(f"dim phi e={euler}", lambda: dimensions.dimension(Space.PHI, euler).dimension == expected)
    check("theta contraction", lambda: complete_contraction(break_graph(theta())).element
          == normalize([(1, theta())], Space.PHI))
    check("hopf eqlink", lambda: eq_linking(hopf_link(), "A", "B") == LaurentPoly.one())
    check("unlink eqlink", lambda: eq_linking(unlink(), "A", "B").is_zero())
    check("block inverse", lambda: block_negative_inverse(LaurentMatrix([[0, 1], [1, "t + t^-1"]]))
          == LaurentMatrix([["t + t^-1", -1], [-1, 0]]))
    suites = AxiomSuiteService(dimensions.store, log)
    check("eqlink axioms", lambda: suites.all_passed(suites.run_eqlink(seed=args.seed, count=20)))

    df = pd.DataFrame(checks, columns=["check", "passed", "details"])
    _emit(args, checks, _frame_text(df))
    return EXIT_OK if all(entry["passed"] for entry in checks) else EXIT_DOMAIN


# Argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beadcalc", description="Bead calculus engine")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--store", help="SQLite results store to reuse and record results")
    parser.add_argument("--verbose", action="store_true", help="echo the run log on standard error")
    verbs = parser.add_subparsers(dest="verb", required=True)

    reduce_parser = verbs.add_parser("reduce", help="normal form and quotient coordinates of an element")
    reduce_parser.add_argument("input", help="element or graph document ('-' for stdin)")
    reduce_parser.add_argument("--euler", type=int)
    reduce_parser.add_argument("--bead-window", type=int, default=0)
    reduce_parser.set_defaults(handler=cmd_reduce)

    dim_parser = verbs.add_parser("dim", help="graded dimension with provenance")
    dim_parser.add_argument("--space", choices=[Space.STAR.value, Space.PHI.value, Space.LAMBDA.value],
                            default=Space.PHI.value)
    dim_parser.add_argument("--euler", type=int, required=True)
    dim_parser.add_argument("--bead-window", type=int, default=0)
    dim_parser.add_argument("--legs", type=int, default=0)
    dim_parser.set_defaults(handler=cmd_dim)

    hair_parser = verbs.add_parser("hair", help="hair map into A(*)")
    hair_parser.add_argument("input")
    hair_parser.add_argument("--max-degree", type=int, required=True, help="Vassiliev degree truncation")
    hair_parser.set_defaults(handler=cmd_hair)

    contract_parser = verbs.add_parser("contract", help="complete contraction of a clasper scheme")
    contract_parser.add_argument("input", help="scheme document, or a graph document with --graph")
    contract_parser.add_argument("--graph", action="store_true", help="break the graph into vortices first")
    contract_parser.set_defaults(handler=cmd_contract)

    ring_parser = verbs.add_parser("ring", help="bead ring presentation of a graph")
    ring_parser.add_argument("input")
    ring_parser.add_argument("--kind", choices=[FLAG, EDGE, H1], default=EDGE)
    ring_parser.set_defaults(handler=cmd_ring)

    eqlink_parser = verbs.add_parser("eqlink", help="equivariant linking number of an annular diagram")
    eqlink_parser.add_argument("input", nargs="?")
    eqlink_parser.add_argument("--from", dest="first", default="A")
    eqlink_parser.add_argument("--to", dest="second", default="B")
    eqlink_parser.add_argument("--via", choices=[OVER, UNDER], default=OVER)
    eqlink_parser.add_argument("--struts", action="store_true",
                               help="beaded struts of every component pair, through the hair map")
    eqlink_parser.add_argument("--max-degree", type=int, default=1, help="Vassiliev truncation for --struts")
    eqlink_parser.add_argument("--axioms", action="store_true", help="run the seeded axiom suite instead")
    eqlink_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    eqlink_parser.add_argument("--count", type=int, default=config.DEFAULT_AXIOM_COUNT)
    eqlink_parser.set_defaults(handler=cmd_eqlink)

    axioms_parser = verbs.add_parser("axioms", help="run property suites")
    axioms_parser.add_argument("--suite", action="append", choices=list(SUITES))
    axioms_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    axioms_parser.add_argument("--count", type=int)
    axioms_parser.set_defaults(handler=cmd_axioms)

    selftest_parser = verbs.add_parser("selftest", help="quick end-to-end checks")
    selftest_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    selftest_parser.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    log = RunLog(echo=args.verbose)
    try:
        status = args.handler(args, log)
    except BeadcalcError as e:
        log.log_step(args.verb, "ERROR", str(e))
        print(f"error: {e}", file=sys.stderr)
        status = EXIT_DOMAIN
    except OSError as e:
        log.log_step(args.verb, "ERROR", str(e))
        print(f"error: {e.filename or args.verb}: {e.strerror or e}", file=sys.stderr)
        status = EXIT_DOMAIN
    if args.store:
        store = ResultsStore(args.store)
        store.initialize_database()
        store.record_log(log.entries)
    return status


if __name__ == "__main__":
    sys.exit(main())
