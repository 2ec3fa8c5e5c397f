"""Command-line front end.

Every command prints a JSON report on stdout.  Exit codes: 0 verified or
feasible, 1 refuted or infeasible, 2 unknown, 64 usage error, 65 input
parse error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .bisections import ResourceError
from .catalog import BUILTIN, builtin
from .comparison import (EXHAUSTED, NOT_MINIMAL, REFUTED, UNKNOWN, VERIFIED,
                         global_fixed_unit_scan, locally_contracting_witness,
                         minimal_check, n_filling_check, purely_infinite_scan,
                         search_compare, search_paradoxical)
from .measures import invariance_lp, mg_empty_certificate
from .report import (certificate_json, dumps, farkas_json, load_report,
                     measure_json, monoid_json, new_report, verify_report)
from .semigroups import (MonoidPresentation, extract_monoid_facts,
                         parse_relation, properly_infinite, state_lp,
                         tuple_leq, type_equivalent, unperforation_probe)
from .measures import rational_json
from .symbolic import SubshiftError, canonicalize
from .sysfile import SystemFileError, dump_system, load_system

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65

log = logging.getLogger("etalecomp")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _status_code(status: str) -> int:
    if status == VERIFIED:
        return EXIT_OK
    if status in (REFUTED, EXHAUSTED, NOT_MINIMAL):
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


# -- argument helpers ---------------------------------------------------------

def parse_clopen(G, text: str):
    text = text.strip()
    if text in ("{}", "∅"):
        return G.shift.empty()
    try:
        return canonicalize(G.shift, [G.shift.parse_word(w) for w in text.split(",")])
    except SubshiftError as exc:
        raise InputError(str(exc)) from None


def parse_tuple(G, text: str) -> tuple:
    if text.strip() == "":
        return (G.shift.whole(),)
    return tuple(parse_clopen(G, part) for part in text.split("|"))


def _system(args):
    try:
        G = load_system(args.system)
    except (SystemFileError, FileNotFoundError) as exc:
        raise InputError(str(exc)) from None
    if args.max_pair_length is not None:
        G.max_pair_length = args.max_pair_length
    return G


def _outcome_fields(rep, outcome):
    rep["outcome"] = outcome.status
    if outcome.reason:
        rep["reason"] = outcome.reason


def _refutation_measure(rep, outcome, plus, minus):
    if outcome.measure is not None:
        rep["measures"].append(measure_json(outcome.measure, plus, minus))


# -- commands -----------------------------------------------------------------

def cmd_catalog(args, argv):
    if args.action == "list":
        rep = new_report(argv)
        rep["outcome"] = VERIFIED
        rep["systems"] = [{"name": n, "description": d} for n, (_, d) in BUILTIN.items()]
        return rep, EXIT_OK
    if not args.name:
        raise UsageError("catalog dump needs a system name")
    if args.name not in BUILTIN:
        raise InputError(f"unknown built-in system {args.name!r}")
    return dump_system(builtin(args.name)), EXIT_OK


def cmd_compare(args, argv):
    G = _system(args)
    K, V = parse_clopen(G, args.source), parse_clopen(G, args.target)
    rep = new_report(argv, G)
    out = search_compare(G, K, V, args.bound, budget=args.budget)
    _outcome_fields(rep, out)
    if out.verified:
        rep["certificates"].append(certificate_json(out.certificate))
    _refutation_measure(rep, out, [K], [V])
    return rep, _status_code(out.status)


def cmd_paradox(args, argv):
    G = _system(args)
    O = parse_clopen(G, args.set)
    if O.is_empty:
        raise InputError("paradox needs a non-empty set")
    rep = new_report(argv, G)
    out = search_paradoxical(G, O, args.bound, budget=args.budget)
    _outcome_fields(rep, out)
    if out.verified:
        rep["halves"] = [v.format() for v in out.certificate.halves]
        for t in out.certificate.transporters:
            rep["certificates"].append(certificate_json(t))
    _refutation_measure(rep, out, [O], [])
    return rep, _status_code(out.status)


def cmd_scan(args, argv):
    G = _system(args)
    depth = args.depth if args.depth is not None else 2
    rep = new_report(argv, G)
    res = purely_infinite_scan(G, depth, args.bound, threads=args.threads, budget=args.budget)
    rows = []
    for w, o in res["rows"]:
        row = {"cylinder": G.shift.format_word(w), "outcome": o.status}
        if o.reason:
            row["reason"] = o.reason
        rows.append(row)
        if o.verified:
            rep["certificates"].append(certificate_json(o.certificate))
        elif o.measure is not None:
            rep["measures"].append(measure_json(o.measure, [G.shift.cylinder(w)], []))
    rep["rows"] = rows
    if res["all_verified"]:
        status = VERIFIED
    elif any(o.refuted for _, o in res["rows"]):
        status = REFUTED
    else:
        status = UNKNOWN
    rep["outcome"] = status
    return rep, _status_code(status)


def cmd_filling(args, argv):
    G = _system(args)
    sets = [parse_clopen(G, s) for s in args.sets.split(";")]
    if any(s.is_empty for s in sets):
        raise InputError("filling needs non-empty sets")
    rep = new_report(argv, G)
    out = n_filling_check(G, sets, args.bound, budget=args.budget)
    _outcome_fields(rep, out)
    if out.verified:
        rep["certificates"].append(certificate_json(out.certificate))
    return rep, _status_code(out.status)


def cmd_contract(args, argv):
    G = _system(args)
    V = parse_clopen(G, args.set)
    if V.is_empty:
        raise InputError("contract needs a non-empty set")
    rep = new_report(argv, G)
    out = locally_contracting_witness(G, V, args.bound, budget=args.budget)
    _outcome_fields(rep, out)
    if out.verified:
        cert = certificate_json(out.certificate)
        cert["type"] = "single_bisection"
        rep["certificates"].append(cert)
    return rep, _status_code(out.status)


def cmd_measures(args, argv):
    G = _system(args)
    rep = new_report(argv, G)
    if args.depth is not None:
        res = invariance_lp(G, args.depth)
    else:
        res = mg_empty_certificate(G, args.max_depth)
        if res is None:
            res = invariance_lp(G, args.max_depth)
    rep["depth"] = res.depth
    if res.feasible:
        rep["outcome"] = "feasible"
        rep["measures"].append(measure_json(res.measure))
        return rep, EXIT_OK
    rep["outcome"] = "infeasible"
    rep["farkas"].append(farkas_json(res.depth, res.farkas))
    return rep, EXIT_NEGATIVE


def cmd_minimal(args, argv):
    G = _system(args)
    rep = new_report(argv, G)
    out = minimal_check(G, args.depth if args.depth is not None else 1, args.bound)
    _outcome_fields(rep, out)
    if out.status == NOT_MINIMAL:
        rep["witnesses"] = [c.format() for c in out.detail["witnesses"]]
        rep["invariant_sets"] = [c.format() for c in out.detail["invariant_sets"]]
    return rep, _status_code(out.status)


def cmd_fixed_units(args, argv):
    G = _system(args)
    rep = new_report(argv, G)
    found = global_fixed_unit_scan(G, args.depth if args.depth is not None else 1)
    rep["outcome"] = VERIFIED if found else UNKNOWN
    rep["candidates"] = [c.format() for c in found]
    return rep, EXIT_OK if found else EXIT_UNKNOWN


def _state_report(rep, M, target, res):
    entry = {"presentation": monoid_json(M), "target": target, "feasible": res.feasible}
    if res.feasible:
        entry["values"] = {k: rational_json(v) for k, v in res.values.items()}
    else:
        entry["multipliers"] = {k: rational_json(v) for k, v in sorted(res.farkas.items())}
    rep["states"].append(entry)
    rep["outcome"] = "feasible" if res.feasible else "infeasible"
    return rep, EXIT_OK if res.feasible else EXIT_NEGATIVE


def cmd_semigroup(args, argv):
    op = args.op
    if op == "state":
        try:
            rels = [parse_relation(r) for r in args.relation or []]
            gens = [g.strip() for g in args.generators.split(",") if g.strip()]
            M = MonoidPresentation(tuple(gens), rels)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if args.target not in M.generators:
            raise InputError(f"target {args.target!r} is not a generator")
        return _state_report(new_report(argv), M, args.target, state_lp(M, args.target))
    G = _system(args)
    rep = new_report(argv, G)
    L = args.bound
    if op in ("leq", "equiv"):
        a, b = parse_tuple(G, args.a), parse_tuple(G, args.b)
        fn = tuple_leq if op == "leq" else type_equivalent
        out = fn(G, a, b, L, budget=args.budget)
        _outcome_fields(rep, out)
        if out.verified:
            cert = certificate_json(out.certificate)
            if op == "equiv":
                cert["type"] = "equivalence"
            rep["certificates"].append(cert)
        _refutation_measure(rep, out, a, b)
        return rep, _status_code(out.status)
    if op == "proper":
        a = parse_tuple(G, args.a)
        out = properly_infinite(G, a, L, budget=args.budget)
        _outcome_fields(rep, out)
        if out.verified:
            rep["certificates"].append(certificate_json(out.certificate))
        _refutation_measure(rep, out, a + a, a)
        return rep, _status_code(out.status)
    if op == "probe":
        a, b = parse_tuple(G, args.a), parse_tuple(G, args.b)
        res = unperforation_probe(G, a, b, args.n, L, budget=args.budget)
        rep["multiple"] = res["multiple"].status
        rep["single"] = res["single"].status
        rep["alarm"] = res["alarm"]
        for key in ("multiple", "single"):
            if res[key].verified:
                rep["certificates"].append(certificate_json(res[key].certificate))
        rep["outcome"] = REFUTED if res["alarm"] else VERIFIED
        return rep, EXIT_NEGATIVE if res["alarm"] else EXIT_OK
    if op == "facts":
        tuples = [parse_tuple(G, t) for t in args.tuples.split(";")]
        M = extract_monoid_facts(G, tuples, L, budget=args.budget)
        target = args.target or M.generators[0]
        if target not in M.generators:
            raise InputError(f"target {target!r} is not a generator")
        return _state_report(rep, M, target, state_lp(M, target))
    raise UsageError(f"unknown semigroup operation {op!r}")


def cmd_verify(args, argv):
    try:
        report = json.load(sys.stdin) if args.report == "-" else load_report(args.report)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report: {exc}") from None
    try:
        failures = verify_report(report)
    except (SystemFileError, SubshiftError, KeyError, ValueError) as exc:
        raise InputError(f"malformed report: {exc}") from None
    rep = new_report(argv)
    rep["outcome"] = VERIFIED if not failures else REFUTED
    rep["checked"] = {k: len(report.get(k, [])) for k in ("certificates", "measures", "farkas", "states")}
    rep["failures"] = failures
    return rep, EXIT_OK if not failures else EXIT_NEGATIVE


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--system", default="o2", help="built-in name or system file path")
    common.add_argument("--bound", type=int, default=6, help="generator word length bound")
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-pair-length", type=int, default=None)
    common.add_argument("--budget", type=int, default=200_000, help="search node budget")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="etalecomp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list or dump built-in systems")
    c.add_argument("action", choices=["list", "dump"])
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("compare", parents=[common], help="K below V")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--to", dest="target", required=True)
    c.set_defaults(func=cmd_compare)

    c = sub.add_parser("paradox", parents=[common], help="(2,1)-paradoxicality of a set")
    c.add_argument("--set", required=True)
    c.set_defaults(func=cmd_paradox)

    c = sub.add_parser("scan-pi", parents=[common], help="paradoxicality of all cylinders")
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("filling", parents=[common], help="n-filling for ';'-separated sets")
    c.add_argument("--sets", required=True)
    c.set_defaults(func=cmd_filling)

    c = sub.add_parser("contract", parents=[common], help="locally contracting witness")
    c.add_argument("--set", required=True)
    c.set_defaults(func=cmd_contract)

    c = sub.add_parser("measures", parents=[common], help="invariant-measure LP")
    c.add_argument("--max-depth", type=int, default=4)
    c.set_defaults(func=cmd_measures)

    c = sub.add_parser("minimal", parents=[common], help="minimality via orbit saturation")
    c.set_defaults(func=cmd_minimal)

    c = sub.add_parser("fixed-units", parents=[common], help="cylinders fixed by all generators")
    c.set_defaults(func=cmd_fixed_units)

    c = sub.add_parser("semigroup", parents=[common], help="type semigroup and monoid states")
    c.add_argument("op", choices=["leq", "equiv", "proper", "probe", "state", "facts"])
    c.add_argument("--a", default="")
    c.add_argument("--b", default="")
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--tuples", default="")
    c.add_argument("--generators", default="x")
    c.add_argument("--relation", action="append")
    c.add_argument("--target", default=None)
    c.set_defaults(func=cmd_semigroup)

    c = sub.add_parser("verify", help="re-check a report")
    c.add_argument("report", help="report file, or - for stdin")
    c.set_defaults(func=cmd_verify)
    return p


def run(argv) -> tuple:
    """Execute a command; returns (exit code, stdout text)."""
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"etalecomp: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.INFO)
    for name in ("bound", "threads", "budget"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 0:
            print(f"etalecomp: --{name} must be nonnegative", file=sys.stderr)
            return EXIT_USAGE, ""
    start = time.perf_counter()
    try:
        rep, code = args.func(args, argv)
    except UsageError as exc:
        print(f"etalecomp: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except (InputError, SubshiftError) as exc:
        print(f"etalecomp: {exc}", file=sys.stderr)
        return EXIT_PARSE, ""
    except ResourceError as exc:
        print(f"etalecomp: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN, ""
    if isinstance(rep, str):
        return code, rep
    rep["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, dumps(rep) + "\n"


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code
