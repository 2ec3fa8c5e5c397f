"""JSON reports: serialization of certificates and their re-verification.

Rationals are ``{"num": n, "den": d}``; words are symbol-name strings;
clopen sets are lists of words; subject/target indices are 0-based.
"""
from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .bisections import GroupoidPresentation, PrefixExchange
from .comparison import (FillingCertificate, ParadoxCertificate, Piece,
                         Transporter, TupleCertificate, verify_filling,
                         verify_paradox, verify_transporter, verify_tuple)
from .lp import check_farkas
from .measures import (MeasureVector, build_lp, check_invariant,
                       rational_from_json, rational_json)
from .semigroups import MonoidPresentation, parse_relation, state_program
from .symbolic import Clopen, canonicalize
from .sysfile import dump_system, parse_system


def clopen_json(c: Clopen) -> list:
    return c.format()


def clopen_from_json(G, words) -> Clopen:
    return canonicalize(G.shift, [G.shift.parse_word(w) for w in words])


def piece_json(p: Piece) -> dict:
    return {"pairs": p.exchange.format_pairs(),
            "provenance": [{"word": list(w), "part": clopen_json(part)}
                           for w, part in p.provenance]}


def piece_from_json(G, d) -> Piece:
    S = G.shift
    pe = PrefixExchange(S, [(S.parse_word(u), S.parse_word(v)) for u, v in d["pairs"]])
    prov = tuple((tuple(x["word"]), clopen_from_json(G, x["part"])) for x in d["provenance"])
    return Piece(pe, prov)


def certificate_json(c) -> dict:
    if isinstance(c, Transporter):
        return {"type": "transporter", "subject": clopen_json(c.subject),
                "target": clopen_json(c.target), "pieces": [piece_json(p) for p in c.pieces]}
    if isinstance(c, TupleCertificate):
        return {"type": "tuple", "subject": [clopen_json(x) for x in c.subject],
                "target": [clopen_json(x) for x in c.target],
                "entries": [{"from": i, "piece": piece_json(p), "to": k} for i, p, k in c.entries]}
    if isinstance(c, ParadoxCertificate):
        return {"type": "paradox", "subject": clopen_json(c.subject),
                "halves": [clopen_json(v) for v in c.halves],
                "transporters": [certificate_json(t) for t in c.transporters]}
    if isinstance(c, FillingCertificate):
        return {"type": "filling", "sets": [clopen_json(w) for w in c.sets],
                "bisections": [piece_json(p) for p in c.bisections]}
    raise TypeError(f"cannot serialize {type(c).__name__}")


def certificate_from_json(G, d):
    t = d["type"]
    if t in ("transporter", "single_bisection"):
        return Transporter(clopen_from_json(G, d["subject"]), clopen_from_json(G, d["target"]),
                           [piece_from_json(G, p) for p in d["pieces"]])
    if t in ("tuple", "equivalence"):
        return TupleCertificate(tuple(clopen_from_json(G, x) for x in d["subject"]),
                                tuple(clopen_from_json(G, x) for x in d["target"]),
                                [(e["from"], piece_from_json(G, e["piece"]), e["to"])
                                 for e in d["entries"]])
    if t == "paradox":
        return ParadoxCertificate(clopen_from_json(G, d["subject"]),
                                  tuple(clopen_from_json(G, v) for v in d["halves"]),
                                  tuple(certificate_from_json(G, x) for x in d["transporters"]))
    if t == "filling":
        return FillingCertificate(tuple(clopen_from_json(G, w) for w in d["sets"]),
                                  tuple(piece_from_json(G, p) for p in d["bisections"]))
    raise ValueError(f"unknown certificate type {t!r}")


def verify_certificate_json(G, d) -> bool:
    c = certificate_from_json(G, d)
    t = d["type"]
    if t == "transporter":
        return verify_transporter(c, G)
    if t == "single_bisection":
        return (len(c.pieces) == 1 and c.pieces[0].source == c.subject
                and verify_transporter(c, G))
    if t == "tuple":
        return verify_tuple(c, G)
    if t == "equivalence":
        return verify_tuple(c, G, exact=True)
    if t == "paradox":
        return verify_paradox(c, G)
    if t == "filling":
        return verify_filling(c, G)
    return False


def measure_json(m: MeasureVector, plus=(), minus=()) -> dict:
    out = m.to_json()
    if plus or minus:
        out["plus"] = [clopen_json(c) for c in plus]
        out["minus"] = [clopen_json(c) for c in minus]
        out["lhs"] = rational_json(m.total(plus))
        out["rhs"] = rational_json(m.total(minus))
    return out


def measure_from_json(G, d) -> MeasureVector:
    S = G.shift
    vals = {S.parse_word(w): rational_from_json(q) for w, q in d["values"].items()}
    return MeasureVector(S, int(d["depth"]), vals)


def verify_measure_json(G, d) -> bool:
    m = measure_from_json(G, d)
    if not check_invariant(G, m):
        return False
    if "plus" in d:
        plus = [clopen_from_json(G, c) for c in d["plus"]]
        minus = [clopen_from_json(G, c) for c in d["minus"]]
        if m.total(plus) <= m.total(minus):
            return False
    return True


def farkas_json(depth: int, farkas: dict) -> dict:
    return {"depth": depth, "multipliers": {k: rational_json(v) for k, v in sorted(farkas.items())}}


def verify_farkas_json(G, d) -> bool:
    lp = build_lp(G, int(d["depth"]))
    mult = {k: rational_from_json(v) for k, v in d["multipliers"].items()}
    return check_farkas(lp, mult)


def monoid_json(M: MonoidPresentation) -> dict:
    return {"generators": list(M.generators), "relations": [r.name for r in M.relations]}


def monoid_from_json(d) -> MonoidPresentation:
    return MonoidPresentation(tuple(d["generators"]), [parse_relation(r) for r in d["relations"]])


def verify_state_json(d) -> bool:
    M = monoid_from_json(d["presentation"])
    lp = state_program(M, d["target"])
    if d["feasible"]:
        from .lp import check_point
        vals = {k: rational_from_json(v) for k, v in d["values"].items()}
        return check_point(lp, vals)
    mult = {k: rational_from_json(v) for k, v in d["multipliers"].items()}
    return check_farkas(lp, mult)


def new_report(command, G=None) -> dict:
    rep = {"tool": "etalecomp", "version": __version__, "command": list(command), "seed": 0,
           "outcome": None, "certificates": [], "measures": [], "farkas": [], "states": []}
    if G is not None:
        rep["system"] = {"name": G.name, "text": dump_system(G)}
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, default=_default)


def _default(x):
    if isinstance(x, Fraction):
        return rational_json(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def verify_report(report: dict) -> list:
    """Re-check every certificate, measure, Farkas proof and state; returns failures."""
    failures = []
    G = None
    if "system" in report:
        G = parse_system(report["system"]["text"])
    for n, c in enumerate(report.get("certificates", [])):
        if G is None or not verify_certificate_json(G, c):
            failures.append(f"certificate {n} ({c.get('type')})")
    for n, m in enumerate(report.get("measures", [])):
        if G is None or not verify_measure_json(G, m):
            failures.append(f"measure {n}")
    for n, f in enumerate(report.get("farkas", [])):
        if G is None or not verify_farkas_json(G, f):
            failures.append(f"farkas {n}")
    for n, s in enumerate(report.get("states", [])):
        if not verify_state_json(s):
            failures.append(f"state {n}")
    return failures


def load_report(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def system_from_report(report) -> GroupoidPresentation:
    return parse_system(report["system"]["text"])
