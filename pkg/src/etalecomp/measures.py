"""Invariant probability measures at cylinder depth, in exact arithmetic.

A depth-D measure vector assigns a rational mass to each admissible word of
length D.  Invariance under a generator pair ``(u, v)`` says the cylinders
``u y`` and ``v y`` carry equal mass; with D at least the longest pair word
every such constraint is expressible in depth-D variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Optional

from .bisections import GroupoidPresentation
from .lp import EQ, LinearProgram, check_farkas, check_point
from .symbolic import Clopen, Subshift, SubshiftError, refine

MAX_LP_VARIABLES = 4096


@dataclass
class MeasureVector:
    shift: Subshift
    depth: int
    values: dict

    def measure(self, c: Clopen) -> Fraction:
        if c.depth > self.depth:
            raise SubshiftError(f"set needs depth {c.depth} > measure depth {self.depth}")
        masses = self._prefix_masses
        return sum((masses.get(w, Fraction(0)) for w in c.words), Fraction(0))

    @cached_property
    def _prefix_masses(self) -> dict:
        """Mass of every cylinder of depth <= self.depth."""
        out: dict = {}
        for w, q in self.values.items():
            q = Fraction(q)
            for i in range(len(w) + 1):
                out[w[:i]] = out.get(w[:i], Fraction(0)) + q
        return out

    def total(self, sets) -> Fraction:
        return sum((self.measure(c) for c in sets), Fraction(0))

    def to_json(self) -> dict:
        fw = self.shift.format_word
        return {"depth": self.depth,
                "values": {fw(w): rational_json(v) for w, v in sorted(self.values.items()) if v}}


def rational_json(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def rational_from_json(d) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


@dataclass
class LPOutcome:
    feasible: bool
    depth: int
    lp: LinearProgram
    measure: Optional[MeasureVector] = None
    farkas: Optional[dict] = None


def _constraint_name(G, gname, u, y, v) -> str:
    fw = G.shift.format_word
    return f"{gname}:{fw(u + y) or 'ε'}={fw(v + y) or 'ε'}"


def invariance_rows(G: GroupoidPresentation, D: int) -> list:
    """(name, coefficients) pairs of the depth-compatible invariance equations."""
    shift = G.shift
    rows = []
    seen = set()
    for gname in sorted(G.generators):
        for u, v in G.generators[gname].canonical_pairs:
            if u == v:
                continue
            n = D - max(len(u), len(v))
            if n < 0:
                continue
            for uy in shift.extensions(u, n):
                y = uy[len(u):]
                coeffs: dict = {}
                for w in shift.extensions(uy, D - len(uy)):
                    coeffs[w] = coeffs.get(w, 0) + 1
                vy = v + y
                for w in shift.extensions(vy, D - len(vy)):
                    coeffs[w] = coeffs.get(w, 0) - 1
                coeffs = {k: c for k, c in coeffs.items() if c}
                if not coeffs:
                    continue
                key = tuple(sorted(coeffs.items()))
                if key in seen:
                    continue
                seen.add(key)
                rows.append((_constraint_name(G, gname, u, y, v), coeffs))
    return rows


def build_lp(G: GroupoidPresentation, D: int) -> LinearProgram:
    words = G.shift.words(D)
    lp = LinearProgram(list(words))
    lp.add_row("mass", {w: 1 for w in words}, EQ, 1)
    for name, coeffs in invariance_rows(G, D):
        lp.add_row(name, coeffs, EQ, 0)
    return lp


def effective_depth(G: GroupoidPresentation, D: int) -> int:
    return max(D, G.depth_floor)


def invariance_lp(G: GroupoidPresentation, D: int) -> LPOutcome:
    """Feasibility of a G-invariant probability vector at depth ``D`` (auto-raised)."""
    D = effective_depth(G, D)
    cache = G._cache.setdefault("invariance", {})
    if D in cache:
        return cache[D]
    lp = build_lp(G, D)
    res = lp.solve()
    if res.feasible:
        out = LPOutcome(True, D, lp, measure=MeasureVector(G.shift, D, res.values))
    else:
        out = LPOutcome(False, D, lp, farkas=res.farkas)
    cache[D] = out
    return out


def check_invariant(G: GroupoidPresentation, m: MeasureVector) -> bool:
    values = m.values
    if any(Fraction(x) < 0 for x in values.values()):
        return False
    words = G.shift.words(m.depth)
    if set(values) - set(words):
        return False
    if sum((Fraction(values.get(w, 0)) for w in words), Fraction(0)) != 1:
        return False
    for _, coeffs in invariance_rows(G, m.depth):
        if sum((c * Fraction(values.get(w, 0)) for w, c in coeffs.items()), Fraction(0)) != 0:
            return False
    return True


def recheck(outcome: LPOutcome) -> bool:
    """Independent exact re-check of an LP outcome."""
    if outcome.feasible:
        return check_point(outcome.lp, outcome.measure.values)
    return check_farkas(outcome.lp, outcome.farkas)


def known_empty(G: GroupoidPresentation, D: int) -> bool:
    """True if the invariance LP is already known infeasible at some depth <= D."""
    floor = G.depth_floor
    if len(G.shift.words(floor)) <= MAX_LP_VARIABLES and not invariance_lp(G, floor).feasible:
        return True
    cache = G._cache.get("invariance", {})
    return any(d <= D and not o.feasible for d, o in cache.items())


def max_gap(G: GroupoidPresentation, plus, minus, D: int):
    """Maximize sum(mu(plus)) - sum(mu(minus)) over invariant vectors at depth D.

    Returns ``(value, MeasureVector)`` or ``(None, None)`` when no invariant
    vector exists at that depth.
    """
    D = effective_depth(G, max([D] + [c.depth for c in list(plus) + list(minus)]))
    lp = build_lp(G, D)
    obj: dict = {}
    for sign, sets in ((1, plus), (-1, minus)):
        for c in sets:
            for w in refine(c, D):
                obj[w] = obj.get(w, 0) + sign
    lp.maximize(obj)
    res = lp.solve()
    if not res.feasible:
        return None, None
    return res.objective, MeasureVector(G.shift, D, res.values)


def measure_refute(G: GroupoidPresentation, K: Clopen, V: Clopen, D: int) -> Optional[MeasureVector]:
    """An invariant vector with mu(K) > mu(V), or None."""
    if known_empty(G, D):
        return None
    gap, m = max_gap(G, [K], [V], D)
    if gap is None or gap <= 0:
        return None
    return m


def mg_empty_certificate(G: GroupoidPresentation, max_depth: int) -> Optional[LPOutcome]:
    """First infeasible invariance LP over depths 1..max_depth, or None (unknown)."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    tried = set()
    for D in range(1, max_depth + 1):
        eff = effective_depth(G, D)
        if eff in tried:
            continue
        tried.add(eff)
        out = invariance_lp(G, eff)
        if not out.feasible:
            return out
    return None


def uniform_bernoulli(shift: Subshift, D: int) -> MeasureVector:
    """Uniform product measure at depth D (full shifts only)."""
    if not shift.is_full:
        raise SubshiftError("uniform Bernoulli measure needs a full shift")
    p = Fraction(1, shift.size ** D)
    return MeasureVector(shift, D, {w: p for w in shift.words(D)})


def refutation_depth(G: GroupoidPresentation, sets) -> int:
    return effective_depth(G, max((c.depth for c in sets), default=0) + G.stretch + 2)


def lp_small_enough(G: GroupoidPresentation, D: int) -> bool:
    return len(G.shift.words(D)) <= MAX_LP_VARIABLES
