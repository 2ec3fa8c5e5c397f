"""Type semigroup computations on clopen tuples, plus finitely presented
preordered monoids and their normalized states."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .comparison import (Outcome, search_compare_tuple, search_equivalent,
                         VERIFIED, REFUTED)
from .lp import EQ, LE, LinearProgram, check_farkas, check_point


def tuple_add(a: Sequence, b: Sequence) -> tuple:
    a, b = tuple(a), tuple(b)
    if a and b and a[0].shift is not b[0].shift and a[0].shift != b[0].shift:
        raise ValueError("tuples live on different subshifts")
    return a + b


def tuple_scale(n: int, a: Sequence) -> tuple:
    return tuple(a) * n


def tuple_leq(G, a, b, L, **kw) -> Outcome:
    return search_compare_tuple(G, tuple(a), tuple(b), L, **kw)


def type_equivalent(G, a, b, L, **kw) -> Outcome:
    return search_equivalent(G, tuple(a), tuple(b), L, **kw)


def properly_infinite(G, a, L, **kw) -> Outcome:
    a = tuple(a)
    if not a or all(x.is_empty for x in a):
        raise ValueError("properly_infinite needs a non-empty tuple")
    return tuple_leq(G, a + a, a, L, **kw)


def unperforation_probe(G, a, b, n: int, L: int, **kw) -> dict:
    """Outcomes of (n+1)a <= nb and of a <= b; alarm on a perforation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = tuple(a), tuple(b)
    multiple = tuple_leq(G, tuple_scale(n + 1, a), tuple_scale(n, b), L, **kw)
    single = tuple_leq(G, a, b, L, **kw)
    return {"multiple": multiple, "single": single,
            "alarm": multiple.status == VERIFIED and single.status == REFUTED}


# -- abstract monoids ---------------------------------------------------------

@dataclass
class Relation:
    lhs: dict
    rhs: dict
    name: str = ""

    def __post_init__(self):
        for side in (self.lhs, self.rhs):
            for g, c in side.items():
                if int(c) != c or c < 0:
                    raise ValueError(f"coefficients must be nonnegative integers, got {c}")
        if not self.name:
            self.name = f"{_side(self.lhs)} <= {_side(self.rhs)}"


def _side(d: dict) -> str:
    terms = [(f"{c}{g}" if c != 1 else g) for g, c in sorted(d.items()) if c]
    return " + ".join(terms) or "0"


@dataclass
class MonoidPresentation:
    generators: tuple
    relations: list = field(default_factory=list)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        if not self.generators:
            raise ValueError("a monoid presentation needs at least one generator")
        for r in self.relations:
            for g in list(r.lhs) + list(r.rhs):
                if g not in self.generators:
                    raise ValueError(f"relation {r.name} uses unknown generator {g!r}")


@dataclass
class StateResult:
    feasible: bool
    values: Optional[dict] = None
    farkas: Optional[dict] = None
    lp: Optional[LinearProgram] = None

    def recheck(self) -> bool:
        if self.feasible:
            return check_point(self.lp, self.values)
        return check_farkas(self.lp, self.farkas)


NORMALIZATION = "normalization"


def state_program(M: MonoidPresentation, target: str) -> LinearProgram:
    lp = LinearProgram(list(M.generators))
    for i, r in enumerate(M.relations):
        coeffs: dict = {}
        for g, c in r.lhs.items():
            coeffs[g] = coeffs.get(g, 0) + c
        for g, c in r.rhs.items():
            coeffs[g] = coeffs.get(g, 0) - c
        name = r.name if r.name not in (x.name for x in M.relations[:i]) else f"{r.name} #{i}"
        lp.add_row(name, coeffs, LE, 0)
    lp.add_row(NORMALIZATION, {target: 1}, EQ, 1)
    return lp


def state_lp(M: MonoidPresentation, target: str) -> StateResult:
    """A state f >= 0 respecting every relation with f(target) = 1, or a Farkas proof."""
    if target not in M.generators:
        raise ValueError(f"{target!r} is not a generator")
    lp = state_program(M, target)
    res = lp.solve()
    if res.feasible:
        return StateResult(True, values=res.values, lp=lp)
    return StateResult(False, farkas=res.farkas, lp=lp)


_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)\s*$")


def parse_side(text: str) -> dict:
    out: dict = {}
    text = text.strip()
    if text in ("", "0"):
        return out
    for term in text.split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse term {term.strip()!r}")
        c = int(m.group(1)) if m.group(1) else 1
        out[m.group(2)] = out.get(m.group(2), 0) + c
    return out


def parse_relation(text: str) -> Relation:
    """Parse ``"3x <= 2y"`` or ``"x + y <= 2z"``."""
    if "<=" not in text:
        raise ValueError(f"relation {text!r} must contain '<='")
    left, right = text.split("<=", 1)
    return Relation(parse_side(left), parse_side(right))


def extract_monoid_facts(G, tuples: Sequence, L: int, *, max_coeff: int = 3,
                         max_arity: int = 4, names: Optional[Sequence] = None,
                         **kw) -> MonoidPresentation:
    """Relations sum c_i a_i <= sum d_j a_j whose certificates verify within L."""
    tuples = [tuple(t) for t in tuples]
    if not tuples:
        raise ValueError("extract_monoid_facts needs at least one tuple")
    names = list(names) if names else [f"g{i}" for i in range(len(tuples))]
    sides = []
    for total in range(1, max_coeff + 1):
        for combo in itertools.combinations_with_replacement(range(len(tuples)), total):
            arity = sum(len(tuples[i]) for i in combo)
            if arity <= max_arity:
                sides.append(combo)
    relations = []
    for lhs in sides:
        for rhs in sides:
            if lhs == rhs:
                continue
            a = tuple(x for i in lhs for x in tuples[i])
            b = tuple(x for i in rhs for x in tuples[i])
            res = tuple_leq(G, a, b, L, **kw)
            if res.status == VERIFIED:
                relations.append(Relation(_count(lhs, names), _count(rhs, names)))
    return MonoidPresentation(tuple(names), relations)


def _count(combo, names) -> dict:
    out: dict = {}
    for i in combo:
        out[names[i]] = out.get(names[i], 0) + 1
    return out


def evaluate_state(values: dict, side: dict) -> Fraction:
    return sum((Fraction(values.get(g, 0)) * c for g, c in side.items()), Fraction(0))
