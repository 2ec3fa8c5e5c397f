from fractions import Fraction

import pytest

from etalecomp.semigroups import (MonoidPresentation, Relation,
                                  evaluate_state, extract_monoid_facts,
                                  parse_relation, properly_infinite, state_lp,
                                  tuple_add, tuple_leq, tuple_scale,
                                  type_equivalent, unperforation_probe)
from etalecomp.symbolic import Subshift

from conftest import C


def test_tuple_arithmetic(full2):
    a, b = (C(full2, "0"),), (C(full2, "1"), full2.whole())
    assert tuple_add(a, b) == a + b
    assert tuple_scale(3, a) == a * 3
    with pytest.raises(ValueError):
        tuple_add(a, (Subshift(3).whole(),))


def test_leq_examples(o2, trivial2):
    S = o2.shift
    assert tuple_leq(o2, (C(S, "0"), C(S, "1")), (S.whole(),), 1).verified
    assert tuple_leq(o2, (S.whole(), S.whole()), (S.whole(),), 6).verified
    T = trivial2.shift.whole()
    assert tuple_leq(trivial2, (T, T), (T,), 3).refuted


def test_type_equivalent(fulldr, trivial2):
    S = fulldr.shift
    assert type_equivalent(fulldr, (S.whole(),), (C(S, "0"), C(S, "1")), 2).verified
    T = trivial2.shift
    assert type_equivalent(trivial2, (T.whole(),), (C(T, "0"),), 3).refuted


def test_properly_infinite(o2, fulldr, trivial2):
    assert properly_infinite(o2, (o2.shift.whole(),), 6).verified
    assert properly_infinite(fulldr, (C(fulldr.shift, "0"),), 3).verified
    assert properly_infinite(trivial2, (trivial2.shift.whole(),), 3).refuted
    with pytest.raises(ValueError):
        properly_infinite(o2, (), 3)


def test_probe(o2, trivial2):
    res = unperforation_probe(o2, (o2.shift.whole(),), (C(o2.shift, "0"),), 2, 6)
    assert res["multiple"].verified and res["single"].verified and not res["alarm"]
    T = trivial2.shift.whole()
    res = unperforation_probe(trivial2, (T,), (T,), 1, 3)
    assert res["multiple"].refuted and res["single"].verified and not res["alarm"]
    res = unperforation_probe(o2, (o2.shift.empty(),), (C(o2.shift, "0"),), 1, 1)
    assert res["multiple"].verified and res["single"].verified


def test_state_lp_examples():
    res = state_lp(MonoidPresentation(("x",), [parse_relation("2x <= x")]), "x")
    assert not res.feasible and res.recheck()
    res = state_lp(MonoidPresentation(("x",)), "x")
    assert res.feasible and res.values["x"] == 1 and res.recheck()
    M = MonoidPresentation(("x", "y"), [parse_relation("3x <= 2y")])
    res = state_lp(M, "y")
    assert res.feasible and res.values["y"] == 1 and res.values["x"] <= Fraction(2, 3)
    assert res.recheck()
    with pytest.raises(ValueError):
        state_lp(M, "z")


def test_parse_relation():
    r = parse_relation("x + 2y <= 3 z")
    assert r.lhs == {"x": 1, "y": 2} and r.rhs == {"z": 3}
    assert r.name == "x + 2y <= 3z"
    with pytest.raises(ValueError):
        parse_relation("x < y")
    with pytest.raises(ValueError):
        Relation({"x": -1}, {})
    with pytest.raises(ValueError):
        MonoidPresentation(())
    with pytest.raises(ValueError):
        MonoidPresentation(("x",), [parse_relation("y <= x")])
    assert evaluate_state({"x": Fraction(1, 2)}, {"x": 3}) == Fraction(3, 2)


def test_extract_facts(o2, trivial2):
    S = trivial2.shift
    M = extract_monoid_facts(trivial2, [(C(S, "0"),), (C(S, "1"),), (S.whole(),)], 1)
    names = {r.name for r in M.relations}
    assert "g0 <= g2" in names
    assert "g0 + g1 <= g2" in names and "g2 <= g0 + g1" in names
    M = extract_monoid_facts(o2, [(o2.shift.whole(),)], 6)
    assert "2g0 <= g0" in {r.name for r in M.relations}
    assert not state_lp(M, "g0").feasible
    with pytest.raises(ValueError):
        extract_monoid_facts(o2, [], 3)
