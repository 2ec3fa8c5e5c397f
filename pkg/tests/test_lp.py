from fractions import Fraction

from hypothesis import given, settings, strategies as st

from etalecomp.lp import EQ, LE, LinearProgram, check_farkas, check_point

from fm_oracle import fm_maximum


def o2_program():
    lp = LinearProgram(["n0", "n1", "n10", "n11"])
    lp.add_row("phi", {"n0": 1, "n1": -1}, EQ, 0)
    lp.add_row("psi a", {"n0": 1, "n10": -1}, EQ, 0)
    lp.add_row("psi b", {"n10": 1, "n11": -1}, EQ, 0)
    lp.add_row("split", {"n1": 1, "n10": -1, "n11": -1}, EQ, 0)
    lp.add_row("mass", {"n0": 1, "n1": 1}, EQ, 1)
    return lp


def test_hand_solved_program_is_infeasible():
    lp = o2_program()
    res = lp.solve()
    assert not res.feasible
    assert check_farkas(lp, res.farkas)
    assert fm_maximum(lp)[0] == "infeasible"


def test_two_thirds():
    lp = LinearProgram(["x", "y"])
    lp.add_row("r", {"x": 3, "y": -2}, LE, 0)
    lp.add_row("n", {"y": 1}, EQ, 1)
    lp.maximize({"x": 1})
    res = lp.solve()
    assert res.feasible and res.objective == Fraction(2, 3)
    assert check_point(lp, res.values)


def test_small_farkas():
    lp = LinearProgram(["x"])
    lp.add_row("r", {"x": 1}, LE, 0)
    lp.add_row("n", {"x": 1}, EQ, 1)
    res = lp.solve()
    assert not res.feasible
    assert res.farkas == {"r": 1, "n": -1}


def test_bad_certificates_rejected():
    lp = o2_program()
    assert not check_farkas(lp, {"mass": 1})
    assert not check_point(lp, {"n0": Fraction(1, 2), "n1": Fraction(1, 2), "n10": 0, "n11": 0})


def test_unbounded():
    lp = LinearProgram(["x", "y"])
    lp.add_row("r", {"x": 1, "y": -1}, LE, 1)
    lp.maximize({"x": 1})
    res = lp.solve()
    assert res.feasible and res.unbounded
    assert fm_maximum(lp)[0] == "unbounded"


@st.composite
def programs(draw):
    n = draw(st.integers(1, 4))
    names = [f"x{i}" for i in range(n)]
    lp = LinearProgram(list(names))
    coef = st.integers(-3, 3)
    for r in range(draw(st.integers(1, 4))):
        coeffs = {v: draw(coef) for v in names}
        lp.add_row(f"r{r}", coeffs, draw(st.sampled_from([EQ, LE])), draw(st.integers(-3, 3)))
    # a bounding row keeps most programs bounded
    if draw(st.booleans()):
        lp.add_row("box", {v: 1 for v in names}, LE, draw(st.integers(0, 5)))
    lp.maximize({v: draw(coef) for v in names})
    return lp


@settings(max_examples=300, deadline=None)
@given(programs())
def test_simplex_agrees_with_fourier_motzkin(lp):
    res = lp.solve()
    status, value = fm_maximum(lp)
    if status == "infeasible":
        assert not res.feasible
        assert check_farkas(lp, res.farkas)
    elif status == "unbounded":
        assert res.feasible and res.unbounded
    else:
        assert res.feasible and not res.unbounded
        assert res.objective == value
        assert check_point(lp, res.values)
