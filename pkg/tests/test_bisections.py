import itertools

import pytest
from hypothesis import given, settings, strategies as st

from etalecomp.bisections import (GroupoidPresentation, PrefixExchange,
                                  ResourceError, apply, compose, enumerate_elements,
                                  enumeration_stable, identity, invert,
                                  refine_exchange, restrict, validate)
from etalecomp.catalog import builtin
from etalecomp.symbolic import Subshift, canonicalize

from conftest import C, PE

FULL2 = Subshift(2)
POINTS = list(itertools.product((0, 1), repeat=10))


# -- independent point-level oracle on the full 2-shift ----------------------

def img(pairs, x):
    for u, v in pairs:
        if x[:len(u)] == u:
            return v + x[len(u):]
    return None


def member(words, x):
    return any(x[:len(w)] == w for w in words)


def prefix_codes(max_len=4):
    """Complete prefix codes drawn as random binary trees."""
    @st.composite
    def build(draw, prefix=()):
        if len(prefix) >= max_len or not draw(st.booleans()):
            return [prefix]
        return draw(build(prefix + (0,))) + draw(build(prefix + (1,)))
    return build()


@st.composite
def exchanges(draw, partial=True):
    src = draw(prefix_codes())
    tgt = draw(prefix_codes())
    n = min(len(src), len(tgt))
    src = draw(st.permutations(src))[:n]
    tgt = draw(st.permutations(tgt))[:n]
    pairs = list(zip(src, tgt))
    if partial:
        keep = draw(st.lists(st.booleans(), min_size=n, max_size=n))
        pairs = [p for p, k in zip(pairs, keep) if k]
    return PrefixExchange(FULL2, pairs)


@st.composite
def clopens(draw):
    code = draw(prefix_codes())
    keep = draw(st.lists(st.booleans(), min_size=len(code), max_size=len(code)))
    return canonicalize(FULL2, [w for w, k in zip(code, keep) if k])


# -- worked examples -----------------------------------------------------------

def test_psi_table_is_valid(full2):
    assert validate(PE(full2, ("0", "11"), ("11", "10"), ("10", "0"))) is None


def test_prefix_code_violation(full2):
    assert validate(PE(full2, ("0", "1"), ("00", "11"))) == "source not a prefix code"
    assert validate(PE(full2, ("0", "1"), ("1", "10"))) == "target not a prefix code"
    assert validate(PE(full2, ("0", "1"), ("0", "0"))) == "duplicate source word"


def test_follower_mismatch(f2shift):
    assert validate(PE(f2shift, ("a", "b"))).startswith("follower mismatch")


def test_source_range_apply(full2):
    pe = PE(full2, ("", "0"))
    assert pe.source.is_whole
    assert pe.range.format() == ["0"]
    assert apply(pe, full2.whole()).format() == ["0"]
    assert invert(pe) == PE(full2, ("0", ""))


def test_compose_prepends(full2):
    assert compose(PE(full2, ("", "0")), PE(full2, ("", "1"))) == PE(full2, ("", "01"))


def test_compose_cap(full2):
    f = PE(full2, ("", "0"))
    g = f
    with pytest.raises(ResourceError):
        for _ in range(40):
            g = compose(f, g)


def test_restrict(full2):
    psi = PE(full2, ("0", "11"), ("11", "10"), ("10", "0"))
    r = restrict(psi, C(full2, "0"))
    assert r == PE(full2, ("0", "11"))
    assert restrict(psi, C(full2, "110")) == PE(full2, ("110", "100"))


def test_refine_psi():
    psi = builtin("o2").generators["psi"]
    assert len(refine_exchange(psi, 3).pairs) == 6
    assert refine_exchange(identity(FULL2), 1).pairs == (((0,), (0,)), ((1,), (1,)))
    assert refine_exchange(psi, 3) == psi


def test_enumeration_counts():
    assert len(enumerate_elements(builtin("o2"), 1)) == 4
    assert len(enumerate_elements(builtin("full2"), 1)) == 5
    triv = builtin("trivial2")
    assert [e.exchange for e in enumerate_elements(triv, 5)] == [identity(triv.shift)]
    assert enumeration_stable(triv, 1)


def test_enumeration_words_evaluate():
    G = builtin("o2")
    for el in enumerate_elements(G, 4):
        assert G.evaluate(el.word) == el.exchange


def test_presentation_rejects_invalid_generator():
    G = GroupoidPresentation(FULL2, {"bad": PE(FULL2, ("0", "1"))}, kind="group")
    assert "not a total" in G.validate()


# -- properties --------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(exchanges(), clopens())
def test_apply_matches_points(pe, c):
    out = apply(pe, c)
    for x in POINTS:
        expect = any(x[:len(v)] == v and member(c.words, u + x[len(v):]) for u, v in pe.pairs)
        assert member(out.words, x) == expect


@settings(max_examples=80, deadline=None)
@given(exchanges(), exchanges())
def test_compose_matches_points(f, g):
    h = compose(f, g)
    for x in POINTS:
        gx = img(g.pairs, x)
        want = img(f.pairs, gx) if gx is not None else None
        got = img(h.pairs, x)
        assert (want is None) == (got is None)
        if got is not None:
            n = min(len(want), len(got))
            assert want[:n] == got[:n]


@settings(max_examples=60, deadline=None)
@given(exchanges(), exchanges(), exchanges())
def test_compose_associative(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@settings(max_examples=60, deadline=None)
@given(exchanges())
def test_inverse_laws(pe):
    assert invert(invert(pe)) == pe
    assert compose(invert(pe), pe) == identity(FULL2, pe.source)
    assert compose(pe, invert(pe)) == identity(FULL2, pe.range)
    assert compose(pe, compose(invert(pe), pe)) == pe


@settings(max_examples=60, deadline=None)
@given(exchanges(), st.integers(0, 6))
def test_refine_keeps_the_map(pe, d):
    r = refine_exchange(pe, d)
    assert r == pe
    assert all(max(len(u), len(v)) >= d for u, v in r.pairs)
    for x in POINTS[::7]:
        a, b = img(pe.pairs, x), img(r.pairs, x)
        assert (a is None) == (b is None)


@st.composite
def raw_pairs(draw):
    words = st.lists(st.integers(0, 1), max_size=4).map(tuple)
    return PrefixExchange(FULL2, draw(st.lists(st.tuples(words, words), min_size=1, max_size=5)))


@settings(max_examples=150, deadline=None)
@given(raw_pairs())
def test_validate_matches_point_oracle(pe):
    ok = True
    for x in itertools.product((0, 1), repeat=8):
        if sum(x[:len(u)] == u for u, _ in pe.pairs) > 1:
            ok = False
        if sum(x[:len(v)] == v for _, v in pe.pairs) > 1:
            ok = False
    assert (validate(pe) is None) == ok
