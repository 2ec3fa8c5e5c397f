import pytest

from etalecomp.bisections import PrefixExchange
from etalecomp.catalog import builtin
from etalecomp.symbolic import Subshift, canonicalize


def C(shift, *words):
    """Clopen from word strings."""
    return canonicalize(shift, [shift.parse_word(w) for w in words])


def PE(shift, *pairs):
    return PrefixExchange(shift, [(shift.parse_word(u), shift.parse_word(v)) for u, v in pairs])


@pytest.fixture(scope="session")
def full2():
    return Subshift(2)


@pytest.fixture(scope="session")
def f2shift():
    return builtin("f2").shift


@pytest.fixture
def o2():
    return builtin("o2")


@pytest.fixture
def trivial2():
    return builtin("trivial2")


@pytest.fixture
def fulldr():
    return builtin("full2")
