import pytest

from etalecomp.catalog import BUILTIN, builtin
from etalecomp.sysfile import SystemFileError, dump_system, load_system, parse_system

GOLDEN = """
# golden mean shift, prepend maps
name gm
kind etale
alphabet 0 1
transitions
  1 1
  1 0
generator s0
  ε -> 0
generator s1
  0 -> 10
"""


def test_parse_text():
    G = parse_system(GOLDEN)
    assert G.name == "gm" and G.kind == "etale"
    assert G.shift.transitions == ((1, 1), (1, 0))
    assert list(G.generators) == ["s0", "s1"]


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_builtin_round_trip(name):
    G = builtin(name)
    H = parse_system(dump_system(G))
    assert H.shift == G.shift
    assert H.generators == G.generators
    assert H.kind == G.kind


@pytest.mark.parametrize("text, line", [
    ("alphabet 0 1\ngenerator g\n  0 -> 2\n", 3),
    ("alphabet 0 1\ntransitions\n  1 1\n  1 x\n", 4),
    ("alphabet 0 1\ngenerator g\n  0 => 1\n", 3),
    ("alphabet 0 1\nbogus\n", 2),
    ("kind maybe\n", 1),
])
def test_errors_carry_line(text, line):
    with pytest.raises(SystemFileError) as info:
        parse_system(text)
    assert info.value.line == line


def test_invalid_generator_reports_its_line():
    with pytest.raises(SystemFileError, match="not a prefix code") as info:
        parse_system("alphabet 0 1\ngenerator ok\n  0 -> 0\ngenerator bad\n  0 -> 1\n  00 -> 11\n")
    assert info.value.line == 4


def test_missing_alphabet():
    with pytest.raises(SystemFileError):
        parse_system("name x\n")


def test_load_from_path(tmp_path):
    p = tmp_path / "gm.sys"
    p.write_text(GOLDEN, encoding="utf-8")
    assert load_system(str(p)).name == "gm"
    with pytest.raises(FileNotFoundError):
        load_system(str(tmp_path / "missing.sys"))
