import json
import subprocess
import sys

import pytest

from etalecomp.cli import run


def call(*argv):
    code, text = run(list(argv))
    return code, (json.loads(text) if text.startswith("{") else text)


def strip_timing(text):
    d = json.loads(text)
    d.pop("timing")
    return d


def test_paradox_o2():
    code, rep = call("paradox", "--system", "o2", "--set", "", "--bound", "6")
    assert code == 0 and rep["outcome"] == "verified"
    assert [c["type"] for c in rep["certificates"]] == ["transporter", "transporter"]


def test_measures():
    code, rep = call("measures", "--system", "trivial2", "--depth", "3")
    assert code == 0 and rep["outcome"] == "feasible" and rep["measures"]
    code, rep = call("measures", "--system", "o2")
    assert code == 1 and rep["depth"] == 2 and rep["farkas"]


def test_usage_and_parse_errors(capsys):
    assert run(["compare", "--system", "o2", "--from", "", "--to", "00", "--bogus-flag"])[0] == 64
    assert run([])[0] == 64
    assert run(["compare", "--system", "o2", "--from", "2", "--to", "00"])[0] == 65
    assert run(["compare", "--system", "nowhere.sys", "--from", "", "--to", "0"])[0] == 65
    assert run(["compare", "--system", "o2", "--from", "", "--to", "0", "--bound", "-1"])[0] == 64
    assert "etalecomp:" in capsys.readouterr().err


def test_exit_codes():
    assert call("compare", "--system", "trivial2", "--from", "", "--to", "0")[0] == 1
    assert call("contract", "--system", "trivial2", "--set", "0", "--bound", "2")[0] == 1
    assert call("compare", "--system", "o2", "--from", "", "--to", "00", "--bound", "1")[0] == 2


COMMANDS = [
    ("compare", "--system", "o2", "--from", "", "--to", "00"),
    ("compare", "--system", "trivial2", "--from", "", "--to", "0"),
    ("paradox", "--system", "full2", "--set", "0", "--bound", "3"),
    ("scan-pi", "--system", "o2", "--depth", "2", "--bound", "6"),
    ("scan-pi", "--system", "trivial2", "--depth", "1", "--bound", "2"),
    ("filling", "--system", "o2", "--sets", "00", "--bound", "8"),
    ("contract", "--system", "full2", "--set", ""),
    ("measures", "--system", "o2"),
    ("measures", "--system", "trivial2", "--depth", "2"),
    ("semigroup", "leq", "--system", "o2", "--a", "|", "--b", ""),
    ("semigroup", "equiv", "--system", "full2", "--a", "", "--b", "0|1", "--bound", "2"),
    ("semigroup", "proper", "--system", "trivial2", "--a", "0", "--bound", "2"),
    ("semigroup", "state", "--generators", "x,y", "--relation", "3x <= 2y", "--target", "y"),
    ("semigroup", "state", "--generators", "x", "--relation", "2x <= x", "--target", "x"),
    ("semigroup", "facts", "--system", "o2", "--tuples", ""),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:3]))
def test_reports_reverify_and_are_deterministic(argv, tmp_path):
    code, text = run(list(argv))
    assert code in (0, 1, 2)
    again = run(list(argv))[1]
    assert strip_timing(text) == strip_timing(again)
    path = tmp_path / "report.json"
    path.write_text(text, encoding="utf-8")
    vcode, vtext = run(["verify", str(path)])
    assert vcode == 0, json.loads(vtext)["failures"]


def test_verify_detects_tampering(tmp_path):
    _, text = run(["compare", "--system", "o2", "--from", "", "--to", "00"])
    rep = json.loads(text)
    rep["certificates"][0]["target"] = ["01"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rep), encoding="utf-8")
    assert run(["verify", str(path)])[0] == 1
    path.write_text("{not json", encoding="utf-8")
    assert run(["verify", str(path)])[0] == 65


def test_catalog_dump_parses():
    code, text = run(["catalog", "dump", "golden"])
    assert code == 0 and "alphabet 0 1" in text
    code, rep = call("catalog", "list")
    assert "o2" in {s["name"] for s in rep["systems"]}


def test_system_file_flag(tmp_path):
    _, text = run(["catalog", "dump", "o2"])
    p = tmp_path / "o2.sys"
    p.write_text(text, encoding="utf-8")
    code, rep = call("paradox", "--system", str(p), "--set", "")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etalecomp", "measures", "--system", "trivial2",
                           "--depth", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outcome"] == "feasible"
