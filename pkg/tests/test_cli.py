import io
import json
import subprocess
import sys

import pytest

from frobstrat.cli import run

CURVE = '{"p":3,"m":1,"g":2,"f":[-1,-1,-1,-1,-1]}'


def _run(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def _json(argv):
    code, text = _run(argv + ["--json"])
    return code, json.loads(text)


def test_info():
    code, doc = _json(["info", "--curve", CURVE])
    assert code == 0
    assert doc["command"] == "info" and set(doc) == {"command", "curve", "results", "checks"}
    assert doc["results"]["genus"] == 2 and doc["results"]["smooth"]
    assert doc["results"]["hasse_witt_rank"] == 1


def test_line_bundle():
    code, doc = _json(["line-bundle", "--curve", '{"p":3,"m":1,"g":2,"f":[1,1,0,1,-1]}'])
    assert code == 0 and doc["results"]["h1_str"] == 0


def test_exit_codes(tmp_path):
    assert _run(["info", "--curve", '{"p":3,"m":1,"g":2,"f":[0,1,1,1,1]}'])[0] == 2
    assert _run(["info", "--curve", '{"p":3,"g":2,"f":[1,1'])[0] == 2
    assert _run(["info", "--curve", str(tmp_path / "missing.json")])[0] == 2
    assert _run(["info", "--curve", '{"p":4,"g":2,"f":[1,1,1,1,1]}'])[0] == 2
    assert _run(["tower", "--curve", CURVE, "--tower-depth", "9"])[0] == 2
    assert _run(["tower", "--curve", CURVE, "--ext-cap", "0"])[0] == 2
    assert _run(["tower", "--curve", '{"p":3,"g":1,"f":[1,0,1]}'])[0] == 2
    assert _run(["nosuch"])[0] == 2


def test_consistency_failure_exit_code(monkeypatch):
    from frobstrat import cli
    from frobstrat.errors import GluingViolated

    def boom(X, args):
        raise GluingViolated("forced")
    monkeypatch.setitem(cli.CURVE_COMMANDS, "info", boom)
    assert _run(["info", "--curve", CURVE])[0] == 3


def test_curve_file(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(CURVE)
    code, doc = _json(["hasse-witt", "--curve", str(f)])
    assert code == 0 and doc["results"]["matrix"] == [[2, 2], [2, 2]]


def test_tower_and_nilpotency():
    code, doc = _json(["tower", "--curve", CURVE, "--tower-depth", "5"])
    assert code == 0
    assert [r["h1_ss"] for r in doc["results"]["levels"]] == [1] * 5
    code, doc = _json(["nilpotency", "--curve", CURVE, "--tower-depth", "4"])
    assert [r["order"] for r in doc["results"]["levels"]] == [1, 1, 2, 2]


def test_h1str_levels():
    for level in (1, 2, 3):
        code, doc = _json(["h1str", "--curve", CURVE, "--level", str(level)])
        assert code == 0 and doc["results"]["h1_str"] == 1


def test_json_is_byte_stable():
    a = _run(["tower", "--curve", CURVE, "--json"])[1]
    b = _run(["tower", "--curve", CURVE, "--json"])[1]
    assert a == b


def test_scan_partition_independent():
    a = _run(["scan", "--p", "3", "--g", "2", "--fix", "a3=0", "--json"])[1]
    b = _run(["scan", "--p", "3", "--g", "2", "--fix", "a3=0", "--workers", "3", "--json"])[1]
    assert a == b
    doc = json.loads(a)
    assert doc["results"]["tuples"] == 81
    assert all(c["line_bundle_h1_str"] == 0 for c in doc["results"]["curves"])
    assert _run(["scan", "--fix", "a9=0"])[0] == 2


def test_text_output():
    code, text = _run(["tower", "--curve", CURVE])
    assert code == 0 and "h1_ss" in text and "checks: 2/2 ok" in text


def test_appendix_depth_five():
    code, doc = _json(["appendix", "--tower-depth", "5"])
    assert code == 0
    keys = {r["key"] for r in doc["results"]["rows"]}
    assert "tower.bound.5" in keys


def test_appendix_p5():
    code, doc = _json(["appendix", "--p", "5", "--tower-depth", "3"])
    assert code == 0
    rows = {r["key"]: r["status"] for r in doc["results"]["rows"]}
    assert rows["pairing.adjoint"] == "PASS" and rows["pairing.perfect"] == "PASS"
    assert rows["hw.formula"] == "NOT-APPLICABLE"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "frobstrat", "info", "--curve", CURVE],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "hasse_witt_rank: 1" in proc.stdout
