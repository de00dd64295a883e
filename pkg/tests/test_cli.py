"""Golden-file tests for the command line.

Set HEISCONJ_UPDATE_GOLDEN=1 to rewrite tests/golden/ from the current output.
"""

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from heisconj.cli import run_command
from heisconj.documents import catalog_dir, parse_element, parse_group_spec

GOLDEN = Path(__file__).parent / "golden"
CAT = catalog_dir()
UPDATE = os.environ.get("HEISCONJ_UPDATE_GOLDEN") == "1"


def cat(name):
    return str(CAT / f"{name}.json")


def el(p, c, n, k):
    return json.dumps({"p": p, "c": c, "n": n, "k": k})


Z = ["--integer"]
S64 = ["--group", cat("small64")]

# name -> (argv, expected exit code)
CASES = {
    "z_mul": (Z + ["mul", el(1, 0, 1, 1), el(0, 0, 1, 0)], 0),
    "z_inv": (Z + ["inv", el(0, 0, 1, 1)], 0),
    "z_conj": (Z + ["conj", el(0, 0, 1, 0), el(0, 0, 3, 1)], 0),
    "z_invariants_odd": (Z + ["invariants", el(5, 2, 3, 1)], 0),
    "z_invariants_even_json": (Z + ["--json", "invariants", el(1, 0, 2, 2)], 0),
    "z_invariants_degenerate": (Z + ["invariants", el(3, 1, 0, 2)], 0),
    "z_is_conjugate_witness": (Z + ["is-conjugate", el(0, 0, 3, 1), el(-1, -3, 3, 1), "--witness"], 0),
    "z_is_conjugate_oracle_json": (Z + ["is-conjugate", el(0, 0, 3, 1), el(1, 1, 3, 1),
                                        "--oracle", "--witness", "--json"], 0),
    "z_classes_refused": (Z + ["classes"], 2),
    "s64_mul": (S64 + ["mul", el([1], [3], [1], [1]), el([2], [1], [1], [0])], 0),
    "s64_inv_json": (S64 + ["--json", "inv", el([1], [3], [1], [1])], 0),
    "s64_conj": (S64 + ["conj", el([0], [0], [0], [1]), el([1], [0], [1], [0])], 0),
    "s64_invariants": (S64 + ["invariants", el([1], [3], [1], [1])], 0),
    "s64_is_conjugate": (S64 + ["is-conjugate", el([1], [0], [1], [0]), el([3], [2], [1], [0]),
                                "--oracle", "--witness"], 0),
    "s64_classes": (S64 + ["classes"], 0),
    "s64_classes_json": (S64 + ["classes", "--json"], 0),
    "heis3_classes": (["--group", cat("heis3"), "classes"], 0),
    "swap64_classes": (["--group", cat("swap64"), "classes"], 0),
    "klein128_classes": (["--group", cat("klein128"), "classes"], 0),
    "odd81_classes": (["--group", cat("odd81"), "classes"], 0),
    "odd81_invariants": (["--group", cat("odd81"), "invariants", el([1], [2], [1], [0])], 0),
    "odd729_classes": (["--group", cat("odd729"), "classes"], 0),
    "odd729_invariants_json": (["--group", cat("odd729"), "--json", "invariants",
                                el([4], [5], [1], [2])], 0),
    "z4z8_classes": (["--group", cat("z4z8_1024"), "classes"], 0),
    "no_extension": (["--group", cat("no_extension"), "classes"], 2),
    "selftest_small": (["selftest", "--box", "1", "--congruence-max", "5",
                        "--catalog", cat("heis3")], 0),
    "selftest_small_json": (["selftest", "--json", "--box", "1", "--congruence-max", "5",
                             "--catalog", cat("heis3")], 0),
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, want_code = CASES[name]
    code, out, err = run(argv)
    path = GOLDEN / f"{name}.txt"
    text = f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"
    if UPDATE:
        path.write_text(text, encoding="utf-8")
    assert code == want_code, err
    assert text == path.read_text(encoding="utf-8")


def test_documented_examples():
    code, out, _ = run(Z + ["mul", el(1, 0, 1, 1), el(0, 0, 1, 0)])
    assert code == 0 and json.loads(out) == {"p": 2, "c": 1, "n": 2, "k": 1}
    code, out, _ = run(Z + ["--json", "is-conjugate", el(0, 0, 3, 1), el(-1, -3, 3, 1), "--witness"])
    doc = json.loads(out)
    assert code == 0 and doc["conjugate"] is True
    assert doc["witness"] == {"p": 0, "c": 0, "n": 1, "k": 0}
    code, out, _ = run(S64 + ["--json", "classes"])
    doc = json.loads(out)
    assert doc["order"] == 64 and sum(c["size"] for c in doc["classes"]) == 64
    assert doc["class_count"] == doc["oracle_class_count"] == 28


def test_exit_codes(tmp_path):
    assert run([])[0] == 1
    assert run(["--integer", "frobnicate"])[0] == 1
    assert run(["mul", el(0, 0, 0, 0), el(0, 0, 0, 0)])[0] == 1
    assert run(["--integer", "--group", cat("small64"), "inv", el(0, 0, 0, 0)])[0] == 1
    assert run(Z + ["inv", '{"p": 1'])[0] == 2
    assert run(Z + ["inv", '{"p": 1}'])[0] == 2
    assert run(S64 + ["inv", el([1, 2], [0], [0], [0])])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = run(["--group", str(bad), "classes"])
    assert code == 2 and "malformed JSON" in err
    assert run(["--group", str(tmp_path / "missing.json"), "classes"])[0] == 2
    code, _, err = run(["--group", cat("no_extension"), "inv", el([0], [0], [0], [0])])
    assert code == 2 and "no-graded-extension" in err


def test_validation_diagnostics(tmp_path):
    spec = {"N": {"moduli": [2]}, "P": {"moduli": [4]}, "C": {"moduli": [4]},
            "pairing": [[[1]]], "K": {"moduli": [1], "generators": [{"k_p": [[0]]}]}}
    path = tmp_path / "pairing.json"
    path.write_text(json.dumps(spec), encoding="utf-8")
    code, _, err = run(["--group", str(path), "classes"])
    assert code == 2 and "pairing not well-defined at (0,0)" in err
    spec["pairing"] = [[[2]]]
    spec["K"] = {"moduli": [3], "generators": [{"k_p": [[2]]}]}
    path.write_text(json.dumps(spec), encoding="utf-8")
    code, _, err = run(["--group", str(path), "classes"])
    assert code == 2 and "K generator order violated" in err


def test_stdin_spec(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"model": "integer"})))
    code, out, _ = run(["--group", "-", "inv", el(0, 0, 1, 1)])
    assert code == 0 and json.loads(out) == {"p": 1, "c": -1, "n": -1, "k": -1}


def test_oracle_flag_agrees_everywhere(catalog):
    G = catalog["swap64"].group
    from heisconj.documents import element_to_json
    xs = list(G.elements())[::9]
    for x in xs:
        for y in xs:
            a, b = json.dumps(element_to_json(x)), json.dumps(element_to_json(y))
            plain = run(["--group", cat("swap64"), "is-conjugate", a, b])
            checked = run(["--group", cat("swap64"), "is-conjugate", a, b, "--oracle"])
            assert plain[0] == checked[0] == 0
            assert plain[1].splitlines()[0] == checked[1].splitlines()[0]


def test_json_round_trip(catalog):
    from heisconj.documents import element_to_json
    for name in ("small64", "klein128", "odd729"):
        m = parse_group_spec(cat(name))
        for x in list(m.group.elements())[::17]:
            code, out, _ = run(["--group", cat(name), "inv", json.dumps(element_to_json(x))])
            assert code == 0
            y = parse_element(m, out)
            assert json.loads(json.dumps(element_to_json(y))) == json.loads(out)
            code, out2, _ = run(["--group", cat(name), "inv", out])
            assert parse_element(m, out2) == x


def test_selftest_deterministic(tmp_path):
    argv = ["selftest", "--seed", "7", "--box", "1", "--congruence-max", "6",
            "--catalog", cat("small64")]
    first, second = run(argv), run(argv)
    assert first[0] == 0
    assert first == second


def test_selftest_reports_mismatch(monkeypatch):
    import heisconj.certify as certify
    real = certify.check_polarization

    def broken(models, z_range=20):
        res = real(models, z_range)
        res.ok = False
        return res
    monkeypatch.setattr(certify, "check_polarization", broken)
    code, out, _ = run(["selftest", "--box", "1", "--congruence-max", "4",
                        "--catalog", cat("heis3")])
    assert code == 3 and "[FAIL]" in out


def test_console_entry_points():
    argv = ["--integer", "mul", el(1, 0, 1, 1), el(0, 0, 1, 0)]
    for cmd in ([sys.executable, "-m", "heisconj"], ):
        proc = subprocess.run(cmd + argv, capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == {"p": 2, "c": 1, "n": 2, "k": 1}
    proc = subprocess.run([sys.executable, "-m", "heisconj", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "modulus 0" in proc.stdout.lower()
