import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from linlog.cli import run

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def test_height_schmidt_plane():
    code, body = call("height", "schmidt", "--subspace", INPUTS / "plane111.json")
    assert code == 0
    assert body["results"]["height"]["arg"] == 3 and body["results"]["height"]["half"]
    assert body["provenance"]["height"] == "exact"


def test_height_weil_vector():
    code, body = call("height", "weil", "--vector", "2,4,6")
    assert code == 0 and body["results"]["height"]["arg"] == 3


def test_fact_check():
    code, body = call("fact", "check", "--poly", "X^2*Y - X", "--b", "1")
    assert code == 0
    assert body["results"]["integrality"]["vanishing_order"] == 1


def test_bound_u0_example():
    code, body = call("bound", "u0", "--input", INPUTS / "ex_gm.json")
    assert code == 0
    bound = body["results"]["bound"]
    # point 2 on G_m, y = 1, D = a = 1, window 10, radius e: h(2) = |log 2| = log 2
    log2 = math.log(2)
    expected = (1 + math.log(math.e + 1)) * (1 + 10 * log2 + math.e * log2)
    assert bound["value"] == pytest.approx(expected, rel=1e-12)
    assert bound["enclosure"][0] <= bound["value"] <= bound["enclosure"][1]
    assert all(c["holds"] for c in body["results"]["conditions"])


def test_params_scale_with_C0(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text("C0 = 4\n")
    code, body = call("--config", cfg, "params", "--input", INPUTS / "ex_gm.json")
    assert code == 0
    ps = body["results"]["parameters"]
    assert ps["S0"] == 64 * ps["a"]


@pytest.mark.parametrize("argv", [
    ["siegel", "basis", "--subspace", INPUTS / "plane111.json"],
    ["group", "multidegree", "--input", INPUTS / "subtorus.json", "--check"],
    ["group", "select-subgroup", "--input", INPUTS / "select.json"],
    ["bound", "u1", "--input", INPUTS / "ultra.json"],
    ["bound", "simple", "--b", "10", "--hp", "2"],
    ["bound", "optimize-e", "--input", INPUTS / "ex_gm.json"],
    ["interp", "check-arch", "--sample", INPUTS / "arch_sample.json"],
    ["interp", "check-padic", "--sample", INPUTS / "padic_sample.json"],
    ["auxsys", "rank", "--spec", INPUTS / "aux_4x4.json"],
    ["auxsys", "construct", "--spec", INPUTS / "aux_construct.json"],
    ["auxsys", "construct", "--spec", INPUTS / "aux_diag.json"],
    ["poly", "delta", "--n", "3"],
    ["poly", "matveev", "--d-flat", "2", "--d0", "4"],
    ["poly", "weight", "--d0", "3", "--T", "1", "--S", "2"],
])
def test_commands_succeed_deterministically(argv):
    c1, b1 = call(*argv)
    c2, b2 = call(*argv)
    assert c1 == 0 and b1 == b2


def test_zero_kernel_is_error():
    code, body = call("auxsys", "construct", "--spec", INPUTS / "aux_4x4.json")
    assert code == 1 and body["error"] == "DomainError"


def test_usage_errors():
    assert call("nonsense")[0] == 64
    assert call("height", "weil", "--bogus")[0] == 64


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("nope = 1\n")
    assert call("--config", cfg, "bound", "simple")[0] == 78


def test_selftest_quick_subset():
    code, body = call("--compact", "selftest", "--only", "2,3", "--strict")
    assert code == 0 and body["results"]["all_passed"]


def test_selftest_tamper_fails_strict():
    code, body = call("selftest", "--only", "1", "--quick", "--tamper-delta", "--strict")
    assert code == 2
    crit = body["results"]["criteria"][0]
    assert not crit["passed"] and crit["detail"]["failures"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "linlog", "--compact", "bound", "simple", "--b", "10"],
                         capture_output=True, text=True, env=dict(os.environ))
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"].startswith("bound")
