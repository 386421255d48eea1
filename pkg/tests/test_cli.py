import io
import subprocess
import sys
from pathlib import Path

import pytest

from nomix.cli import main

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
DATA = HERE / "data"

# (golden file, argv)
GOLDEN_CASES = [
    ("trunc_stream.out", ["trunc", "--depth", "2", "rec { T = x T } in T"]),
    ("alpha_streams.out", ["alpha", "--depth", "10", r"rec {M = \x. x M} in M", r"rec {N = \y. y N} in N"]),
    ("subst_stream.out", ["subst", "--depth", "3", "rec {T = y T} in T", "y", r"\z.z"]),
    ("check_001.out", ["check", "lambda_001.sig"]),
    ("check_000.out", ["check", "lambda_000.sig"]),
]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("golden, argv", GOLDEN_CASES)
def test_golden(golden, argv):
    code, out, err = run(argv)
    assert code == 0, err
    assert out.encode("utf-8") == (GOLDEN / golden).read_bytes()


def test_golden_via_subprocess():
    golden, argv = GOLDEN_CASES[2]
    res = subprocess.run([sys.executable, "-m", "nomix", *argv], capture_output=True)
    assert res.returncode == 0
    assert res.stdout == (GOLDEN / golden).read_bytes()


def test_check_unguarded_file():
    path = str(DATA / "unguarded.trm")
    code, out, err = run(["check", "lambda_001.sig", path])
    assert code == 1
    assert err == f"{path}:1:5: error: unguarded cycle T -> T\n"
    code, out, err = run(["check", "lambda_111.sig", path])
    assert code == 0
    assert out.splitlines()[-1] == f"{path}: guarded (root T)"


def test_other_commands():
    assert run(["subst", r"\y. y x", "x", "y"])[1] == "\\y'. y' y\n"
    assert run(["dist", "rec T = x T", "rec U = y U"])[1] == "=2^-0\n"
    assert run(["dist", "--alpha", r"\x. x", r"\y. y"])[1] == "<=2^-12\n"
    assert run(["dist", r"\x. x", r"\y. y"])[1] == "=2^-0\n"
    assert run(["fv", "--sig", "lambda_000", r"\x. x z"])[1] == "{z}\n"
    assert run(["support", "--sig", "lambda_000", r"\x. x z"])[1] == "{x, z}\n"
    assert run(["act", "--perm", "(x y)", "--depth", "3", "rec T = x T"])[1] == "y (y (y _))\n"
    assert run(["alpha", "--exact", "rec T = x T", "rec U = y U"])[1] == "false\n"
    assert run(["trunc", "--sig", "rtree", "node(leaf(), node(x, leaf()))"])[1] == "node(leaf(), node(x, leaf()))\n"


def test_file_inputs(tmp_path):
    f = tmp_path / "m.trm"
    f.write_text("rec {\n  M = \\x. x M\n} in M\n", encoding="utf-8")
    code, out, _ = run(["alpha", "--exact", "--file", str(f), r"rec N = \y. y N"])
    assert (code, out) == (0, "true\n")


def test_user_errors():
    code, _, err = run(["trunc", r"\x x"])
    assert code == 1 and err.startswith("<arg1>:1:5: error:")
    code, _, err = run(["trunc", "x", "y"])
    assert code == 1 and "expects 1 input" in err
    code, _, err = run(["--sig", "nope", "trunc", "x"])
    assert code == 1 and err.startswith("error:")
    code, _, err = run(["trunc", "--depth", "-1", "x"])
    assert code == 1
    code, _, err = run(["trunc", "rec T = \\x. T"])
    assert code == 1 and "unguarded" in err
