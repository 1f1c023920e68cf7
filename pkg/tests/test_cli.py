import io
import pathlib
import subprocess
import sys

import pytest

from hodgering.cli import run_command
from hodgering.selftest import NEGATIVE_FIXTURES

DATA = pathlib.Path(__file__).parent / "data"


def run(*argv, stdin=None):
    out = io.StringIO()
    code = run_command(list(argv), stdin=io.StringIO(stdin) if stdin else None, stdout=out)
    return code, out.getvalue()


def test_construct_f1():
    code, out = run("construct", "f1", "--clifford")
    assert code == 0
    assert "g = 4" in out
    assert "a: -4*e1e2" in out or "a: 4*e1e2" in out
    assert out.rstrip().endswith("exit status: 0")


def test_construct_is_deterministic():
    assert run("construct", "f1", "--seed", "7") == run("construct", "f1", "--seed", "7")


def test_construct_voisin():
    code, out = run("construct", "voisin")
    assert code == 0
    assert "dim M = 8" in out
    # the W ⊕ W̄ block and the single M block are both polarized
    assert "PASS polarization.h_a_positive_on_W" in out
    assert out.count("PASS polarization.block_positive[") == 1


@pytest.mark.parametrize("name", sorted(NEGATIVE_FIXTURES))
def test_broken_fixtures(name):
    _, expected, invariant = NEGATIVE_FIXTURES[name]
    code, out = run("validate", str(DATA / f"{name}.fixture"))
    assert code == expected == 2
    assert invariant in out


def test_validate_good_fixture():
    code, out = run("validate", "f1")
    assert code == 0


def test_stdin_fixture():
    text = (DATA / "bad_eta.fixture").read_text()
    assert run("validate", "-", stdin=text)[0] == 2


def test_config_errors():
    assert run("frobnicate", "f1")[0] == 3
    assert run()[0] == 3
    assert run("construct", "no/such/file")[0] == 3
    assert run("construct", "f1", "--seed", "x")[0] == 3


def test_center_and_clifford():
    code, out = run("center", "f1")
    assert code == 0 and "e1e2e3" in out
    code, out = run("clifford", "f2")
    assert code == 0 and "dimension 16" in out


def test_universal_self():
    code, out = run("universal", "f1", "self")
    assert code == 0
    assert "PASS sum_surjective" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hodgering.cli", "validate", str(DATA / "asymmetric_gram.fixture")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "gram_symmetric" in proc.stdout
