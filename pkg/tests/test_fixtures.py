import io
from fractions import Fraction

import pytest

from hodgering.errors import ParseError, ValidationError
from hodgering.fixtures import (
    builtin,
    load_fixture,
    normalize,
    parse_fixture,
    serialize,
    voisin_omega,
    voisin_operators,
    voisin_weight1,
)
from hodgering.hodge import validate_weight1
from hodgering.linalg import bilinear, matvec
from hodgering.scalars import RealQuad

F1_TEXT = """name f1   # the smallest example
field d=1
rank 3
gram
  1 0 0
  0 1 0
  0 0 -1
h20
  1 {re:[0,0],im:[1,0]} 0
options clifford=true
"""


def test_builtin_f1():
    fx = builtin("f1")
    assert fx.rank == 3
    assert fx.gram == [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    assert fx.option("clifford") == "true"


@pytest.mark.parametrize("name", ["f1", "f2", "voisin"])
def test_round_trip(name):
    text = serialize(builtin(name))
    assert serialize(parse_fixture(text)) == text
    assert normalize(text) == text


def test_comments_and_spacing_normalize():
    assert normalize(F1_TEXT) == serialize(builtin("f1"))


def test_missing_gram():
    text = F1_TEXT.replace("gram\n  1 0 0\n  0 1 0\n  0 0 -1\n", "")
    with pytest.raises(ParseError) as exc:
        parse_fixture(text)
    assert exc.value.key == "gram"


def test_asymmetric_gram():
    text = F1_TEXT.replace("  1 0 0\n  0 1 0", "  1 2 0\n  0 1 0")
    with pytest.raises(ValidationError) as exc:
        parse_fixture(text)
    assert exc.value.invariant == "gram_symmetric"
    assert "line" in str(exc.value)


def test_malformed_literal_location():
    text = F1_TEXT.replace("{re:[0,0],im:[1,0]}", "{re:[0,0],im:[1,0}")
    with pytest.raises(ParseError) as exc:
        parse_fixture(text)
    assert exc.value.line == 9
    assert exc.value.key == "h20"


def test_unknown_key_and_builtin():
    with pytest.raises(ParseError):
        parse_fixture(F1_TEXT + "colour blue\n")
    with pytest.raises(ParseError):
        builtin("k3")


def test_stdin_and_path(tmp_path):
    assert load_fixture("-", io.StringIO(F1_TEXT)).name == "f1"
    p = tmp_path / "f.fixture"
    p.write_text(F1_TEXT)
    assert load_fixture(str(p)).gram == builtin("f1").gram
    with pytest.raises(ParseError):
        load_fixture(str(tmp_path / "missing"))


def test_f2_clifford_dimension():
    fx = builtin("f2")
    assert 2 ** fx.rank == 16


def test_voisin_dimension():
    assert builtin("voisin").rank == 16


def test_voisin_weight1_valid():
    rep = validate_weight1(voisin_weight1())
    assert rep.ok, str(rep)


def test_voisin_omega_weights():
    # ω(v, y·v) for v = 1 in each factor, projected to each embedding block
    X, Y, e_plus, e_minus, _ = voisin_operators()
    om = voisin_omega()
    weights = []
    for f in range(2):
        one = [Fraction(int(k == 4 * f)) for k in range(8)]
        for E in (e_plus, e_minus):
            v = matvec(E, one)
            weights.append(bilinear(v, om, matvec(Y, v)))
    r2 = RealQuad(0, 1, 2)
    assert sorted(weights, key=float) == sorted([1, 1, r2, -r2], key=float)
