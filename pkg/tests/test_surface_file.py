from fractions import Fraction

import pytest

from conftest import FIXTURES, load
from zariski_kit.errors import InputError
from zariski_kit.lattice import Divisor
from zariski_kit.surface_file import parse_rational, parse_surface_text, serialize_surface_file, to_document

TWO_CURVE = """
schema_version = 1
[lattice]
rank = 2
gram = [[-2, 3], [3, -2]]
[divisors]
D1 = [2, 1]
"""


def test_two_curve_file():
    sf = parse_surface_text(TWO_CURVE)
    assert sf.divisors["D1"] == Divisor.of(2, 1)
    assert sf.system.names == ("C1", "C2")
    assert not sf.mori_generated and sf.invariants is None


@pytest.mark.parametrize(
    "text, message",
    [
        ("[lattice]\ngram = [[-2, 3], [4, -2]]\n", "not symmetric"),
        ("[lattice]\ngram = [[-2, 3], [3, -2]]\n[divisors]\nD = [0.5, 0]\n", "float literal 0.5 rejected at line 4"),
        ("[lattice]\ngram = [[-2, 3], [3, -2]]\n[divisors]\nD = [inf, 0]\n", "float literal"),
        ("[lattice]\ngram = [[-2, 3], [3, -2]]\n[divisors]\nD = [\"0.5\", 0]\n", "not an integer or 'p/q'"),
        ("[lattice]\ngram = [[-2, 3], [3, -2]]\n[divisors]\nD = [1, 2, 3]\n", "3 coefficients"),
        ("[lattice]\ngram = [[-2, 3], [3, -2]\n", "syntax error"),
        ("[lattice]\ngram = [[-2, 3], [3, -2]]\n[fibers.F]\ncomponents = [\"C9\"]\n", "C9"),
        ("[lattice]\ngram = [[-2]]\n[[curves]]\nname = \"A\"\ncoords = [1]\n[[curves]]\nname = \"A\"\ncoords = [2]\n",
         "A"),
        ("[lattice]\ngram = [[-2]]\nextra = 1\n", "unknown lattice keys"),
        ("[lattice]\nrank = 3\ngram = [[-2]]\n", "rank"),
        ("schema_version = 2\n[lattice]\ngram = [[-2]]\n", "schema_version"),
        ("[lattice]\ngram = [[-2]]\n[invariants]\npicard_number = 2\n", "picard_number"),
        ("[lattice]\ngram = [[10, 3], [3, -2]]\n[invariants]\nK = [1, 0]\nK_squared = 9\n", "K_squared"),
        ("[lattice]\ngram = [[-2]]\n[divisors]\nD = [\"1/0\"]\n", "zero denominator"),
    ],
)
def test_input_errors(text, message):
    with pytest.raises(InputError, match=message.replace("(", r"\(")):
        parse_surface_text(text)


def test_unknown_top_level_key():
    with pytest.raises(InputError, match="unknown top-level"):
        parse_surface_text("[lattice]\ngram = [[-2]]\n[extra]\n")


def test_rationals():
    assert parse_rational("1/2", "x") == Fraction(1, 2)
    assert parse_rational(" -6/4 ", "x") == Fraction(-3, 2)
    assert parse_rational(3, "x") == 3
    with pytest.raises(InputError):
        parse_rational(True, "x")


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.toml")), ids=lambda p: p.stem)
def test_round_trip(path):
    sf = load(path.stem)
    again = parse_surface_text(serialize_surface_file(sf))
    assert to_document(again) == to_document(sf)
    assert again == sf


def test_serialized_rationals():
    text = serialize_surface_file(load("criterion_fail"))
    assert '"1/5"' in text and '"1/2"' in text
