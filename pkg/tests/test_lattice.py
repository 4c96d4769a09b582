from fractions import Fraction

import pytest

from zariski_kit.errors import InputError, ResourceError
from zariski_kit.lattice import (
    CurveClass,
    CurveSystem,
    Divisor,
    IntersectionLattice,
    SingularMatrix,
    det,
    gram_submatrix,
    inverse,
    is_negative_definite,
    is_negative_semidefinite,
    leading_minors,
    pair,
    signature,
    solve,
    validate_lattice,
)


def test_det_small():
    assert det([]) == 1
    assert det([[5]]) == 5
    assert det([[-2, 3], [3, -2]]) == -5
    assert det([[0, 1], [1, 0]]) == -1  # needs a row swap
    assert det([[2, 1, 0], [1, 2, 1], [0, 1, 2]]) == 4
    assert det([[1, 2], [2, 4]]) == 0


def test_det_rational():
    assert det([[Fraction(1, 2), 1], [1, 4]]) == 1


def test_leading_minors():
    assert leading_minors([[-2, 1], [1, -2]]) == [-2, 3]


@pytest.mark.parametrize(
    "M, nd, nsd",
    [
        ([[-2, 3], [3, -2]], False, False),
        ([[-2, 1], [1, -2]], True, True),
        ([[-2, 2], [2, -2]], False, True),
        ([[0]], False, True),
        ([[-1]], True, True),
        ([[0, 0], [0, -1]], False, True),
        ([[-1, 0], [0, 0]], False, True),
        ([[0, 1], [1, 0]], False, False),
        ([[-2, 1, 1], [1, -2, 1], [1, 1, -2]], False, True),
    ],
)
def test_definiteness(M, nd, nsd):
    assert is_negative_definite(M) is nd
    assert is_negative_semidefinite(M) is nsd


def test_empty_matrix_is_negative_definite():
    assert is_negative_definite([])


def test_semidefinite_cap():
    big = [[-1 if i == j else 0 for j in range(21)] for i in range(21)]
    with pytest.raises(ResourceError):
        is_negative_semidefinite(big)
    small = [[-1 if i == j else 0 for j in range(5)] for i in range(5)]
    with pytest.raises(ResourceError):
        is_negative_semidefinite(small, max_size=4)
    assert is_negative_semidefinite(small, max_size=5)


@pytest.mark.parametrize(
    "M, sig",
    [
        ([[-2, 3], [3, -2]], (1, 1, 0)),
        ([[-2, 1], [1, -2]], (0, 2, 0)),
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[0, 0], [0, 0]], (0, 0, 2)),
        ([[-2, 2], [2, -2]], (0, 1, 1)),
        ([[0, 1, 0], [1, 0, 0], [0, 0, -3]], (1, 2, 0)),
    ],
)
def test_signature(M, sig):
    assert signature(M) == sig


def test_asymmetric_rejected():
    with pytest.raises(InputError):
        signature([[-2, 3], [4, -2]])
    with pytest.raises(InputError):
        is_negative_definite([[-2, 3], [4, -2]])


def test_solve_and_inverse():
    assert solve([[-2, 3], [3, -2]], [1, 0]) == (Fraction(2, 5), Fraction(3, 5))
    inv = inverse([[2, 1], [1, 1]])
    assert inv == ((1, -1), (-1, 2))
    with pytest.raises(SingularMatrix):
        solve([[1, 2], [2, 4]], [1, 1])


def test_lattice_requires_square_integers():
    with pytest.raises(InputError):
        IntersectionLattice(((1, 2),))
    with pytest.raises(InputError):
        IntersectionLattice(((Fraction(1, 2),),))


def test_divisor_basics():
    D = Divisor.of(2, "1/2")
    assert D.coeffs == (2, Fraction(1, 2))
    assert D.denominator == 2
    assert not D.is_integral
    assert D.is_effective
    assert D.support == (0, 1)
    assert D - D == Divisor.zero(2)
    assert (D * 2).is_integral
    assert not Divisor.of(1, -1).is_effective
    assert repr(Divisor.of(2, 1)) == "Divisor(2, 1)"


def test_curve_system(fail_system):
    s = fail_system
    assert s.names == ("C1", "C2")
    assert s.index("C2") == 1
    assert s.negative_curves == (0, 1)
    assert pair(s, s.divisor(2, 1), s.divisor(2, 1)) == -8 + 12 - 2
    assert gram_submatrix(s, [1]) == ((-2,),)
    with pytest.raises(InputError):
        s.index("C3")
    with pytest.raises(InputError):
        s.check(Divisor.of(1, 2, 3))


def test_curve_system_generators_not_basis():
    lat = IntersectionLattice(((0, 1), (1, -1)))
    s = CurveSystem(lat, (CurveClass("F", (1, 0)), CurveClass("O", (0, 1)), CurveClass("F+O", (1, 1))))
    assert s.gram == ((0, 1, 1), (1, -1, 0), (1, 0, 1))
    with pytest.raises(InputError):
        CurveSystem(lat, (CurveClass("A", (1, 0)), CurveClass("A", (0, 1))))
    with pytest.raises(InputError):
        CurveClass("Z", (0, 0))


def test_validate_lattice():
    ok = validate_lattice([[-2, 3], [3, -2]])
    assert ok.ok and not ok.warnings and ok.signature == (1, 1, 0)
    warn = validate_lattice([[-2, 1], [1, -2]])
    assert warn.ok and warn.warnings
    bad = validate_lattice([[-2, 3], [4, -2]])
    assert not bad.ok
