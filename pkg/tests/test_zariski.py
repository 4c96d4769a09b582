from fractions import Fraction

import pytest

from zariski_kit.errors import InputError, NotPseudoEffectiveData, ResourceError
from zariski_kit.lattice import CurveSystem, Divisor
from zariski_kit.zariski import (
    brute_force_decompose,
    check_decomposition,
    is_nef_on_generators,
    zariski_decompose,
    zariski_denominator,
)


def both(system, D):
    Z = zariski_decompose(system, D)
    assert brute_force_decompose(system, D) == Z
    assert check_decomposition(system, Z) == []
    return Z


def test_half_denominator(fail_system):
    Z = both(fail_system, Divisor.of(2, 1))
    assert Z.positive == Divisor.of("3/2", 1)
    assert Z.negative == Divisor.of("1/2", 0)
    assert Z.support == (0,)
    assert Z.denominator == zariski_denominator(Z) == 2
    assert not Z.is_integral


def test_nef_divisor_is_its_own_positive_part(pass_system):
    D = Divisor.of(2, 1)
    assert is_nef_on_generators(pass_system, D)
    Z = both(pass_system, D)
    assert Z.negative == Divisor.zero(2)
    assert Z.positive == D


def test_single_negative_curve():
    s = CurveSystem.from_gram([[-1]])
    Z = both(s, Divisor.of(3))
    assert Z.negative == Divisor.of(3) and Z.positive == Divisor.zero(1)


def test_zero_divisor(fail_system):
    Z = zariski_decompose(fail_system, Divisor.zero(2))
    assert Z.positive == Z.negative == Divisor.zero(2)
    assert Z.denominator == 1


def test_rational_input(fail_system):
    Z = both(fail_system, Divisor.of("1/5", 0))
    assert Z.negative == Divisor.of("1/5", 0)
    assert Z.denominator == 5


def test_support_grows():
    # chain of (-2)-curves plus a curve C meeting the first one once
    s = CurveSystem.from_gram([[0, 1, 0], [1, -2, 1], [0, 1, -2]], ["F", "A", "B"])
    Z = both(s, Divisor.of(0, 2, 2))
    assert Z.negative == Divisor.of(0, 2, 2)
    Z = both(s, Divisor.of(1, 2, 2))
    assert Z.support == (1, 2)
    assert Z.negative == Divisor.of(0, Fraction(4, 3), Fraction(5, 3))
    assert Z.positive == Divisor.of(1, Fraction(2, 3), Fraction(1, 3))


def test_negative_coefficient_rejected(fail_system):
    with pytest.raises(InputError):
        zariski_decompose(fail_system, Divisor.of(1, -1))


def test_not_pseudo_effective_outside_support():
    # D = C1 is positive on itself but meets C2 negatively, and C2 is not in supp(D)
    s = CurveSystem.from_gram([[1, -1], [-1, -2]])
    with pytest.raises(NotPseudoEffectiveData):
        zariski_decompose(s, Divisor.of(1, 0))


def test_singular_support():
    s = CurveSystem.from_gram([[0, -1], [-1, 0]])
    with pytest.raises(NotPseudoEffectiveData):
        zariski_decompose(s, Divisor.of(1, 1))


def test_brute_force_cap(fail_system):
    with pytest.raises(ResourceError):
        brute_force_decompose(fail_system, Divisor.of(1, 1), max_generators=1)


def test_check_decomposition_flags_bad_input(fail_system):
    Z = zariski_decompose(fail_system, Divisor.of(2, 1))
    bogus = type(Z)(Z.divisor, Z.divisor, Divisor.zero(2), (), 1)
    problems = check_decomposition(fail_system, bogus)
    assert any("P . C1" in p for p in problems)
