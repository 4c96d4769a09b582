import pytest

from zariski_kit.errors import DegenerateCone, InputError, PreconditionError, ResourceError
from zariski_kit.integrality import (
    check_divisibility,
    check_generator_criterion,
    check_mori_negative_curves,
    check_pairwise_orthogonality,
    cone_determinant_scaling,
    denominator_survey,
    divisibility_witness,
    enumerate_divisors,
    negativity_bound,
    search_nonintegral_witness,
)
from zariski_kit.lattice import CurveSystem, Divisor


def test_generator_criterion_fails(fail_system):
    v = check_generator_criterion(fail_system)
    assert not v.holds
    w = v.violations[0]
    assert (w.i, w.j, w.product, w.neg_self_intersection) == (0, 1, 3, 2)


def test_generator_criterion_holds(pass_system):
    assert check_generator_criterion(pass_system).holds
    assert check_pairwise_orthogonality(pass_system).holds


def test_generator_criterion_negative_product():
    s = CurveSystem.from_gram([[-2, -2], [-2, 0]])
    v = check_generator_criterion(s)
    assert [(w.i, w.j, w.product) for w in v.violations] == [(0, 1, -2)]


def test_pairwise_orthogonality_witness():
    s = CurveSystem.from_gram([[-2, 1], [1, -2]])
    v = check_pairwise_orthogonality(s)
    (w,) = v.violations
    assert w.minors == (-2, 3) and w.product == 1


def test_divisibility(fail_system):
    assert check_divisibility(fail_system, 0, Divisor.of(1, 0))
    w = divisibility_witness(fail_system, 0, Divisor.of(2, 1))
    assert (w.product, w.remainder, w.scaling) == (-1, 1, 1)
    w = divisibility_witness(fail_system, 1, Divisor.of("1/2", 0))
    assert (w.product, w.scaling) == (3, 2)
    s = CurveSystem.from_gram([[0, 1], [1, -1]])
    with pytest.raises(InputError):
        divisibility_witness(s, 0, Divisor.of(1, 0))


def test_mori_check(pass_system, fail_system):
    assert check_mori_negative_curves(pass_system, True).holds
    v = check_mori_negative_curves(fail_system, True)
    assert [w.i for w in v.violations] == [0, 1]
    with pytest.raises(PreconditionError):
        check_mori_negative_curves(pass_system, False)


def test_cone_scaling(fail_system):
    good = cone_determinant_scaling(fail_system, Divisor.of("1/5", 0))
    assert good.delta == -5 and good.holds
    bad = cone_determinant_scaling(fail_system, Divisor.of("1/2", 0))
    assert not bad.holds and bad.clearing_factor == 2 and "does not divide" in bad.note
    with pytest.raises(DegenerateCone):
        cone_determinant_scaling(CurveSystem.from_gram([[-2, 2], [2, -2]]), Divisor.of(1, 0))


def test_negativity_bound():
    s = CurveSystem.from_gram([[-3, 0, 0], [0, -1, 0], [0, 0, 1]])
    r = negativity_bound(s)
    assert r.negative_curve_indices == (0, 1) and r.b_observed == 3
    assert negativity_bound(CurveSystem.from_gram([[1]])).b_observed == 0


def test_enumeration_order():
    out = list(enumerate_divisors(2, 2))
    assert out == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)]
    assert len(list(enumerate_divisors(3, 3))) == 4**3 - 1


def test_search_finds_half(fail_system):
    D, m = search_nonintegral_witness(fail_system, 2)
    assert D == Divisor.of(2, 1) and m == 2


def test_search_none(pass_system):
    assert search_nonintegral_witness(pass_system, 3) is None
    with pytest.raises(ResourceError):
        search_nonintegral_witness(pass_system, 3, max_generators=1)


def test_survey(pass_system, fail_system):
    s = denominator_survey(pass_system, 3)
    assert s.max_denominator == 1 and s.first_witness is None and s.divisors_checked == 15
    assert denominator_survey(fail_system, 2).max_denominator == 2
