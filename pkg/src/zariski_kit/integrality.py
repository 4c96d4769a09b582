"""Integrality criteria for Zariski decompositions and their witnesses.

The finitely checkable surrogate for "every pseudo-effective divisor has an
integral Zariski decomposition" is the generator criterion: for each negative
generator C_i and every j != i, (C_i . C_j) must be a nonnegative multiple of
-C_i^2.  Under the hypothesis that every pseudo-effective class is a
nonnegative integer combination of the generators, the criterion is
equivalent to integrality of all decompositions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .errors import DegenerateCone, InputError, PreconditionError, ResourceError
from .lattice import CurveSystem, Divisor, det, is_negative_definite, pair
from .zariski import DEFAULT_BRUTE_FORCE_CAP, zariski_decompose


@dataclass(frozen=True)
class DivisibilityWitness:
    """C_i^2 does not divide (C_i . m D), m being the clearing factor of D."""

    curve: int
    self_intersection: int
    product: int
    remainder: int
    scaling: int = 1
    kind: str = field(default="divisibility", init=False)


@dataclass(frozen=True)
class PairWitness:
    """Two negative curves with negative definite Gram that still meet."""

    i: int
    j: int
    product: int
    minors: tuple[int, int]
    kind: str = field(default="pair", init=False)


@dataclass(frozen=True)
class GeneratorWitness:
    """(C_i . C_j) is negative or not a multiple of -C_i^2."""

    i: int
    j: int
    product: int
    neg_self_intersection: int
    kind: str = field(default="generator", init=False)


@dataclass(frozen=True)
class MoriWitness:
    """No other generator meets C_i in a positive multiple of -C_i^2."""

    i: int
    neg_self_intersection: int
    kind: str = field(default="mori", init=False)


Witness = Union[DivisibilityWitness, PairWitness, GeneratorWitness, MoriWitness]


@dataclass(frozen=True)
class D1Verdict:
    criterion: str
    violations: tuple[Witness, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class NegativityReport:
    negative_curve_indices: tuple[int, ...]
    b_observed: int


@dataclass(frozen=True)
class ConeScaling:
    delta: int
    integral_after_scaling: bool
    clearing_factor: int
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.integral_after_scaling


def _require_negative(system: CurveSystem, c: int) -> int:
    if not 0 <= c < len(system):
        raise InputError(f"curve index {c} out of range")
    c_sq = system.self_intersection(c)
    if c_sq >= 0:
        raise InputError(f"{system.curves[c].name} has C^2 = {c_sq} >= 0; only negative curves are constrained")
    return c_sq


def divisibility_witness(system: CurveSystem, c: int, D: Divisor) -> Optional[DivisibilityWitness]:
    """None when C^2 divides (C . mD), where m clears the denominators of D."""
    c_sq = _require_negative(system, c)
    m = D.denominator
    prod = pair(system, system.unit(c), D * m)
    # integral since mD and C are integral classes
    prod = int(prod)
    r = prod % (-c_sq)
    if r == 0:
        return None
    return DivisibilityWitness(c, c_sq, prod, r, m)


def check_divisibility(system: CurveSystem, c: int, D: Divisor) -> bool:
    return divisibility_witness(system, c, D) is None


def check_pairwise_orthogonality(system: CurveSystem) -> D1Verdict:
    g = system.gram
    out = []
    for i, j in itertools.combinations(system.negative_curves, 2):
        M = ((g[i][i], g[i][j]), (g[j][i], g[j][j]))
        if g[i][j] != 0 and is_negative_definite(M):
            out.append(PairWitness(i, j, g[i][j], (g[i][i], det(M))))
    return D1Verdict("pairwise-orthogonality", tuple(out))


def check_generator_criterion(system: CurveSystem) -> D1Verdict:
    g = system.gram
    out = []
    for i in system.negative_curves:
        k = -g[i][i]
        for j in range(len(system)):
            if j != i and (g[i][j] < 0 or g[i][j] % k):
                out.append(GeneratorWitness(i, j, g[i][j], k))
    return D1Verdict("generator-criterion", tuple(out))


def check_mori_negative_curves(system: CurveSystem, mori_generated: bool) -> D1Verdict:
    """Needs generator data declared to span the Mori cone."""
    if not mori_generated:
        raise PreconditionError("the Mori-cone check needs generators flagged as mori_generated")
    g = system.gram
    out = []
    for i in system.negative_curves:
        k = -g[i][i]
        if not any(j != i and g[i][j] > 0 and g[i][j] % k == 0 for j in range(len(system))):
            out.append(MoriWitness(i, k))
    return D1Verdict("mori-negative-curves", tuple(out))


def cone_determinant_scaling(system: CurveSystem, D: Divisor) -> ConeScaling:
    system.check(D)
    delta = det(system.gram)
    if delta == 0:
        raise DegenerateCone("the generators' Gram determinant vanishes")
    m = D.denominator
    ok = all((c * abs(delta)).denominator == 1 for c in D.coeffs)
    note = "" if ok else f"clearing factor {m} does not divide |det| = {abs(delta)}: contradicts the cone-determinant bound"
    return ConeScaling(int(delta), ok, m, note)


def negativity_bound(system: CurveSystem) -> NegativityReport:
    neg = system.negative_curves
    return NegativityReport(neg, max((-system.self_intersection(i) for i in neg), default=0))


def enumerate_divisors(n: int, coeff_bound: int) -> Iterator[tuple[int, ...]]:
    """Nonzero coefficient vectors in [0, bound]^n by increasing total degree;
    within one degree, lexicographically largest first."""
    for total in range(1, n * coeff_bound + 1):
        yield from _compositions(n, total, coeff_bound)


def _compositions(n: int, total: int, bound: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        if total <= bound:
            yield (total,)
        return
    for first in range(min(bound, total), -1, -1):
        rest = total - first
        if rest <= (n - 1) * bound:
            for tail in _compositions(n - 1, rest, bound):
                yield (first,) + tail


def search_nonintegral_witness(
    system: CurveSystem, coeff_bound: int, max_generators: int = DEFAULT_BRUTE_FORCE_CAP
) -> Optional[tuple[Divisor, int]]:
    """First effective integral divisor (in enumeration order) whose Zariski
    decomposition has denominator > 1."""
    if len(system) > max_generators:
        raise ResourceError(f"{len(system)} generators exceed the search cap {max_generators}")
    for coeffs in enumerate_divisors(len(system), coeff_bound):
        D = Divisor.of(*coeffs)
        Z = zariski_decompose(system, D)
        if Z.denominator > 1:
            return D, Z.denominator
    return None


@dataclass(frozen=True)
class DenominatorSurvey:
    coeff_bound: int
    divisors_checked: int
    max_denominator: int
    first_witness: Optional[Divisor]


def denominator_survey(system: CurveSystem, coeff_bound: int) -> DenominatorSurvey:
    """Largest Zariski denominator over all effective divisors up to the bound.

    This is a sample statistic, not the supremum over every divisor.
    """
    count = 0
    best = 1
    first = None
    for coeffs in enumerate_divisors(len(system), coeff_bound):
        D = Divisor.of(*coeffs)
        m = zariski_decompose(system, D).denominator
        count += 1
        if m > 1 and first is None:
            first = D
        best = max(best, m)
    return DenominatorSurvey(coeff_bound, count, best, first)
