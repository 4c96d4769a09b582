"""Scalar numerical criteria: adjunction genus, negativity bounds for small
Kodaira dimension, the square-free discriminant test for the bicanonical map,
and section invariants of elliptic surfaces."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Sequence, Union

from .errors import InputError, ResourceError
from .lattice import CurveSystem, Divisor, pair

DEFAULT_FACTOR_CAP = 10**12
FACTOR_CAP_ENV = "ZARISKI_KIT_FACTOR_CAP"

NEG_INF = "-inf"
Kappa = Union[int, str]


def factor_cap() -> int:
    raw = os.environ.get(FACTOR_CAP_ENV)
    if raw is None:
        return DEFAULT_FACTOR_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"{FACTOR_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError(f"{FACTOR_CAP_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class SurfaceInvariants:
    K_squared: Optional[int] = None
    picard_number: Optional[int] = None
    kodaira_dimension: Optional[Kappa] = None
    minimal: bool = False
    canonical_class: Optional[Divisor] = None
    chi: Optional[int] = None
    base_genus: Optional[int] = None
    iitaka_fibers_mI0: bool = False
    mori_generated: bool = False

    def __post_init__(self):
        k = self.kodaira_dimension
        if k is not None and k not in (NEG_INF, 0, 1, 2):
            raise InputError(f"kodaira_dimension must be one of -inf, 0, 1, 2; got {k!r}")

    def kappa_at_most(self, bound: int) -> bool:
        k = self.kodaira_dimension
        return k is not None and (k == NEG_INF or k <= bound)

    def check_against(self, system: CurveSystem) -> None:
        K = self.canonical_class
        if K is None:
            return
        system.check(K)
        if self.K_squared is not None and pair(system, K, K) != self.K_squared:
            raise InputError(f"K.K = {pair(system, K, K)} disagrees with declared K_squared = {self.K_squared}")


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    applicable: bool
    verdict: str  # pass, fail, inconclusive, not-applicable
    witnesses: tuple = ()
    values: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        if (self.verdict == "not-applicable") == self.applicable:
            raise ValueError("verdict is not-applicable exactly when the criterion is not applicable")


def _not_applicable(criterion: str, why: str) -> CriterionReport:
    return CriterionReport(criterion, False, "not-applicable", note=why)


def adjunction_genus(C_sq: int, KC: int) -> int:
    """Arithmetic genus 1 + (C^2 + K.C)/2."""
    if (C_sq + KC) % 2:
        raise InputError(f"C^2 + K.C = {C_sq + KC} is odd; no curve class realizes ({C_sq}, {KC})")
    return 1 + (C_sq + KC) // 2


def is_square_free(n: int, cap: Optional[int] = None) -> bool:
    """Trial division by every d with d*d <= n."""
    if n < 1:
        raise InputError(f"square-freeness is defined here for n >= 1, got {n}")
    cap = factor_cap() if cap is None else cap
    if n > cap:
        raise ResourceError(f"{n} exceeds the factorization cap {cap}")
    if n % 4 == 0:
        return False
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 2
    return True


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class Discriminant:
    value: int
    square_free: bool
    perfect_square: bool


def discriminant_analysis(K_sq: int, KC: int, C_sq: int, cap: Optional[int] = None) -> Discriminant:
    """Discriminant (K.C)^2 - K^2 C^2 of the form K^2 x^2 + 2(K.C) x + C^2.

    A perfect square is exactly when the form has a rational root, i.e. when
    some rational combination of K and C could be isotropic.
    """
    delta = KC * KC - K_sq * C_sq
    if delta == 0:
        return Discriminant(0, False, True)
    sf = is_square_free(abs(delta), cap)
    return Discriminant(delta, sf, is_perfect_square(delta))


def kappa_bound_check(inv: SurfaceInvariants, system: CurveSystem) -> CriterionReport:
    name = "kappa-bound"
    if not (inv.minimal and inv.kappa_at_most(0)):
        return _not_applicable(name, "needs a minimal surface with Kodaira dimension at most 0")
    bad = tuple(
        {"curve": system.curves[i].name, "self_intersection": system.self_intersection(i)}
        for i in system.negative_curves
        if system.self_intersection(i) < -2
    )
    return CriterionReport(name, True, "fail" if bad else "pass", bad, {"bound": -2})


def genus_bound_check(inv: SurfaceInvariants, system: CurveSystem) -> CriterionReport:
    """Negative curves on a minimal kappa = 1 surface whose Iitaka fibers are
    all of type mI0 must have genus at least 2."""
    name = "genus-bound"
    if not (inv.minimal and inv.kodaira_dimension == 1 and inv.iitaka_fibers_mI0):
        return _not_applicable(name, "needs a minimal kappa = 1 surface flagged iitaka_fibers_mI0")
    if inv.canonical_class is None:
        return _not_applicable(name, "needs the canonical class K")
    K = inv.canonical_class
    genera = {}
    bad = []
    for i in system.negative_curves:
        c = system.curves[i].name
        g = adjunction_genus(system.self_intersection(i), int(pair(system, K, system.unit(i))))
        genera[c] = g
        if g < 2:
            bad.append({"curve": c, "genus": g})
    return CriterionReport(name, True, "fail" if bad else "pass", tuple(bad), {"genera": genera})


def bicanonical_verdict(
    inv: SurfaceInvariants, negative_curves: Sequence[tuple[int, int]], cap: Optional[int] = None
) -> CriterionReport:
    """negative_curves holds (C^2, K.C) pairs.  A negative verdict is only
    ever inconclusive: the criterion is one-directional."""
    name = "bicanonical"
    if not (
        inv.minimal
        and inv.kodaira_dimension == 2
        and inv.picard_number == 2
        and inv.K_squared is not None
        and inv.K_squared >= 10
    ):
        return _not_applicable(name, "needs a minimal surface of general type with rho = 2 and K^2 >= 10")
    rows = []
    hit = False
    for C_sq, KC in negative_curves:
        disc = discriminant_analysis(inv.K_squared, KC, C_sq, cap)
        rows.append({"C_squared": C_sq, "K_dot_C": KC, "discriminant": disc.value,
                     "square_free": disc.square_free, "perfect_square": disc.perfect_square})
        hit = hit or disc.square_free
    if hit:
        return CriterionReport(name, True, "pass", values={"curves": rows}, note="bicanonical map is birational")
    return CriterionReport(name, True, "inconclusive", values={"curves": rows},
                           note="no negative curve with square-free discriminant")


@dataclass(frozen=True)
class SectionInvariants:
    self_intersection: int
    genus: int
    caveat: str


def elliptic_section_invariants(chi: int, base_genus: int) -> SectionInvariants:
    """A section of an elliptic surface has C^2 = -chi(O_X) and the genus of the base."""
    if chi < 0:
        raise InputError(f"chi(O_X) = {chi} is negative")
    if base_genus < 0:
        raise InputError(f"base genus {base_genus} is negative")
    caveat = "section genus equals the base genus"
    if chi == 1:
        caveat = (
            f"with chi = 1 every section is a (-1)-curve of genus {base_genus}; a non-torsion "
            "section (not checked here) gives infinitely many of them"
        )
    return SectionInvariants(-chi, base_genus, caveat)


def section_check(inv: SurfaceInvariants) -> CriterionReport:
    name = "elliptic-section"
    if inv.chi is None or inv.base_genus is None:
        return _not_applicable(name, "needs chi and base_genus")
    s = elliptic_section_invariants(inv.chi, inv.base_genus)
    return CriterionReport(
        name, True, "pass", values={"section_self_intersection": s.self_intersection, "section_genus": s.genus},
        note=s.caveat,
    )


def negative_curve_data(inv: SurfaceInvariants, system: CurveSystem) -> list[tuple[int, int]]:
    """(C^2, K.C) for every negative generator; empty without K."""
    K = inv.canonical_class
    if K is None:
        return []
    return [(system.self_intersection(i), int(pair(system, K, system.unit(i)))) for i in system.negative_curves]


def all_criteria(inv: SurfaceInvariants, system: CurveSystem, cap: Optional[int] = None) -> list[CriterionReport]:
    return [
        kappa_bound_check(inv, system),
        genus_bound_check(inv, system),
        bicanonical_verdict(inv, negative_curve_data(inv, system), cap),
        section_check(inv),
    ]
