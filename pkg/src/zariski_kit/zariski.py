"""Zariski decomposition D = P + N of effective divisors in generator coordinates.

Two independent routes are provided: the support-growing iteration
(:func:`zariski_decompose`) and an exhaustive subset search
(:func:`brute_force_decompose`) that serves as its oracle.  The iteration
solves with Gauss-Jordan elimination over the rationals; the oracle uses
integer adjugates, so the two share no solver code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from operator import mul

from .errors import InputError, NotPseudoEffectiveData, OracleViolation, ResourceError
from .lattice import (
    CurveSystem,
    Divisor,
    SingularMatrix,
    det,
    gram_submatrix,
    inverse,
    is_negative_definite,
    pair,
    principal_submatrix,
)

DEFAULT_BRUTE_FORCE_CAP = 16


@dataclass(frozen=True)
class ZariskiDecomposition:
    divisor: Divisor
    positive: Divisor
    negative: Divisor
    support: tuple[int, ...]
    denominator: int
    iterations: int = field(default=0, compare=False)

    @property
    def is_integral(self) -> bool:
        return self.denominator == 1


def is_nef_on_generators(system: CurveSystem, D: Divisor) -> bool:
    """Nonnegative against every supplied generator (not against all curves)."""
    return all(pair(system, D, system.unit(j)) >= 0 for j in range(len(system)))


def zariski_denominator(Z: ZariskiDecomposition) -> int:
    return Z.negative.denominator


def _effective_integral_copy(system: CurveSystem, D: Divisor) -> tuple[int, list[int]]:
    """(m, m * D) with m the denominator of D; rejects non-effective input."""
    system.check(D)
    scale = D.denominator
    if scale == 1:
        d = [c.numerator for c in D.coeffs]
    else:
        d = [int(c * scale) for c in D.coeffs]
    if any(x < 0 for x in d):
        raise InputError(f"divisor {D} has a negative coefficient")
    return scale, d


def _make(D: Divisor, neg: list[Fraction], iterations: int = 0) -> ZariskiDecomposition:
    N = Divisor(tuple(neg))
    if not any(neg):
        return ZariskiDecomposition(D, D, N, (), 1, iterations)
    return ZariskiDecomposition(
        divisor=D,
        positive=D - N,
        negative=N,
        support=N.support,
        denominator=N.denominator,
        iterations=iterations,
    )


def _inverse_on(system: CurveSystem, S: tuple[int, ...]):
    """Gauss-Jordan inverse of Gram(S) as (L, L * inverse) with integer entries."""
    key = ("inv", S)
    cache = system._cache
    if key not in cache:
        try:
            inv = inverse(gram_submatrix(system, S))
        except SingularMatrix:
            cache[key] = None
        else:
            L = 1
            for row in inv:
                for x in row:
                    L = L * x.denominator // gcd(L, x.denominator)
            cache[key] = (L, tuple(tuple(int(x * L) for x in row) for row in inv))
    return cache[key]


def zariski_decompose(system: CurveSystem, D: Divisor) -> ZariskiDecomposition:
    """Support-growing iteration.

    Start from the components of D that D meets negatively, solve
    ``Gram(S) a = (D . C_j)_{j in S}`` for the negative part, and enlarge S by
    every component of D that the current positive part meets negatively.
    """
    scale, d = _effective_integral_copy(system, D)
    n = len(system)
    g = system.gram
    supp = [i for i in range(n) if d[i]]
    # everything below is scale * (true value); the iteration is linear in D
    dprod = [sum(map(mul, row, d)) for row in g]
    S = tuple(j for j in supp if dprod[j] < 0)
    num: list[int] = []
    L = 1
    pprod = dprod
    iterations = 0
    while S:
        iterations += 1
        solved = _inverse_on(system, S)
        if solved is None:
            raise NotPseudoEffectiveData(f"Gram matrix of support {list(S)} is singular")
        L, inv = solved
        rhs = [dprod[j] for j in S]
        num = [sum(map(mul, row, rhs)) for row in inv]
        # L * (P . C_j)
        rows = [g[i] for i in S]
        pprod = [L * dprod[j] - sum(a * row[j] for a, row in zip(num, rows)) for j in range(n)]
        grow = tuple(j for j in supp if j not in S and pprod[j] < 0)
        if not grow:
            break
        S = tuple(sorted(S + grow))
    bad = [j for j in range(n) if pprod[j] < 0]
    if bad:
        names = [system.curves[j].name for j in bad]
        raise NotPseudoEffectiveData(f"positive part meets {names} negatively outside the support of D")
    if any(a < 0 for a in num):
        raise NotPseudoEffectiveData(f"negative part on {list(S)} has a negative coefficient")
    if S and not _negdef_on(system, S):
        raise NotPseudoEffectiveData(f"Gram matrix of support {list(S)} is not negative definite")
    neg = [Fraction(0)] * n
    for i, a in zip(S, num):
        if a:
            neg[i] = Fraction(a, L * scale)
    return _make(D, neg, iterations)


# ---------------------------------------------------------------------------
# brute-force oracle


def _adjugate(M) -> tuple[int, list[list[int]]]:
    k = len(M)
    d = det(M)
    if k == 1:
        return d, [[1]]
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return d, adj


def _subset_data(system: CurveSystem, S: tuple[int, ...]):
    """For Gram(S) with determinant delta and adjugate A, precompute the integer
    maps d -> delta * a (negative-part coefficients) and d -> delta * (P . C_j)."""
    key = ("adj", S)
    cache = system._cache
    if key not in cache:
        g = system.gram
        n = len(system)
        delta, adj = _adjugate(principal_submatrix(g, S))
        if delta == 0:
            cache[key] = None
        else:
            k = len(S)
            # coef[r][i] = sum_c adj[r][c] * g[i][S_c]
            coef = [[sum(adj[r][c] * g[i][S[c]] for c in range(k)) for i in range(n)] for r in range(k)]
            # resid[j][i] = delta * g[i][j] - sum_r coef[r][i] * g[S_r][j]
            resid = [[delta * g[i][j] - sum(coef[r][i] * g[S[r]][j] for r in range(k)) for i in range(n)]
                     for j in range(n)]
            cache[key] = (delta, coef, resid)
    return cache[key]


def _negdef_on(system: CurveSystem, S: tuple[int, ...]) -> bool:
    key = ("negdef", S)
    cache = system._cache
    if key not in cache:
        cache[key] = is_negative_definite(principal_submatrix(system.gram, S))
    return cache[key]


def _negdef_subsets(system: CurveSystem):
    """Every nonempty subset with negative definite Gram, with its adjugate maps."""
    key = ("negdef-subsets",)
    cache = system._cache
    if key not in cache:
        n = len(system)
        found = []
        for k in range(1, n + 1):
            for S in itertools.combinations(range(n), k):
                if _negdef_on(system, S):
                    delta, coef, resid = _subset_data(system, S)
                    found.append((sum(1 << i for i in S), S, delta, coef, resid))
        cache[key] = found
    return cache[key]


def brute_force_decompose(
    system: CurveSystem, D: Divisor, max_generators: int = DEFAULT_BRUTE_FORCE_CAP
) -> ZariskiDecomposition:
    """Exhaustive oracle: keep every (P, N) satisfying nefness of P,
    effectivity and negative definiteness of N, and P . C = 0 on supp(N).

    Candidate negative parts are solved on subsets S of supp(D).  A survivor
    obtained from S is also obtained from S' = supp(N), which is negative
    definite, so scanning the negative definite subsets yields the same
    survivor set as scanning every invertible one.  Exactly one survivor must
    remain.
    """
    scale, d = _effective_integral_copy(system, D)
    n = len(system)
    if n > max_generators:
        raise ResourceError(f"{n} generators exceed the brute-force cap {max_generators}")
    g = system.gram
    supp = [i for i in range(n) if d[i]]
    suppmask = sum(1 << i for i in supp)
    survivors: dict[tuple[Fraction, ...], None] = {}

    if all(sum(map(mul, row, d)) >= 0 for row in g):
        survivors[(Fraction(0),) * n] = None
    for mask, S, delta, coef, resid in _negdef_subsets(system):
        if mask & ~suppmask:
            continue
        sgn = 1 if delta > 0 else -1
        # delta * a_r and delta * (P . C_j)
        num = []
        for row in coef:
            x = sum(map(mul, row, d))
            if x * sgn < 0:
                break
            num.append(x)
        else:
            pp = []
            for row in resid:
                y = sum(map(mul, row, d))
                if y * sgn < 0:
                    break
                pp.append(y)
            else:
                supp_n = tuple(s for s, x in zip(S, num) if x)
                if any(pp[j] for j in supp_n) or not _negdef_on(system, supp_n):
                    continue
                neg = [Fraction(0)] * n
                for s, x in zip(S, num):
                    if x:
                        neg[s] = Fraction(x, delta * scale)
                survivors[tuple(neg)] = None
    if len(survivors) != 1:
        raise OracleViolation(
            f"{len(survivors)} decompositions satisfy the Zariski conditions for {D}; expected exactly one"
        )
    (neg,) = survivors
    return _make(D, list(neg))


def check_decomposition(system: CurveSystem, Z: ZariskiDecomposition) -> list[str]:
    """Independent audit of the three defining conditions; returns failures."""
    problems = []
    if Z.positive + Z.negative != Z.divisor:
        problems.append("P + N != D")
    if not Z.negative.is_effective:
        problems.append("N is not effective")
    for j in range(len(system)):
        if pair(system, Z.positive, system.unit(j)) < 0:
            problems.append(f"P . {system.curves[j].name} < 0")
    if not is_negative_definite(gram_submatrix(system, Z.negative.support)):
        problems.append("Gram(supp N) is not negative definite")
    for i in Z.negative.support:
        if pair(system, Z.positive, system.unit(i)) != 0:
            problems.append(f"P . {system.curves[i].name} != 0")
    if Z.denominator != Z.negative.denominator:
        problems.append("denominator mismatch")
    return problems
