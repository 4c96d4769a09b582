"""Exact quadratic-form machinery over the integers and rationals.

Matrices are plain tuples of rows holding ``int`` or ``Fraction`` entries.
Nothing in here touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import InputError, ResourceError

Scalar = Union[int, Fraction]
Matrix = tuple[tuple[Scalar, ...], ...]

DEFAULT_MAX_SUBSET = 20


def as_matrix(rows: Iterable[Iterable[Scalar]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def _check_square(M: Sequence[Sequence[Scalar]]) -> int:
    n = len(M)
    for row in M:
        if len(row) != n:
            raise InputError(f"matrix is not square: {n} rows but a row of length {len(row)}")
    return n


def is_symmetric(M: Sequence[Sequence[Scalar]]) -> bool:
    n = _check_square(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n))


def _require_symmetric(M: Sequence[Sequence[Scalar]]) -> int:
    n = _check_square(M)
    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j] != M[j][i]:
                raise InputError(f"matrix is not symmetric: entry ({i},{j})={M[i][j]} but ({j},{i})={M[j][i]}")
    return n


def _bareiss_pivots(M: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Fraction-free elimination without row exchanges.

    The k-th returned value is the leading k x k principal minor. Stops at the
    first vanishing minor (which is then the last element of the list).
    """
    n = len(M)
    A = [list(row) for row in M]
    pivots: list[Scalar] = []
    prev: Scalar = 1
    for k in range(n):
        p = A[k][k]
        pivots.append(p)
        if p == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * p - A[i][k] * A[k][j]
                A[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = p
    return pivots


def det(M: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant (Bareiss with row pivoting). det of the 0x0 matrix is 1."""
    n = _check_square(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev: Scalar = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        p = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * p - A[i][k] * A[k][j]
                A[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = p
    return sign * A[n - 1][n - 1]


def leading_minors(M: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """All leading principal minors, order 1 to n."""
    n = _check_square(M)
    return [det([row[:k] for row in M[:k]]) for k in range(1, n + 1)]


def principal_submatrix(M: Sequence[Sequence[Scalar]], idx: Sequence[int]) -> Matrix:
    return tuple(tuple(M[i][j] for j in idx) for i in idx)


def is_negative_definite(M: Sequence[Sequence[Scalar]]) -> bool:
    """Sylvester's criterion: (-1)^k times the k-th leading minor is positive.

    The empty matrix is negative definite by convention.
    """
    n = _require_symmetric(M)
    pivots = _bareiss_pivots(M)
    if len(pivots) < n:
        return False
    sign = -1
    for minor in pivots:
        if minor * sign <= 0:
            return False
        sign = -sign
    return True


def is_negative_semidefinite(M: Sequence[Sequence[Scalar]], max_size: int = DEFAULT_MAX_SUBSET) -> bool:
    """Every principal minor of order k has sign (-1)^k or vanishes."""
    n = _require_symmetric(M)
    if n > max_size:
        raise ResourceError(f"semidefiniteness test on a {n}x{n} matrix exceeds the subset cap {max_size}")
    for k in range(1, n + 1):
        sign = -1 if k % 2 else 1
        for idx in itertools.combinations(range(n), k):
            if det(principal_submatrix(M, idx)) * sign < 0:
                return False
    return True


def signature(M: Sequence[Sequence[Scalar]]) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) by rational congruence diagonalization."""
    n = _require_symmetric(M)
    A = [[Fraction(x) for x in row] for row in M]
    diag: list[Fraction] = []
    k = 0
    while k < n:
        piv = next((r for r in range(k, n) if A[r][r] != 0), None)
        if piv is None:
            pair = next(((r, c) for r in range(k, n) for c in range(r + 1, n) if A[r][c] != 0), None)
            if pair is None:
                diag.extend([Fraction(0)] * (n - k))
                break
            r, c = pair
            # row_r += row_c and col_r += col_c; the new diagonal is 2*A[r][c] != 0
            for j in range(n):
                A[r][j] += A[c][j]
            for i in range(n):
                A[i][r] += A[i][c]
            piv = r
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            for row in A:
                row[k], row[piv] = row[piv], row[k]
        p = A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
                for j in range(k, n):
                    A[j][i] = A[i][j]
        diag.append(p)
        k += 1
    plus = sum(1 for d in diag if d > 0)
    minus = sum(1 for d in diag if d < 0)
    return plus, minus, n - plus - minus


class SingularMatrix(ZeroDivisionError):
    pass


def solve(M: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Solve M x = b exactly by Gauss-Jordan elimination; raises SingularMatrix."""
    n = _check_square(M)
    if len(b) != n:
        raise InputError(f"right-hand side has length {len(b)}, expected {n}")
    A = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [x / p for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return tuple(A[i][n] for i in range(n))


def inverse(M: Sequence[Sequence[Scalar]]) -> tuple[tuple[Fraction, ...], ...]:
    n = _check_square(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [x / p for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return tuple(tuple(row[n:]) for row in A)


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class IntersectionLattice:
    """Integer bilinear form on a rank-rho lattice, ``gram[i][j] = C_i . C_j``."""

    gram: Matrix

    def __post_init__(self):
        gram = as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        if not gram:
            raise InputError("lattice rank must be at least 1")
        _check_square(gram)
        for row in gram:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise InputError(f"gram entries must be integers, got {x!r}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def product(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])


@dataclass(frozen=True)
class CurveClass:
    name: str
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.name:
            raise InputError("curve name must be non-empty")
        if not any(self.coords):
            raise InputError(f"curve {self.name!r} has the zero class")


@dataclass(frozen=True)
class Divisor:
    """Exact rational coefficients over the generators of a curve system."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = self.coeffs
        if type(c) is not tuple or not all(type(x) is Fraction for x in c):
            object.__setattr__(self, "coeffs", tuple(Fraction(x) for x in c))

    @classmethod
    def of(cls, *coeffs: Scalar | str) -> "Divisor":
        return cls(coeffs)

    @classmethod
    def zero(cls, n: int) -> "Divisor":
        return cls((Fraction(0),) * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "Divisor":
        return cls(tuple(Fraction(int(k == i)) for k in range(n)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "Divisor") -> "Divisor":
        _same_length(self, other)
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        _same_length(self, other)
        return Divisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, k: Scalar) -> "Divisor":
        return Divisor(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    @property
    def is_effective(self) -> bool:
        return all(c.numerator >= 0 for c in self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def denominator(self) -> int:
        """Least positive m with m * self integral."""
        m = 1
        for c in self.coeffs:
            q = c.denominator
            if q != 1:
                m = _lcm(m, q)
        return m

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c.numerator)

    def __repr__(self) -> str:
        return "Divisor(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _same_length(u: Divisor, v: Divisor) -> None:
    if len(u) != len(v):
        raise InputError(f"divisor lengths differ: {len(u)} vs {len(v)}")


@dataclass(frozen=True)
class CurveSystem:
    """Named curve classes over an intersection lattice.

    Divisors on a system are expressed in the coordinates of its curves
    (the generators), not in the lattice basis.
    """

    lattice: IntersectionLattice
    curves: tuple[CurveClass, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if not is_symmetric(self.lattice.gram):
            raise InputError("intersection matrix is not symmetric")
        if not self.curves:
            raise InputError("a curve system needs at least one curve")
        seen = set()
        for c in self.curves:
            if c.name in seen:
                raise InputError(f"duplicate curve name {c.name!r}")
            seen.add(c.name)
            if len(c.coords) != self.lattice.rank:
                raise InputError(
                    f"curve {c.name!r} has {len(c.coords)} coordinates, lattice rank is {self.lattice.rank}"
                )

    @classmethod
    def from_gram(cls, gram, names: Sequence[str] | None = None) -> "CurveSystem":
        """Curves are the lattice basis vectors themselves."""
        lattice = IntersectionLattice(as_matrix(gram))
        n = lattice.rank
        names = names or [f"C{i + 1}" for i in range(n)]
        curves = tuple(CurveClass(nm, tuple(int(i == j) for j in range(n))) for i, nm in enumerate(names))
        return cls(lattice, curves)

    def __len__(self) -> int:
        return len(self.curves)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def index(self, name: str) -> int:
        for i, c in enumerate(self.curves):
            if c.name == name:
                return i
        raise InputError(f"unknown curve {name!r}")

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """Gram matrix of the generators, pulled back through their coordinates."""
        L = self.lattice
        return tuple(tuple(L.product(a.coords, b.coords) for b in self.curves) for a in self.curves)

    def self_intersection(self, i: int) -> int:
        return self.gram[i][i]

    @property
    def negative_curves(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if self.gram[i][i] < 0)

    def unit(self, i: int) -> Divisor:
        return Divisor.unit(len(self), i)

    def divisor(self, *coeffs: Scalar | str) -> Divisor:
        d = Divisor.of(*coeffs)
        self.check(d)
        return d

    def check(self, d: Divisor) -> None:
        if len(d) != len(self):
            raise InputError(f"divisor has {len(d)} coefficients, system has {len(self)} curves")


def pair(system: CurveSystem, u: Divisor, v: Divisor) -> Fraction:
    """Intersection number u . v of two divisors in generator coordinates."""
    system.check(u)
    system.check(v)
    g = system.gram
    total = Fraction(0)
    for i, a in enumerate(u.coeffs):
        if a:
            row = g[i]
            total += a * sum(row[j] * b for j, b in enumerate(v.coeffs) if b)
    return total


def gram_submatrix(system: CurveSystem, subset: Sequence[int]) -> Matrix:
    n = len(system)
    if len(set(subset)) != len(subset):
        raise InputError(f"subset has repeated indices: {list(subset)}")
    for i in subset:
        if not 0 <= i < n:
            raise InputError(f"curve index {i} out of range 0..{n - 1}")
    return principal_submatrix(system.gram, subset)


@dataclass(frozen=True)
class LatticeValidation:
    symmetric: bool
    signature: tuple[int, int, int] | None
    warnings: tuple[str, ...] = ()
    errors: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def validate_lattice(L: IntersectionLattice | Sequence[Sequence[int]]) -> LatticeValidation:
    """Symmetry is fatal; a non-Hodge signature is only a warning."""
    gram = L.gram if isinstance(L, IntersectionLattice) else as_matrix(L)
    try:
        n = _check_square(gram)
    except InputError as exc:
        return LatticeValidation(False, None, errors=(str(exc),))
    if n == 0:
        return LatticeValidation(True, None, errors=("lattice rank must be at least 1",))
    asym = [(i, j) for i in range(n) for j in range(i + 1, n) if gram[i][j] != gram[j][i]]
    if asym:
        i, j = asym[0]
        return LatticeValidation(
            False, None, errors=(f"not symmetric: gram[{i}][{j}]={gram[i][j]} != gram[{j}][{i}]={gram[j][i]}",)
        )
    sig = signature(gram)
    warnings = ()
    if sig != (1, n - 1, 0):
        warnings = (f"signature {sig} differs from the Hodge signature {(1, n - 1, 0)}",)
    return LatticeValidation(True, sig, warnings=warnings)
