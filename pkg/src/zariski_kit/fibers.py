"""Fiber configurations: Zariski's-lemma validation and the irreducibility
obstruction for surfaces whose Zariski decompositions are all integral."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import InputError
from .lattice import CurveSystem, Divisor, det, gram_submatrix, is_negative_definite, is_negative_semidefinite, pair


@dataclass(frozen=True)
class FiberConfiguration:
    components: tuple[int, ...]
    multiplicities: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if not self.components:
            raise InputError("a fiber needs at least one component")
        if len(set(self.components)) != len(self.components):
            raise InputError(f"fiber {self.name!r} lists a component twice")
        if len(self.multiplicities) != len(self.components):
            raise InputError(f"fiber {self.name!r}: {len(self.components)} components but "
                             f"{len(self.multiplicities)} multiplicities")
        if any(a < 1 for a in self.multiplicities):
            raise InputError(f"fiber {self.name!r}: multiplicities must be positive")

    def divisor(self, system: CurveSystem) -> Divisor:
        coeffs = [0] * len(system)
        for i, a in zip(self.components, self.multiplicities):
            if not 0 <= i < len(system):
                raise InputError(f"fiber {self.name!r}: component index {i} out of range")
            coeffs[i] = a
        return Divisor.of(*coeffs)


@dataclass(frozen=True)
class ZariskiLemmaCheck:
    component_products: tuple[int, ...]
    semidefinite: bool
    self_intersection: int

    @property
    def ok(self) -> bool:
        return self.semidefinite and self.self_intersection == 0 and not any(self.component_products)


class Consistency(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    PAPER_CLAIM_DISCREPANCY = "paper-claim-discrepancy"


@dataclass(frozen=True)
class Relation:
    """One relation forced on a two-component fiber by integrality."""

    name: str
    satisfied: bool
    detail: str


@dataclass(frozen=True)
class D1Consistency:
    status: Consistency
    witnesses: tuple[dict, ...] = ()
    relations: tuple[Relation, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class FiberReport:
    fiber: FiberConfiguration
    zariski_lemma: ZariskiLemmaCheck
    d1_consistency: D1Consistency = field(default=None)

    @property
    def zariski_lemma_ok(self) -> bool:
        return self.zariski_lemma.ok


def validate_fiber(system: CurveSystem, F: FiberConfiguration, max_subset: int = 20) -> ZariskiLemmaCheck:
    """F . C_i = 0 on every component, negative semidefinite component Gram, F^2 = 0."""
    D = F.divisor(system)
    prods = tuple(int(pair(system, D, system.unit(i))) for i in F.components)
    semi = is_negative_semidefinite(gram_submatrix(system, F.components), max_size=max_subset)
    return ZariskiLemmaCheck(prods, semi, int(pair(system, D, D)))


DISCREPANCY_NOTE = (
    "every relation forced on a two-component fiber holds, yet "
    "F^2 = -(C1.C2)(a1-a2)^2 = 0 when a1 = a2, so no contradiction follows "
    "from these numbers; the irreducibility claim is not reproduced here"
)


def check_fiber_d1_consistency(
    system: CurveSystem, F: FiberConfiguration, max_subset: int = 20
) -> D1Consistency:
    """Test a fiber against the constraints that integral Zariski
    decompositions impose on reducible fibers."""
    lemma = validate_fiber(system, F, max_subset=max_subset)
    if not lemma.ok:
        return D1Consistency(
            Consistency.INCONSISTENT,
            ({
                "kind": "zariski-lemma",
                "component_products": list(lemma.component_products),
                "semidefinite": lemma.semidefinite,
                "self_intersection": lemma.self_intersection,
            },),
        )
    comps = F.components
    g = system.gram
    if len(comps) == 1:
        return D1Consistency(Consistency.CONSISTENT)
    if len(comps) == 2:
        return _two_components(system, F)

    witnesses = []
    for i, j in itertools.combinations(comps, 2):
        M = gram_submatrix(system, (i, j))
        if g[i][j] != 0 and is_negative_definite(M):
            witnesses.append({
                "kind": "pair",
                "i": i,
                "j": j,
                "product": g[i][j],
                "minors": [g[i][i], det(M)],
            })
    if witnesses:
        return D1Consistency(Consistency.INCONSISTENT, tuple(witnesses))
    # every negative definite pair is already orthogonal: F^2 collapses to the diagonal
    forced = sum(a * a * g[i][i] for i, a in zip(comps, F.multiplicities))
    if forced < 0:
        return D1Consistency(
            Consistency.INCONSISTENT,
            ({"kind": "forced-self-intersection", "value": forced},),
        )
    return D1Consistency(
        Consistency.PAPER_CLAIM_DISCREPANCY,
        note=f"forced orthogonality gives F^2 = {forced}, which is not negative",
    )


def _two_components(system: CurveSystem, F: FiberConfiguration) -> D1Consistency:
    (i, j), (a1, a2) = F.components, F.multiplicities
    g = system.gram
    c1, c2, m = g[i][i], g[j][j], g[i][j]
    rels = []
    for name, c in ((system.curves[i].name, c1), (system.curves[j].name, c2)):
        ok = c < 0 and m % c == 0
        rels.append(Relation(f"{name}^2 | C1.C2", ok, f"C1.C2 = {m}, {name}^2 = {c}"))
    rels.append(Relation("C1.C2 = -C1^2 = -C2^2", m == -c1 == -c2 and m > 0,
                         f"C1.C2 = {m}, -C1^2 = {-c1}, -C2^2 = {-c2}"))
    rels.append(Relation("a1 = a2", a1 == a2, f"a1 = {a1}, a2 = {a2}"))
    failed = [r for r in rels if not r.satisfied]
    if failed:
        return D1Consistency(
            Consistency.INCONSISTENT,
            tuple({"kind": "forced-relation", "relation": r.name, "detail": r.detail} for r in failed),
            tuple(rels),
        )
    return D1Consistency(Consistency.PAPER_CLAIM_DISCREPANCY, relations=tuple(rels), note=DISCREPANCY_NOTE)


def analyze_fiber(system: CurveSystem, F: FiberConfiguration, max_subset: int = 20) -> FiberReport:
    return FiberReport(
        F,
        validate_fiber(system, F, max_subset=max_subset),
        check_fiber_d1_consistency(system, F, max_subset=max_subset),
    )


def fiber_from_names(system: CurveSystem, name: str, components: Sequence[str], multiplicities: Sequence[int]):
    return FiberConfiguration(tuple(system.index(c) for c in components), tuple(multiplicities), name)
