"""Command dispatch and report documents (machine JSON plus a text rendering)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from .criteria import CriterionReport, all_criteria
from .errors import DegenerateCone, InputError, OracleViolation, PreconditionError, ResourceError, ZariskiKitError
from .fibers import analyze_fiber
from .integrality import (
    D1Verdict,
    check_generator_criterion,
    check_mori_negative_curves,
    check_pairwise_orthogonality,
    cone_determinant_scaling,
    divisibility_witness,
    negativity_bound,
    search_nonintegral_witness,
)
from .lattice import DEFAULT_MAX_SUBSET, CurveSystem, Divisor, validate_lattice
from .surface_file import SCHEMA_VERSION, SurfaceFile, format_rational
from .zariski import DEFAULT_BRUTE_FORCE_CAP, brute_force_decompose, is_nef_on_generators, zariski_decompose

COMMANDS = ("validate", "decompose", "check-d1", "check-mori", "fiber", "criteria", "report")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


@dataclass
class Options:
    search_bound: Optional[int] = None
    max_subset: int = DEFAULT_MAX_SUBSET
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP
    factor_cap: Optional[int] = None


@dataclass
class ReportDocument:
    command: str
    sections: dict[str, Any]
    failed: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_FAILED if self.failed else EXIT_OK

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": "zariski-kit",
            "version": __version__,
            "command": self.command,
            "status": "fail" if self.failed else "ok",
            "notes": self.notes,
            **self.sections,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=True) + "\n"

    def to_text(self) -> str:
        return render_text(self)


def _vec(D: Divisor) -> list:
    return [format_rational(c) for c in D.coeffs]


def _names(system: CurveSystem, idx: Sequence[int]) -> list[str]:
    return [system.curves[i].name for i in idx]


NEF_CAVEAT = "nef means nonnegative against the supplied generators only"


# ---------------------------------------------------------------------------
# sections


def validate_section(sf: SurfaceFile) -> dict:
    system = sf.system
    v = validate_lattice(system.lattice)
    neg = negativity_bound(system)
    return {
        "lattice": {
            "rank": system.lattice.rank,
            "symmetric": v.symmetric,
            "signature": list(v.signature) if v.signature else None,
            "hodge_signature": v.signature == (1, system.lattice.rank - 1, 0),
            "warnings": list(v.warnings),
            "errors": list(v.errors),
        },
        "curves": [{"name": c.name, "self_intersection": system.self_intersection(i)}
                   for i, c in enumerate(system.curves)],
        "generator_gram": [list(r) for r in system.gram],
        "negativity": {"negative_curves": _names(system, neg.negative_curve_indices), "b_observed": neg.b_observed},
    }


def decompose_entry(system: CurveSystem, name: str, D: Divisor, opts: Options) -> tuple[dict, bool]:
    entry: dict[str, Any] = {"divisor": name, "D": _vec(D)}
    try:
        Z = zariski_decompose(system, D)
    except InputError:
        raise
    except ZariskiKitError as exc:
        entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return entry, True
    entry.update({
        "P": _vec(Z.positive),
        "N": _vec(Z.negative),
        "support": _names(system, Z.support),
        "denominator": Z.denominator,
        "integral": Z.is_integral,
        "nef_on_generators": is_nef_on_generators(system, D),
        "iterations": Z.iterations,
    })
    if len(system) <= opts.brute_force_cap:
        try:
            entry["oracle"] = "agrees" if brute_force_decompose(system, D, opts.brute_force_cap) == Z else "disagrees"
        except (OracleViolation, ResourceError) as exc:
            entry["oracle"] = f"error: {exc}"
    else:
        entry["oracle"] = "skipped"
    return entry, entry["oracle"] not in ("agrees", "skipped")


def decompose_section(sf: SurfaceFile, names: Sequence[str], opts: Options) -> tuple[dict, bool]:
    for n in names:
        if n not in sf.divisors:
            raise InputError(f"unknown divisor {n!r}")
    failed = False
    out = []
    for n in names or list(sf.divisors):
        entry, bad = decompose_entry(sf.system, n, sf.divisors[n], opts)
        out.append(entry)
        failed = failed or bad
    return {"decompositions": out, "nef_caveat": NEF_CAVEAT}, failed


def _verdict(system: CurveSystem, v: D1Verdict) -> dict:
    rows = []
    for w in v.violations:
        row = {"kind": w.kind}
        for key, value in vars(w).items():
            if key == "kind":
                continue
            if key in ("i", "j", "curve"):
                row[key] = system.curves[value].name
            elif isinstance(value, tuple):
                row[key] = list(value)
            else:
                row[key] = value
        rows.append(row)
    return {"criterion": v.criterion, "holds": v.holds, "violations": rows}


def mori_section(sf: SurfaceFile) -> dict:
    return _verdict(sf.system, check_mori_negative_curves(sf.system, sf.mori_generated))


def d1_section(sf: SurfaceFile, opts: Options) -> tuple[dict, bool]:
    system = sf.system
    pairwise = check_pairwise_orthogonality(system)
    generator = check_generator_criterion(system)
    failed = not (pairwise.holds and generator.holds)
    out: dict[str, Any] = {
        "pairwise_orthogonality": _verdict(system, pairwise),
        "generator_criterion": _verdict(system, generator),
    }
    if sf.mori_generated:
        mori = check_mori_negative_curves(system, True)
        out["mori_negative_curves"] = _verdict(system, mori)
        failed = failed or not mori.holds
    else:
        out["mori_negative_curves"] = {"skipped": "generators not flagged mori_generated"}

    div_rows = []
    for name, D in sf.divisors.items():
        if not D.is_effective:
            continue
        for i in system.negative_curves:
            w = divisibility_witness(system, i, D)
            row = {"divisor": name, "curve": system.curves[i].name, "divides": w is None}
            if w is not None:
                row.update({"product": w.product, "self_intersection": w.self_intersection,
                            "remainder": w.remainder, "scaling": w.scaling})
                failed = True
            div_rows.append(row)
    out["divisibility"] = div_rows

    cone_rows = []
    for name, D in sf.divisors.items():
        try:
            c = cone_determinant_scaling(system, D)
        except DegenerateCone as exc:
            cone_rows.append({"divisor": name, "error": str(exc)})
            continue
        cone_rows.append({"divisor": name, "det": c.delta, "integral_after_scaling": c.integral_after_scaling,
                          "clearing_factor": c.clearing_factor, "note": c.note})
        # the determinant bound is only predicted for Mori-generated cones
        if sf.mori_generated and not c.holds:
            failed = True
    out["cone_scaling"] = cone_rows

    neg = negativity_bound(system)
    out["negativity"] = {"negative_curves": _names(system, neg.negative_curve_indices), "b_observed": neg.b_observed}

    if opts.search_bound is not None:
        try:
            found = search_nonintegral_witness(system, opts.search_bound, opts.brute_force_cap)
        except ZariskiKitError as exc:
            if isinstance(exc, InputError):
                raise
            out["search"] = {"bound": opts.search_bound, "error": str(exc)}
            failed = True
        else:
            out["search"] = {"bound": opts.search_bound, "witness": None if found is None else _vec(found[0]),
                             "denominator": None if found is None else found[1]}
            failed = failed or found is not None
    return out, failed


def fiber_section(sf: SurfaceFile, names: Sequence[str], opts: Options) -> tuple[dict, bool]:
    for n in names:
        if n not in sf.fibers:
            raise InputError(f"unknown fiber {n!r}")
    system = sf.system
    out = []
    failed = False
    for n in names or list(sf.fibers):
        F = sf.fibers[n]
        r = analyze_fiber(system, F, max_subset=opts.max_subset)
        lemma = r.zariski_lemma
        c = r.d1_consistency
        out.append({
            "fiber": n,
            "components": _names(system, F.components),
            "multiplicities": list(F.multiplicities),
            "zariski_lemma": {
                "ok": lemma.ok,
                "component_products": list(lemma.component_products),
                "semidefinite": lemma.semidefinite,
                "self_intersection": lemma.self_intersection,
            },
            "d1_consistency": {
                "status": c.status.value,
                "witnesses": [_named_witness(system, w) for w in c.witnesses],
                "relations": [{"relation": x.name, "satisfied": x.satisfied, "detail": x.detail} for x in c.relations],
                "note": c.note,
            },
        })
        failed = failed or c.status.value != "consistent"
    return {"fibers": out}, failed


def _named_witness(system: CurveSystem, w: dict) -> dict:
    w = dict(w)
    for key in ("i", "j"):
        if key in w:
            w[key] = system.curves[w[key]].name
    return w


def _criterion(r: CriterionReport) -> dict:
    return {
        "criterion": r.criterion,
        "applicable": r.applicable,
        "verdict": r.verdict,
        "witnesses": list(r.witnesses),
        "values": r.values,
        "note": r.note,
    }


def criteria_section(sf: SurfaceFile, opts: Options) -> tuple[dict, bool]:
    reports = all_criteria(sf.surface_invariants, sf.system, opts.factor_cap)
    failed = any(r.verdict in ("fail", "inconclusive") for r in reports)
    return {"criteria": [_criterion(r) for r in reports]}, failed


# ---------------------------------------------------------------------------


def run_command(command: str, sf: SurfaceFile, args: Sequence[str] = (), opts: Optional[Options] = None) -> ReportDocument:
    opts = opts or Options()
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    if args and command not in ("decompose", "fiber"):
        raise InputError(f"{command} takes no positional names")
    sections: dict[str, Any] = {}
    failed = False
    notes = []
    if command in ("validate", "report"):
        sections["validate"] = validate_section(sf)
        notes.extend(sections["validate"]["lattice"]["warnings"])
    if command in ("decompose", "report"):
        sections["decompose"], bad = decompose_section(sf, args if command == "decompose" else (), opts)
        failed |= bad
    if command in ("check-d1", "report"):
        sections["check_d1"], bad = d1_section(sf, opts)
        failed |= bad
    if command == "check-mori":
        try:
            sections["check_mori"] = mori_section(sf)
        except PreconditionError as exc:
            raise InputError(str(exc)) from None
        failed |= not sections["check_mori"]["holds"]
    if command in ("fiber", "report"):
        sections["fiber"], bad = fiber_section(sf, args if command == "fiber" else (), opts)
        failed |= bad
    if command in ("criteria", "report"):
        sections["criteria"], bad = criteria_section(sf, opts)
        failed |= bad
    return ReportDocument(command, sections, failed, notes)


# ---------------------------------------------------------------------------
# text rendering


def _fmt(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, Fraction):
        return str(format_rational(v))
    return str(v)


def render_text(doc: ReportDocument) -> str:
    s = doc.sections
    out = [f"zariski-kit {doc.command}: {'FAIL' if doc.failed else 'OK'}"]
    for note in doc.notes:
        out.append(f"  warning: {note}")
    if "validate" in s:
        v = s["validate"]
        lat = v["lattice"]
        out.append(f"lattice rank {lat['rank']}, signature {_fmt(lat['signature'])}"
                   f"{'' if lat['hodge_signature'] else ' (not Hodge)'}")
        for c in v["curves"]:
            out.append(f"  {c['name']}^2 = {c['self_intersection']}")
        neg = v["negativity"]
        out.append(f"  negative curves {_fmt(neg['negative_curves'])}, observed bound b = {neg['b_observed']}")
    if "decompose" in s:
        out.append("Zariski decompositions (" + s["decompose"]["nef_caveat"] + "):")
        for e in s["decompose"]["decompositions"]:
            if "error" in e:
                out.append(f"  {e['divisor']} = {_fmt(e['D'])}: {e['error']['type']}: {e['error']['message']}")
                continue
            out.append(f"  {e['divisor']} = {_fmt(e['D'])}: P = {_fmt(e['P'])}, N = {_fmt(e['N'])}, "
                       f"support {_fmt(e['support'])}, denominator {e['denominator']}, oracle {e['oracle']}")
    if "check_d1" in s:
        d = s["check_d1"]
        out.append("integrality criteria:")
        for key in ("pairwise_orthogonality", "generator_criterion", "mori_negative_curves"):
            v = d[key]
            if "skipped" in v:
                out.append(f"  {key}: skipped ({v['skipped']})")
                continue
            out.append(f"  {key}: {'holds' if v['holds'] else 'fails'}")
            for w in v["violations"]:
                out.append("    " + ", ".join(f"{k}={_fmt(x)}" for k, x in w.items()))
        for row in d["divisibility"]:
            if not row["divides"]:
                out.append(f"  divisibility fails: {row['curve']} against {row['divisor']} "
                           f"(product {row['product']}, remainder {row['remainder']})")
        for row in d["cone_scaling"]:
            if "error" in row:
                out.append(f"  cone scaling {row['divisor']}: {row['error']}")
            elif not row["integral_after_scaling"]:
                out.append(f"  cone scaling {row['divisor']}: {row['note']}")
        if "search" in d:
            sr = d["search"]
            if "error" in sr:
                out.append(f"  witness search (bound {sr['bound']}): {sr['error']}")
            elif sr["witness"] is None:
                out.append(f"  witness search (bound {sr['bound']}): none found")
            else:
                out.append(f"  witness search (bound {sr['bound']}): D = {_fmt(sr['witness'])} "
                           f"has denominator {sr['denominator']}")
    if "check_mori" in s:
        v = s["check_mori"]
        out.append(f"mori negative curves: {'holds' if v['holds'] else 'fails'}")
        for w in v["violations"]:
            out.append("  " + ", ".join(f"{k}={_fmt(x)}" for k, x in w.items()))
    if "fiber" in s:
        for f in s["fiber"]["fibers"]:
            lem = f["zariski_lemma"]
            con = f["d1_consistency"]
            out.append(f"fiber {f['fiber']} = {_fmt(f['multiplicities'])} . {_fmt(f['components'])}: "
                       f"Zariski lemma {'ok' if lem['ok'] else 'violated'}, {con['status']}")
            for w in con["witnesses"]:
                out.append("    " + ", ".join(f"{k}={_fmt(x)}" for k, x in w.items()))
            for r in con["relations"]:
                out.append(f"    {r['relation']}: {'holds' if r['satisfied'] else 'fails'} ({r['detail']})")
            if con["note"]:
                out.append(f"    note: {con['note']}")
    if "criteria" in s:
        for c in s["criteria"]["criteria"]:
            line = f"criterion {c['criterion']}: {c['verdict']}"
            if c["note"]:
                line += f" ({c['note']})"
            out.append(line)
    return "\n".join(out) + "\n"
