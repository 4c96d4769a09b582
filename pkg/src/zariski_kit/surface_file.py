"""TOML surface-description files.

See ``docs/file-format.md`` for the grammar.  Rationals are written as
integers or ``"p/q"`` strings; floating point literals are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import tomli
import tomli_w

from .criteria import NEG_INF, SurfaceInvariants
from .errors import InputError
from .fibers import FiberConfiguration
from .lattice import CurveClass, CurveSystem, Divisor, IntersectionLattice, validate_lattice

SCHEMA_VERSION = 1

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_TOP_KEYS = {"schema_version", "lattice", "curves", "divisors", "fibers", "invariants", "flags"}
_INVARIANT_KEYS = {
    "K", "K_squared", "picard_number", "kodaira_dimension", "minimal", "chi", "base_genus", "iitaka_fibers_mI0",
}


class _FloatLiteral(Exception):
    pass


def _reject_float(text: str):
    raise _FloatLiteral(text)


@dataclass(frozen=True)
class SurfaceFile:
    system: CurveSystem
    divisors: dict[str, Divisor] = field(default_factory=dict)
    fibers: dict[str, FiberConfiguration] = field(default_factory=dict)
    invariants: Optional[SurfaceInvariants] = None
    mori_generated: bool = False
    schema_version: int = SCHEMA_VERSION

    @property
    def surface_invariants(self) -> SurfaceInvariants:
        """Declared invariants, or an empty block carrying only the flags."""
        if self.invariants is None:
            return SurfaceInvariants(mori_generated=self.mori_generated)
        return self.invariants


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer or 'p/q' string, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise InputError(f"{where}: {value!r} is not an integer or 'p/q' rational (floats are rejected)")
        q = int(m.group(2) or 1)
        if q == 0:
            raise InputError(f"{where}: zero denominator in {value!r}")
        return Fraction(int(m.group(1)), q)
    raise InputError(f"{where}: expected an integer or 'p/q' string, got {value!r}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _bool(value: Any, where: str) -> bool:
    if not isinstance(value, bool):
        raise InputError(f"{where}: expected true or false, got {value!r}")
    return value


def _table(doc: dict, key: str) -> dict:
    value = doc.get(key, {})
    if not isinstance(value, dict):
        raise InputError(f"[{key}] must be a table")
    return value


def _divisor(value: Any, n: int, where: str) -> Divisor:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected an array of coefficients")
    if len(value) != n:
        raise InputError(f"{where}: {len(value)} coefficients but the system has {n} curves")
    return Divisor(tuple(parse_rational(x, f"{where}[{k}]") for k, x in enumerate(value)))


def parse_surface_text(text: str) -> SurfaceFile:
    try:
        doc = tomli.loads(text, parse_float=_reject_float)
    except _FloatLiteral as exc:
        line = _find_line(text, str(exc))
        raise InputError(f"float literal {exc} rejected{line}; write rationals as integers or 'p/q' strings") from None
    except tomli.TOMLDecodeError as exc:
        raise InputError(f"syntax error: {exc}") from None
    return _from_document(doc)


def _find_line(text: str, literal: str) -> str:
    for k, line in enumerate(text.splitlines(), 1):
        if literal in line.split("#", 1)[0]:
            return f" at line {k}"
    return ""


def parse_surface_file(source: Union[str, Path]) -> SurfaceFile:
    """Load from a path, or from TOML text when ``source`` is a multi-line string."""
    if isinstance(source, str) and "\n" in source:
        return parse_surface_text(source)
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_surface_text(text)


def _from_document(doc: dict) -> SurfaceFile:
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise InputError(f"unknown top-level keys: {sorted(unknown)}")
    version = _int(doc.get("schema_version", SCHEMA_VERSION), "schema_version")
    if version != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {version}; this tool reads {SCHEMA_VERSION}")

    lat = _table(doc, "lattice")
    if set(lat) - {"rank", "gram"}:
        raise InputError(f"unknown lattice keys: {sorted(set(lat) - {'rank', 'gram'})}")
    rows = lat.get("gram")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("[lattice] needs gram = [[...], ...]")
    gram = tuple(tuple(_int(x, f"lattice.gram[{i}][{j}]") for j, x in enumerate(r)) for i, r in enumerate(rows))
    if "rank" in lat and _int(lat["rank"], "lattice.rank") != len(gram):
        raise InputError(f"lattice.rank = {lat['rank']} but gram has {len(gram)} rows")
    report = validate_lattice(gram)
    if not report.ok:
        raise InputError("lattice: " + "; ".join(report.errors))
    lattice = IntersectionLattice(gram)

    raw_curves = doc.get("curves")
    if raw_curves is None:
        curves = tuple(
            CurveClass(f"C{i + 1}", tuple(int(i == j) for j in range(lattice.rank))) for i in range(lattice.rank)
        )
    else:
        if not isinstance(raw_curves, list):
            raise InputError("curves must be an array of tables")
        curves = []
        for k, c in enumerate(raw_curves):
            if not isinstance(c, dict) or set(c) != {"name", "coords"}:
                raise InputError(f"curves[{k}] needs exactly the keys name and coords")
            if not isinstance(c["name"], str):
                raise InputError(f"curves[{k}].name must be a string")
            if not isinstance(c["coords"], list):
                raise InputError(f"curves[{k}].coords must be an array")
            coords = tuple(_int(x, f"curves[{k}].coords") for x in c["coords"])
            curves.append(CurveClass(c["name"], coords))
        curves = tuple(curves)
    system = CurveSystem(lattice, curves)
    n = len(system)

    divisors = {
        name: _divisor(v, n, f"divisors.{name}") for name, v in _table(doc, "divisors").items()
    }

    fibers = {}
    for name, f in _table(doc, "fibers").items():
        if not isinstance(f, dict) or set(f) - {"components", "multiplicities"} or "components" not in f:
            raise InputError(f"fibers.{name} needs components and optional multiplicities")
        comps = f["components"]
        if not isinstance(comps, list) or not all(isinstance(c, str) for c in comps):
            raise InputError(f"fibers.{name}.components must be an array of curve names")
        mults = f.get("multiplicities", [1] * len(comps))
        if not isinstance(mults, list):
            raise InputError(f"fibers.{name}.multiplicities must be an array")
        fibers[name] = FiberConfiguration(
            tuple(system.index(c) for c in comps),
            tuple(_int(a, f"fibers.{name}.multiplicities") for a in mults),
            name,
        )

    flags = _table(doc, "flags")
    if set(flags) - {"mori_generated"}:
        raise InputError(f"unknown flags: {sorted(set(flags) - {'mori_generated'})}")
    mori = _bool(flags.get("mori_generated", False), "flags.mori_generated")

    invariants = None
    if "invariants" in doc:
        inv = _table(doc, "invariants")
        unknown = set(inv) - _INVARIANT_KEYS
        if unknown:
            raise InputError(f"unknown invariants: {sorted(unknown)}")
        kappa = inv.get("kodaira_dimension")
        if kappa is not None and kappa != NEG_INF:
            kappa = _int(kappa, "invariants.kodaira_dimension")

        def opt_int(key):
            return None if key not in inv else _int(inv[key], f"invariants.{key}")

        invariants = SurfaceInvariants(
            K_squared=opt_int("K_squared"),
            picard_number=opt_int("picard_number"),
            kodaira_dimension=kappa,
            minimal=_bool(inv.get("minimal", False), "invariants.minimal"),
            canonical_class=_divisor(inv["K"], n, "invariants.K") if "K" in inv else None,
            chi=opt_int("chi"),
            base_genus=opt_int("base_genus"),
            iitaka_fibers_mI0=_bool(inv.get("iitaka_fibers_mI0", False), "invariants.iitaka_fibers_mI0"),
            mori_generated=mori,
        )
        invariants.check_against(system)
        if invariants.picard_number is not None and invariants.picard_number != lattice.rank:
            raise InputError(f"picard_number = {invariants.picard_number} but the lattice has rank {lattice.rank}")

    return SurfaceFile(system, divisors, fibers, invariants, mori, version)


def format_rational(x: Fraction) -> Union[int, str]:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_document(sf: SurfaceFile) -> dict:
    system = sf.system
    doc: dict[str, Any] = {
        "schema_version": sf.schema_version,
        "lattice": {"rank": system.lattice.rank, "gram": [list(r) for r in system.lattice.gram]},
        "curves": [{"name": c.name, "coords": list(c.coords)} for c in system.curves],
    }
    if sf.divisors:
        doc["divisors"] = {k: [format_rational(c) for c in D.coeffs] for k, D in sf.divisors.items()}
    if sf.fibers:
        doc["fibers"] = {
            k: {"components": [system.curves[i].name for i in F.components], "multiplicities": list(F.multiplicities)}
            for k, F in sf.fibers.items()
        }
    if sf.invariants is not None:
        inv = sf.invariants
        block: dict[str, Any] = {}
        if inv.canonical_class is not None:
            block["K"] = [format_rational(c) for c in inv.canonical_class.coeffs]
        for key in ("K_squared", "picard_number", "kodaira_dimension", "chi", "base_genus"):
            value = getattr(inv, key)
            if value is not None:
                block[key] = value
        block["minimal"] = inv.minimal
        block["iitaka_fibers_mI0"] = inv.iitaka_fibers_mI0
        doc["invariants"] = block
    doc["flags"] = {"mori_generated": sf.mori_generated}
    return doc


def serialize_surface_file(sf: SurfaceFile) -> str:
    return tomli_w.dumps(to_document(sf))
