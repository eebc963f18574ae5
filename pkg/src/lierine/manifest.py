"""JSON manifests: a base ring, a Lie-Rinehart algebra and named connections.

Bracket indices ``i``, ``j`` are 1-based, matching the reports.  Polynomial
entries are strings in the :func:`parse_polynomial` grammar or plain
integers.  :func:`canonical` gives the normalised form that
``serialize(parse(m))`` reproduces.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .connections import Connection
from .errors import LierineError, ManifestError
from .exact_algebra import Polynomial, RingSpec, format_polynomial, parse_polynomial
from .lie_rinehart import Derivation, LieRinehartData


@dataclass
class Manifest:
    ring: RingSpec
    algebra: LieRinehartData
    modules: dict[str, Connection]

    def module(self, name: str) -> Connection:
        try:
            return self.modules[name]
        except KeyError:
            known = ", ".join(self.modules) or "none"
            raise ManifestError(f"unknown module {name!r} (known: {known})") from None

    def to_dict(self) -> dict:
        return serialize(self)

    def digest(self) -> str:
        text = json.dumps(serialize(self), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def _require(obj: dict, key: str, where: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ManifestError(f"{where}.{key} required" if where else f"{key} required")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        names = {int: "an integer", str: "a string", list: "a list", dict: "an object"}[kind]
        raise ManifestError(f"{where}.{key} must be {names}" if where else f"{key} must be {names}")
    return value


def _poly(value, ring: RingSpec, where: str) -> Polynomial:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ManifestError(f"{where}: expected a polynomial string, got {value!r}")
    try:
        return parse_polynomial(value, ring)
    except LierineError as exc:
        raise ManifestError(f"{where}: {exc}") from None


def _list(value, length: int, where: str) -> list:
    if not isinstance(value, list):
        raise ManifestError(f"{where} must be a list")
    if len(value) != length:
        raise ManifestError(f"{where} must have length {length}, got {len(value)}")
    return value


def _parse_ring(data: dict) -> RingSpec:
    ring = _require(data, "ring", "", dict)
    names = _require(ring, "variables", "ring", list)
    if not all(isinstance(v, str) for v in names):
        raise ManifestError("ring.variables must be strings")
    trunc = ring.get("truncation")
    bounds = None
    if trunc is not None:
        if not isinstance(trunc, dict):
            raise ManifestError("ring.truncation must be an object {variable: bound}")
        for var, b in trunc.items():
            if var not in names:
                raise ManifestError(f"ring.truncation: unknown variable {var!r}")
            if isinstance(b, bool) or not isinstance(b, int) or b < 1:
                raise ManifestError(f"ring.truncation.{var} must be an integer >= 1")
        bounds = tuple(trunc.get(v) for v in names)
    try:
        return RingSpec(tuple(names), bounds)
    except LierineError as exc:
        raise ManifestError(f"ring: {exc}") from None


def _parse_algebra(data: dict, ring: RingSpec) -> LieRinehartData:
    alg = _require(data, "algebra", "", dict)
    m = _require(alg, "rank", "algebra", int)
    if m < 1:
        raise ManifestError("algebra.rank must be positive")
    anchor_rows = _list(_require(alg, "anchor", "algebra"), m, "algebra.anchor")
    anchor = []
    for a, row in enumerate(anchor_rows, 1):
        row = _list(row, ring.nvars, f"algebra.anchor[{a}]")
        anchor.append(Derivation(ring, [_poly(x, ring, f"algebra.anchor[{a}][{v}]")
                                        for v, x in enumerate(row, 1)]))
    brackets = {}
    entries = alg.get("brackets", [])
    if not isinstance(entries, list):
        raise ManifestError("algebra.brackets must be a list")
    for n, entry in enumerate(entries, 1):
        where = f"algebra.brackets[{n}]"
        i = _require(entry, "i", where, int)
        j = _require(entry, "j", where, int)
        if i >= j:
            raise ManifestError("brackets must have i<j")
        if i < 1 or j > m:
            raise ManifestError(f"{where}: indices must lie in 1..{m}")
        if (i - 1, j - 1) in brackets:
            raise ManifestError(f"{where}: duplicate bracket ({i}, {j})")
        coeffs = _list(_require(entry, "coeffs", where), m, f"{where}.coeffs")
        brackets[(i - 1, j - 1)] = [_poly(x, ring, f"{where}.coeffs[{k}]") for k, x in enumerate(coeffs, 1)]
    try:
        return LieRinehartData(ring, anchor, brackets)
    except LierineError as exc:
        raise ManifestError(f"algebra: {exc}") from None


def _parse_modules(data: dict, L: LieRinehartData) -> dict[str, Connection]:
    entries = data.get("modules", [])
    if not isinstance(entries, list):
        raise ManifestError("modules must be a list")
    out: dict[str, Connection] = {}
    for n, entry in enumerate(entries, 1):
        where = f"modules[{n}]"
        name = _require(entry, "name", where, str)
        if not name or name in out:
            raise ManifestError(f"{where}.name must be non-empty and unique")
        r = _require(entry, "rank", where, int)
        if r < 1:
            raise ManifestError(f"{where}.rank must be positive")
        mats = _list(_require(entry, "christoffel", where), L.rank, f"{where}.christoffel")
        gam = []
        for j, mat in enumerate(mats, 1):
            rows = _list(mat, r, f"{where}.christoffel[{j}]")
            gam.append(tuple(
                tuple(_poly(x, L.ring, f"{where}.christoffel[{j}][{a}][{b}]")
                      for b, x in enumerate(_list(row, r, f"{where}.christoffel[{j}][{a}]"), 1))
                for a, row in enumerate(rows, 1)
            ))
        out[name] = Connection(L, r, tuple(gam), name)
    return out


def load_manifest(data: Any) -> Manifest:
    """Validate an already-decoded JSON object."""
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a JSON object")
    ring = _parse_ring(data)
    algebra = _parse_algebra(data, ring)
    return Manifest(ring, algebra, _parse_modules(data, algebra))


def parse_manifest(path: str | Path) -> Manifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno})") from None
    return load_manifest(data)


def serialize(m: Manifest) -> dict:
    ring = m.ring
    out_ring: dict = {"variables": list(ring.variables)}
    if ring.truncation is not None:
        out_ring["truncation"] = {v: b for v, b in zip(ring.variables, ring.truncation) if b is not None}
    L = m.algebra
    algebra = {
        "rank": L.rank,
        "anchor": [[format_polynomial(c) for c in d.coefficients] for d in L.anchor],
        "brackets": [
            {"i": i + 1, "j": j + 1, "coeffs": [format_polynomial(c) for c in row]}
            for (i, j), row in sorted(L.brackets.items())
        ],
    }
    modules = [
        {"name": name, "rank": c.rank,
         "christoffel": [[[format_polynomial(x) for x in row] for row in g] for g in c.christoffel]}
        for name, c in m.modules.items()
    ]
    return {"ring": out_ring, "algebra": algebra, "modules": modules}


def canonical(data: Any) -> dict:
    return serialize(load_manifest(data))
