"""Lie-Rinehart algebras that are free of finite rank over the base ring.

The algebra has an A-basis ``g_0 .. g_{m-1}`` (indices are 0-based in the
API; reports and manifests are 1-based), structure constants
``[g_i, g_j] = sum_k c[i, j][k] g_k`` stored only for ``i < j``, and an
anchor sending each ``g_i`` to a derivation ``sum_v a_iv d/dx_v`` of A.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import StructuralError
from .exact_algebra import Polynomial, RingSpec

DEFAULT_MAX_RANK = 12


def max_rank() -> int:
    return int(os.environ.get("LIERINE_MAX_RANK", DEFAULT_MAX_RANK))


class Derivation:
    """The derivation ``sum_v coefficients[v] * d/dx_v`` of a polynomial ring.

    On a truncated ring the derivative is taken on representatives and then
    reduced.  That only descends to the quotient when every ideal generator
    ``x_v^d_v`` is sent into the ideal; :meth:`truncation_violations` lists the
    variables where this fails.
    """

    __slots__ = ("ring", "coefficients")

    def __init__(self, ring: RingSpec, coefficients: Sequence[Polynomial]):
        coefficients = tuple(coefficients)
        if len(coefficients) != ring.nvars:
            raise StructuralError(
                f"derivation needs {ring.nvars} coefficients, got {len(coefficients)}")
        for c in coefficients:
            if c.ring != ring:
                raise StructuralError(f"derivation coefficient in {c.ring}, expected {ring}")
        self.ring = ring
        self.coefficients = coefficients

    @classmethod
    def zero(cls, ring: RingSpec) -> Derivation:
        return cls(ring, [ring.zero()] * ring.nvars)

    @classmethod
    def partial(cls, ring: RingSpec, v: int) -> Derivation:
        return cls(ring, [ring.one() if k == v else ring.zero() for k in range(ring.nvars)])

    def __call__(self, a: Polynomial) -> Polynomial:
        if a.ring != self.ring:
            raise StructuralError(f"ring mismatch: {a.ring} vs {self.ring}")
        acc = self.ring.zero()
        for v, c in enumerate(self.coefficients):
            if c.terms:
                acc = acc + c * a.derive(v)
        return acc

    def truncation_violations(self) -> list[int]:
        ring = self.ring
        if ring.truncation is None:
            return []
        bad = []
        for v, d in enumerate(ring.truncation):
            if d is None:
                continue
            # D(x_v^d) = c_v * d * x_v^(d-1); x_v^(d-1) is a standard monomial
            mono = tuple(d - 1 if k == v else 0 for k in range(ring.nvars))
            image = self.coefficients[v] * ring.monomial(mono, d)
            if image.terms:
                bad.append(v)
        return bad

    def commutator(self, other: Derivation) -> Derivation:
        """``self o other - other o self``, read off on the ring variables."""
        return Derivation(self.ring, [
            self(b) - other(a) for a, b in zip(self.coefficients, other.coefficients)
        ])

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(self.ring, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    def scaled(self, a: Polynomial) -> Derivation:
        return Derivation(self.ring, [a * c for c in self.coefficients])

    def is_zero(self) -> bool:
        return all(not c.terms for c in self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.ring == other.ring and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.ring, self.coefficients))

    def __repr__(self):
        parts = [f"({c})*d{v}" for c, v in zip(self.coefficients, self.ring.variables) if c.terms]
        return "Derivation(" + (" + ".join(parts) or "0") + ")"


@dataclass(frozen=True)
class GElement:
    """``sum_i coefficients[i] * g_i``."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    def __len__(self):
        return len(self.coefficients)

    def __add__(self, other: GElement) -> GElement:
        return GElement(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: GElement) -> GElement:
        return GElement(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> GElement:
        return GElement(tuple(-a for a in self.coefficients))

    def scaled(self, a) -> GElement:
        return GElement(tuple(a * c for c in self.coefficients))

    def is_zero(self) -> bool:
        return all(not c.terms for c in self.coefficients)


@dataclass
class AxiomReport:
    """Violations found by :meth:`LieRinehartData.verify_axioms` (0-based indices)."""

    anchor: list[tuple[int, int, int]] = field(default_factory=list)  # (i, j, variable)
    jacobi: list[tuple[int, int, int]] = field(default_factory=list)
    truncation: list[tuple[int, int]] = field(default_factory=list)  # (basis index, variable)

    @property
    def passed(self) -> bool:
        return not (self.anchor or self.jacobi or self.truncation)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "anchor_violations": [[i + 1, j + 1, v + 1] for i, j, v in self.anchor],
            "jacobi_violations": [[i + 1, j + 1, k + 1] for i, j, k in self.jacobi],
            "truncation_violations": [[i + 1, v + 1] for i, v in self.truncation],
        }


class LieRinehartData:
    """A free (k, A)-Lie-Rinehart algebra of rank ``m``.

    ``brackets`` maps 0-based pairs ``(i, j)`` with ``i < j`` to the ``m``
    coefficients of ``[g_i, g_j]``; omitted pairs bracket to zero.  Jacobi and
    anchor compatibility are not enforced here; call :meth:`verify_axioms`.
    """

    def __init__(
        self,
        ring: RingSpec,
        anchor: Sequence[Derivation],
        brackets: Mapping[tuple[int, int], Sequence[Polynomial]] | None = None,
    ):
        anchor = tuple(anchor)
        m = len(anchor)
        if m < 1:
            raise StructuralError("rank must be positive")
        if m > max_rank():
            raise StructuralError(f"rank {m} exceeds LIERINE_MAX_RANK={max_rank()}")
        for d in anchor:
            if d.ring != ring:
                raise StructuralError(f"anchor derivation over {d.ring}, expected {ring}")
        table: dict[tuple[int, int], tuple[Polynomial, ...]] = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < j < m):
                raise StructuralError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < {m}")
            coeffs = tuple(coeffs)
            if len(coeffs) != m:
                raise StructuralError(f"bracket ({i}, {j}) needs {m} coefficients")
            for c in coeffs:
                if c.ring != ring:
                    raise StructuralError(f"structure constant over {c.ring}, expected {ring}")
            if any(c.terms for c in coeffs):
                table[(i, j)] = coeffs
        self.ring = ring
        self.rank = m
        self.anchor = anchor
        self.brackets = table
        self._zero_row = (ring.zero(),) * m

    # basis-level data ---------------------------------------------------
    def basis_bracket(self, i: int, j: int) -> tuple[Polynomial, ...]:
        if i == j:
            return self._zero_row
        if i < j:
            return self.brackets.get((i, j), self._zero_row)
        row = self.brackets.get((j, i))
        return self._zero_row if row is None else tuple(-c for c in row)

    def basis(self, i: int) -> GElement:
        ring = self.ring
        return GElement(tuple(ring.one() if k == i else ring.zero() for k in range(self.rank)))

    def element(self, coefficients: Sequence) -> GElement:
        coeffs = tuple(
            c if isinstance(c, Polynomial) else self.ring.const(c) for c in coefficients
        )
        self._check_element(GElement(coeffs))
        return GElement(coeffs)

    def zero_element(self) -> GElement:
        return GElement(self._zero_row)

    def _check_element(self, d: GElement):
        if len(d.coefficients) != self.rank:
            raise StructuralError(f"element has {len(d.coefficients)} coefficients, rank is {self.rank}")
        for c in d.coefficients:
            if c.ring != self.ring:
                raise StructuralError(f"element coefficient over {c.ring}, expected {self.ring}")

    def max_degree(self) -> dict[str, int]:
        """Largest total degree among anchor and structure-constant coefficients."""
        anchor = max((c.degree for d in self.anchor for c in d.coefficients), default=-1)
        brackets = max((c.degree for row in self.brackets.values() for c in row), default=-1)
        return {"anchor": anchor, "brackets": brackets}

    # operations ---------------------------------------------------------
    def anchor_apply(self, d: GElement, a: Polynomial) -> Polynomial:
        """``alpha(d)(a) = sum_i d_i * alpha(g_i)(a)``."""
        self._check_element(d)
        if a.ring != self.ring:
            raise StructuralError(f"ring mismatch: {a.ring} vs {self.ring}")
        acc = self.ring.zero()
        for di, der in zip(d.coefficients, self.anchor):
            if di.terms:
                acc = acc + di * der(a)
        return acc

    def anchor_of(self, d: GElement) -> Derivation:
        acc = Derivation.zero(self.ring)
        for di, der in zip(d.coefficients, self.anchor):
            if di.terms:
                acc = acc + der.scaled(di)
        return acc

    def bracket_general(self, d: GElement, e: GElement) -> GElement:
        """Bracket of arbitrary elements.

        ``[a g_i, b g_j] = ab [g_i, g_j] + a alpha(g_i)(b) g_j - b alpha(g_j)(a) g_i``.
        """
        self._check_element(d)
        self._check_element(e)
        m = self.rank
        out = list(self._zero_row)
        for i in range(m):
            a = d.coefficients[i]
            if not a.terms:
                continue
            for j in range(m):
                b = e.coefficients[j]
                if not b.terms:
                    continue
                if i != j:
                    row = self.basis_bracket(i, j)
                    ab = a * b
                    for k in range(m):
                        if row[k].terms:
                            out[k] = out[k] + ab * row[k]
                out[j] = out[j] + a * self.anchor[i](b)
                out[i] = out[i] - b * self.anchor[j](a)
        return GElement(tuple(out))

    def verify_axioms(self) -> AxiomReport:
        report = AxiomReport()
        m, ring = self.rank, self.ring
        for i, j in itertools.combinations(range(m), 2):
            row = self.basis_bracket(i, j)
            lhs = self.anchor_of(GElement(row))
            rhs = self.anchor[i].commutator(self.anchor[j])
            for v in range(ring.nvars):
                if lhs.coefficients[v] != rhs.coefficients[v]:
                    report.anchor.append((i, j, v))
        for i, j, k in itertools.combinations(range(m), 3):
            gi, gj, gk = self.basis(i), self.basis(j), self.basis(k)
            total = (
                self.bracket_general(gi, self.bracket_general(gj, gk))
                + self.bracket_general(gj, self.bracket_general(gk, gi))
                + self.bracket_general(gk, self.bracket_general(gi, gj))
            )
            if not total.is_zero():
                report.jacobi.append((i, j, k))
        for i, der in enumerate(self.anchor):
            for v in der.truncation_violations():
                report.truncation.append((i, v))
        return report

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LieRinehartData):
            return NotImplemented
        return self.ring == other.ring and self.anchor == other.anchor and self.brackets == other.brackets

    def __hash__(self):
        return hash((self.ring, self.anchor, frozenset(self.brackets)))

    def __repr__(self):
        return f"LieRinehartData(rank={self.rank}, ring={self.ring})"


def anchor_apply(L: LieRinehartData, d: GElement, a: Polynomial) -> Polynomial:
    return L.anchor_apply(d, a)


def bracket_general(L: LieRinehartData, d: GElement, e: GElement) -> GElement:
    return L.bracket_general(d, e)


def verify_axioms(L: LieRinehartData) -> AxiomReport:
    return L.verify_axioms()
