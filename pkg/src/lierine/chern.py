"""Curvature powers, Chern components ``tr(R^n)/n!`` and the Chern character.

``exp(R)`` is a finite sum here: ``R^n`` has degree ``2n`` and vanishes once
``2n`` exceeds the rank of g.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .connections import Connection, curvature
from .errors import StructuralError
from .forms import Form, Kind, ScalarAction, differential, trace_form, wedge
from .lie_rinehart import LieRinehartData


def curvature_power(R: Form, n: int) -> Form:
    if R.kind is not Kind.ENDO or R.degree != 2:
        raise StructuralError("curvature_power expects an Endo 2-form")
    if n < 0:
        raise ValueError("n must be non-negative")
    result = Form.identity(R.algebra, R.rank)
    for _ in range(n):
        result = wedge(result, R)
    return result


def chern_component(c: Connection, n: int, R: Form | None = None) -> Form:
    R = curvature(c) if R is None else R
    return trace_form(curvature_power(R, n)).scaled(Fraction(1, math.factorial(n)))


@dataclass
class ChernForm:
    """Components ``n -> ch_n`` (scalar ``2n``-forms) for ``0 <= n <= m // 2``."""

    algebra: LieRinehartData
    components: dict[int, Form] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return self.algebra.rank // 2

    @classmethod
    def zero(cls, algebra: LieRinehartData) -> ChernForm:
        return cls(algebra, {n: Form.zero(algebra, 2 * n, Kind.SCALAR) for n in range(algebra.rank // 2 + 1)})

    def __getitem__(self, n: int) -> Form:
        return self.components[n]

    def _check(self, other: ChernForm):
        if self.algebra != other.algebra or self.components.keys() != other.components.keys():
            raise StructuralError("Chern forms on different algebras")

    def __add__(self, other: ChernForm) -> ChernForm:
        self._check(other)
        return ChernForm(self.algebra, {n: f + other.components[n] for n, f in self.components.items()})

    def __sub__(self, other: ChernForm) -> ChernForm:
        self._check(other)
        return ChernForm(self.algebra, {n: f - other.components[n] for n, f in self.components.items()})

    def scaled(self, k) -> ChernForm:
        return ChernForm(self.algebra, {n: f.scaled(k) for n, f in self.components.items()})

    def wedge(self, other: ChernForm) -> ChernForm:
        """Product in the even part of ``C*(g, A)``, truncated at the top degree."""
        self._check(other)
        out = {}
        for n in self.components:
            acc = Form.zero(self.algebra, 2 * n, Kind.SCALAR)
            for i in range(n + 1):
                acc = acc + wedge(self.components[i], other.components[n - i])
            out[n] = acc
        return ChernForm(self.algebra, out)

    def __eq__(self, other):
        if not isinstance(other, ChernForm):
            return NotImplemented
        return self.algebra == other.algebra and self.components == other.components

    def to_dict(self) -> list[dict]:
        return [
            {"n": n, "degree": 2 * n, "entries": f.to_entries()}
            for n, f in sorted(self.components.items())
        ]


def chern_character(c: Connection) -> ChernForm:
    R = curvature(c)
    comps = {}
    power = Form.identity(c.algebra, c.rank)
    for n in range(c.algebra.rank // 2 + 1):
        if n:
            power = wedge(power, R)
        comps[n] = trace_form(power).scaled(Fraction(1, math.factorial(n)))
    return ChernForm(c.algebra, comps)


@dataclass
class ClosednessReport:
    # n -> True when d(ch_n) == 0
    closed: dict[int, bool]

    @property
    def passed(self) -> bool:
        return all(self.closed.values())

    @property
    def failing_degrees(self) -> list[int]:
        return [2 * n for n, ok in sorted(self.closed.items()) if not ok]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "closed": {str(2 * n): ok for n, ok in sorted(self.closed.items())},
            "failing_degrees": self.failing_degrees,
        }


def verify_closed_form(ch: ChernForm) -> ClosednessReport:
    action = ScalarAction(ch.algebra)
    return ClosednessReport({n: differential(f, action).is_zero() for n, f in ch.components.items()})


def verify_closed(c: Connection | ChernForm) -> ClosednessReport:
    ch = c if isinstance(c, ChernForm) else chern_character(c)
    return verify_closed_form(ch)
