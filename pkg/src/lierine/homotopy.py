"""Extension of scalars to A[t], the interpolating connection and evaluation at t = 0, 1.

``t`` is an ordinary extra polynomial variable that no truncation bound
touches; anchor and structure constants never involve it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import matrices as mx
from .chern import chern_component, curvature_power
from .connections import Connection, ad_connection, curvature
from .errors import StructuralError
from .exact_algebra import Polynomial
from .forms import Form, Kind, ScalarAction, differential, trace_form, wedge
from .lie_rinehart import Derivation, LieRinehartData
from .samples import random_form


@dataclass
class TExtended:
    """Data over ``A[t]``: the extended algebra and optionally a connection on ``W[t]``."""

    base: LieRinehartData
    algebra: LieRinehartData
    t_index: int
    connection: Connection | None = None

    @property
    def t(self) -> Polynomial:
        return self.algebra.ring.var(self.t_index)

    def lift(self, a: Polynomial) -> Polynomial:
        return a.embed(self.algebra.ring)

    def lift_connection(self, c: Connection) -> Connection:
        if c.algebra != self.base:
            raise StructuralError("connection does not live on the base algebra")
        return Connection(self.algebra, c.rank,
                          tuple(mx.map_entries(self.lift, g) for g in c.christoffel), c.label)

    def lift_form(self, phi: Form) -> Form:
        f = phi.map_coefficients(self.lift)
        return Form(self.algebra, phi.degree, phi.kind, f.values, phi.rank)

    def evaluate(self, a: Polynomial, i) -> Polynomial:
        return a.substitute(self.t_index, i)


def _fresh_name(names) -> str:
    name = "t"
    while name in names:
        name += "_"
    return name


def extend_scalars(L: LieRinehartData, c: Connection | None = None) -> TExtended:
    ring_t = L.ring.extend(_fresh_name(L.ring.variables))
    anchor = [Derivation(ring_t, [x.embed(ring_t) for x in d.coefficients] + [ring_t.zero()])
              for d in L.anchor]
    brackets = {key: [x.embed(ring_t) for x in row] for key, row in L.brackets.items()}
    ext = TExtended(L, LieRinehartData(ring_t, anchor, brackets), ring_t.nvars - 1)
    if c is not None:
        ext.connection = ext.lift_connection(c)
    return ext


def interpolate_connection(c0: Connection, c1: Connection) -> TExtended:
    """The ``g[t]``-connection ``t * nabla_1 + (1 - t) * nabla_0``."""
    if c0.algebra != c1.algebra or c0.rank != c1.rank:
        raise StructuralError("interpolation needs connections on the same algebra and rank")
    ext = extend_scalars(c0.algebra)
    t = ext.t
    one_minus_t = ext.algebra.ring.one() - t
    gam = tuple(
        mx.add(mx.scale(mx.map_entries(ext.lift, g1), t), mx.scale(mx.map_entries(ext.lift, g0), one_minus_t))
        for g0, g1 in zip(c0.christoffel, c1.christoffel)
    )
    ext.connection = Connection(ext.algebra, c0.rank, gam, f"[{c0.label}~{c1.label}]")
    return ext


def evaluate_at(ext: TExtended, obj, i):
    """``p^i_*``: substitute ``t = i`` in a form or connection over ``A[t]``."""
    if i not in (0, 1):
        raise ValueError("evaluation point must be 0 or 1")
    if isinstance(obj, Connection):
        gam = tuple(mx.map_entries(lambda a: ext.evaluate(a, i), g) for g in obj.christoffel)
        return Connection(ext.base, obj.rank, gam, obj.label)
    if isinstance(obj, Form):
        if obj.algebra != ext.algebra:
            raise StructuralError("form does not live on the extended algebra")
        f = obj.map_coefficients(lambda a: ext.evaluate(a, i))
        return Form(ext.base, obj.degree, obj.kind, f.values, obj.rank)
    raise TypeError(f"cannot evaluate {type(obj).__name__}")


@dataclass
class HomotopyReport:
    checks: list[tuple[str, int, bool]] = field(default_factory=list)

    def record(self, name: str, point: int, ok: bool):
        self.checks.append((name, point, bool(ok)))

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    @property
    def failures(self) -> list[tuple[str, int]]:
        return [(name, i) for name, i, ok in self.checks if not ok]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": [{"check": name, "t": i} for name, i in self.failures],
        }


def verify_evaluation_identities(c0: Connection, c1: Connection, rng: random.Random | None = None,
                                 samples: int = 2) -> HomotopyReport:
    """Check that evaluation at t = 0, 1 commutes with d, wedge, trace and curvature powers."""
    rng = rng or random.Random(0)
    ext = interpolate_connection(c0, c1)
    Lt, ct = ext.algebra, ext.connection
    m, r = Lt.rank, ct.rank
    report = HomotopyReport()
    Rt = curvature(ct)
    top = m // 2
    powers_t = [curvature_power(Rt, k) for k in range(top + 1)]
    chern_t = [chern_component(ct, n, Rt) for n in range(top + 1)]
    module_t, ad_t = ct.module_action(), ad_connection(ct)
    forms = []
    for _ in range(samples):
        for p in range(m):
            forms.append(random_form(rng, Lt, p, Kind.SCALAR, None, 2))
            forms.append(random_form(rng, Lt, p, Kind.MODULE, r, 1))
            forms.append(random_form(rng, Lt, p, Kind.ENDO, r, 1))
    for i, ci in ((0, c0), (1, c1)):
        ev = lambda f: evaluate_at(ext, f, i)  # noqa: E731
        report.record("connection", i, evaluate_at(ext, ct, i).same_data(ci))
        Ri = curvature(ci)
        report.record("curvature", i, ev(Rt) == Ri)
        base_R = ev(Rt)
        for k, Pk in enumerate(powers_t):
            report.record(f"power{k}", i, ev(Pk) == curvature_power(base_R, k))
            report.record(f"trace_power{k}", i, ev(trace_form(Pk)) == trace_form(ev(Pk)))
        for n, ch in enumerate(chern_t):
            report.record(f"chern{n}", i, ev(ch) == chern_component(ci, n, Ri))
        actions = {
            Kind.SCALAR: (ScalarAction(Lt), ScalarAction(ci.algebra)),
            Kind.MODULE: (module_t, ci.module_action()),
            Kind.ENDO: (ad_t, ad_connection(ci)),
        }
        for phi in forms:
            act_t, act_i = actions[phi.kind]
            report.record(f"chain_map_{phi.kind.value}", i,
                          ev(differential(phi, act_t)) == differential(ev(phi), act_i))
        endo = [f for f in forms if f.kind is Kind.ENDO]
        scal = [f for f in forms if f.kind is Kind.SCALAR]
        for group in (endo, scal):
            for a, b in zip(group, group[1:]):
                report.record(f"wedge_{a.kind.value}", i, ev(wedge(a, b)) == wedge(ev(a), ev(b)))
        for phi in endo:
            report.record("trace", i, ev(trace_form(phi)) == trace_form(ev(phi)))
    return report
