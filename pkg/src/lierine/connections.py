"""g-connections on free A-modules, given by Christoffel matrices.

``nabla_{g_j}(w) = alpha(g_j)(w) + Gamma_j w`` where the anchor acts entrywise
on the column vector ``w``.  Every such family of matrices is a connection;
the Leibniz rule holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import matrices as mx
from .errors import StructuralError
from .exact_algebra import Polynomial
from .forms import Action, Form, Kind
from .lie_rinehart import GElement, LieRinehartData


@dataclass(frozen=True, eq=False)
class Connection:
    algebra: LieRinehartData
    rank: int
    christoffel: tuple
    label: str = "W"
    # ("sum", left, right) / ("tensor", left, right): ancestry used by the K0 model
    origin: tuple | None = field(default=None)

    def __post_init__(self):
        L = self.algebra
        gam = tuple(mx.from_rows(g) for g in self.christoffel)
        object.__setattr__(self, "christoffel", gam)
        if self.rank < 1:
            raise StructuralError("connection rank must be positive")
        if len(gam) != L.rank:
            raise StructuralError(f"need {L.rank} Christoffel matrices, got {len(gam)}")
        for j, g in enumerate(gam):
            if mx.shape(g) != (self.rank, self.rank):
                raise StructuralError(
                    f"Christoffel matrix {j + 1} has shape {mx.shape(g)}, expected {self.rank}x{self.rank}")
            for row in g:
                for x in row:
                    if not isinstance(x, Polynomial) or x.ring != L.ring:
                        raise StructuralError(f"Christoffel entry {x!r} not in {L.ring}")

    @classmethod
    def trivial(cls, algebra: LieRinehartData, rank: int = 1, label: str = "O") -> Connection:
        """The connection ``nabla_d = alpha(d)`` on ``A^rank`` (all Christoffel matrices zero)."""
        return cls(algebra, rank, tuple(mx.zeros(algebra.ring, rank) for _ in range(algebra.rank)), label)

    def relabel(self, label: str) -> Connection:
        return Connection(self.algebra, self.rank, self.christoffel, label, self.origin)

    def same_data(self, other: Connection) -> bool:
        return (self.algebra == other.algebra and self.rank == other.rank
                and self.christoffel == other.christoffel)

    def module_action(self) -> ModuleAction:
        return ModuleAction(self)

    def __repr__(self):
        return f"Connection({self.label!r}, rank={self.rank})"


class ModuleAction(Action):
    kind = Kind.MODULE

    def __init__(self, conn: Connection):
        self.conn = conn
        self.algebra = conn.algebra
        self.rank = conn.rank

    def act(self, i, w):
        der = self.algebra.anchor[i]
        moved = mx.matvec(self.conn.christoffel[i], w)
        return tuple(der(x) + y for x, y in zip(w, moved))


class AdAction(Action):
    """``ad nabla_{g_i}(phi) = alpha(g_i)(phi) + [Gamma_i, phi]`` on End W."""

    kind = Kind.ENDO

    def __init__(self, conn: Connection):
        self.conn = conn
        self.algebra = conn.algebra
        self.rank = conn.rank

    def act(self, i, phi):
        der = self.algebra.anchor[i]
        g = self.conn.christoffel[i]
        return mx.add(mx.map_entries(der, phi), mx.commutator(g, phi))


def ad_connection(c: Connection) -> AdAction:
    return AdAction(c)


def _check_vector(c: Connection, w):
    if len(w) != c.rank:
        raise StructuralError(f"module element has length {len(w)}, rank is {c.rank}")


def apply_connection(c: Connection, d: GElement, w: Sequence[Polynomial]) -> tuple:
    """``nabla_d(w)`` for an arbitrary ``d`` in g and ``w`` in ``A^r``."""
    c.algebra._check_element(d)
    w = tuple(w)
    _check_vector(c, w)
    return ModuleAction(c).act_general(d, w)


def curvature(c: Connection) -> Form:
    """Curvature from the Christoffel data.

    ``R(g_i ^ g_j) = alpha_i(Gamma_j) - alpha_j(Gamma_i) + [Gamma_i, Gamma_j]
    - sum_k c^k_ij Gamma_k``.
    """
    L = c.algebra
    gam = c.christoffel
    values = {}
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            val = mx.sub(mx.map_entries(L.anchor[i], gam[j]), mx.map_entries(L.anchor[j], gam[i]))
            val = mx.add(val, mx.commutator(gam[i], gam[j]))
            for k, ck in enumerate(L.basis_bracket(i, j)):
                if ck.terms:
                    val = mx.sub(val, mx.scale(gam[k], ck))
            values[(i, j)] = val
    return Form(L, 2, Kind.ENDO, values, c.rank)


def curvature_by_commutator(c: Connection) -> Form:
    """Curvature as ``[nabla_i, nabla_j] - nabla_{[g_i, g_j]}`` applied to basis vectors of W."""
    L = c.algebra
    ring = L.ring
    r = c.rank
    basis_vectors = [tuple(ring.one() if a == b else ring.zero() for a in range(r)) for b in range(r)]
    values = {}
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            gi, gj = L.basis(i), L.basis(j)
            br = L.bracket_general(gi, gj)
            cols = []
            for e in basis_vectors:
                a = apply_connection(c, gi, apply_connection(c, gj, e))
                b = apply_connection(c, gj, apply_connection(c, gi, e))
                z = apply_connection(c, br, e)
                cols.append(tuple(x - y - t for x, y, t in zip(a, b, z)))
            values[(i, j)] = tuple(tuple(cols[col][row] for col in range(r)) for row in range(r))
    return Form(L, 2, Kind.ENDO, values, r)


def is_flat(c: Connection) -> bool:
    return curvature(c).is_zero()


def _same_algebra(c1: Connection, c2: Connection):
    if c1.algebra != c2.algebra:
        raise StructuralError(f"{c1.label} and {c2.label} live on different algebras")


def direct_sum(c1: Connection, c2: Connection, label: str | None = None) -> Connection:
    _same_algebra(c1, c2)
    gam = tuple(mx.block_diag(a, b) for a, b in zip(c1.christoffel, c2.christoffel))
    return Connection(c1.algebra, c1.rank + c2.rank, gam,
                      label or f"({c1.label}⊕{c2.label})", ("sum", c1.label, c2.label))


def tensor(c1: Connection, c2: Connection, label: str | None = None) -> Connection:
    """``nabla (x) 1 + 1 (x) nabla'`` on the Kronecker basis ``(i, j) -> i * r2 + j``."""
    _same_algebra(c1, c2)
    ring = c1.algebra.ring
    e1, e2 = mx.identity(ring, c1.rank), mx.identity(ring, c2.rank)
    gam = tuple(
        mx.add(mx.kron(a, e2), mx.kron(e1, b)) for a, b in zip(c1.christoffel, c2.christoffel)
    )
    return Connection(c1.algebra, c1.rank * c2.rank, gam,
                      label or f"({c1.label}⊗{c2.label})", ("tensor", c1.label, c2.label))


def add_one_form(c: Connection, phi: Form, label: str | None = None) -> Connection:
    """``nabla + phi`` for an Endo 1-form ``phi``."""
    if phi.kind is not Kind.ENDO or phi.degree != 1:
        raise StructuralError("add_one_form needs an Endo 1-form")
    if phi.rank != c.rank:
        raise StructuralError(f"rank mismatch: form {phi.rank}, connection {c.rank}")
    if phi.algebra != c.algebra:
        raise StructuralError("form and connection live on different algebras")
    gam = tuple(mx.add(g, phi.values[(j,)]) for j, g in enumerate(c.christoffel))
    return Connection(c.algebra, c.rank, gam, label or c.label)


def connection_difference(c1: Connection, c2: Connection) -> Form:
    """The unique Endo 1-form ``phi`` with ``c2 + phi = c1``."""
    _same_algebra(c1, c2)
    if c1.rank != c2.rank:
        raise StructuralError(f"rank mismatch {c1.rank} vs {c2.rank}")
    values = {(j,): mx.sub(a, b) for j, (a, b) in enumerate(zip(c1.christoffel, c2.christoffel))}
    return Form(c1.algebra, 1, Kind.ENDO, values, c1.rank)
