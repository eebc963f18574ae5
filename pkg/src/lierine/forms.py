"""Cochains ``C^p(g, V) = Hom_A(Lambda^p g, V)`` for V in {A, W, End W}.

A :class:`Form` of degree ``p`` stores one value per strictly increasing
``p``-subset of basis indices; the A-multilinear alternating extension is
implied.  Forms of degree above the rank are zero and store nothing.

The wedge product is the shuffle product without factorial normalisation:
``(phi ^ psi)(S) = sum over (p,q)-shuffles of sgn * phi(first p) psi(last q)``.
"""
from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import matrices as mx
from .errors import StructuralError
from .exact_algebra import Polynomial
from .lie_rinehart import GElement, LieRinehartData


class Kind(str, enum.Enum):
    SCALAR = "scalar"
    MODULE = "module"
    ENDO = "endo"


# values ------------------------------------------------------------------

def zero_value(kind: Kind, algebra: LieRinehartData, rank: int | None):
    ring = algebra.ring
    if kind is Kind.SCALAR:
        return ring.zero()
    if kind is Kind.MODULE:
        return (ring.zero(),) * rank
    return mx.zeros(ring, rank)


def value_is_zero(kind: Kind, v) -> bool:
    if kind is Kind.SCALAR:
        return not v.terms
    if kind is Kind.MODULE:
        return all(not x.terms for x in v)
    return mx.is_zero(v)


def value_add(kind: Kind, a, b):
    if kind is Kind.SCALAR:
        return a + b
    if kind is Kind.MODULE:
        return tuple(x + y for x, y in zip(a, b))
    return mx.add(a, b)


def value_scale(kind: Kind, a, c):
    """Multiply a value by a polynomial or rational ``c``."""
    if kind is Kind.SCALAR:
        return a * c
    if kind is Kind.MODULE:
        return tuple(x * c for x in a)
    return mx.scale(a, c)


def value_map(kind: Kind, f: Callable[[Polynomial], Polynomial], a):
    if kind is Kind.SCALAR:
        return f(a)
    if kind is Kind.MODULE:
        return tuple(f(x) for x in a)
    return mx.map_entries(f, a)


_PRODUCT_KIND = {
    (Kind.SCALAR, Kind.SCALAR): Kind.SCALAR,
    (Kind.SCALAR, Kind.MODULE): Kind.MODULE,
    (Kind.MODULE, Kind.SCALAR): Kind.MODULE,
    (Kind.SCALAR, Kind.ENDO): Kind.ENDO,
    (Kind.ENDO, Kind.SCALAR): Kind.ENDO,
    (Kind.ENDO, Kind.ENDO): Kind.ENDO,
    (Kind.ENDO, Kind.MODULE): Kind.MODULE,
}


def _value_product(k1: Kind, k2: Kind, a, b):
    if k1 is Kind.SCALAR:
        return value_scale(k2, b, a)
    if k2 is Kind.SCALAR:
        return value_scale(k1, a, b)
    if k2 is Kind.ENDO:
        return mx.matmul(a, b)
    return mx.matvec(a, b)


# subsets -------------------------------------------------------------------

def basis_subsets(m: int, p: int) -> list[tuple[int, ...]]:
    if p > m:
        return []
    return list(itertools.combinations(range(m), p))


def _insert_sorted(k: int, rest: tuple[int, ...]):
    """Return ``(sign, key)`` with ``g_k ^ g_rest = sign * g_key``, or None if k repeats."""
    if k in rest:
        return None
    pos = sum(1 for r in rest if r < k)
    return (-1 if pos % 2 else 1), rest[:pos] + (k,) + rest[pos:]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


# forms -----------------------------------------------------------------------

class Form:
    __slots__ = ("algebra", "degree", "kind", "rank", "values")

    def __init__(
        self,
        algebra: LieRinehartData,
        degree: int,
        kind: Kind,
        values: Mapping[tuple[int, ...], object] | None = None,
        rank: int | None = None,
    ):
        kind = Kind(kind)
        if degree < 0:
            raise StructuralError("form degree must be non-negative")
        if kind is Kind.SCALAR:
            rank = None
        elif rank is None or rank < 1:
            raise StructuralError(f"{kind.value} forms need a positive rank")
        self.algebra = algebra
        self.degree = degree
        self.kind = kind
        self.rank = rank
        keys = basis_subsets(algebra.rank, degree)
        values = {tuple(k): v for k, v in (values or {}).items()}
        allowed = set(keys)
        for key in values:
            if key not in allowed:
                raise StructuralError(f"{key} is not an increasing {degree}-subset of range({algebra.rank})")
        zero = zero_value(kind, algebra, rank)
        filled = {}
        for key in keys:
            v = values.get(key, zero)
            self._check_value(v)
            filled[key] = v
        self.values = filled

    def _check_value(self, v):
        ring = self.algebra.ring
        if self.kind is Kind.SCALAR:
            ok = isinstance(v, Polynomial) and v.ring == ring
        elif self.kind is Kind.MODULE:
            ok = len(v) == self.rank and all(x.ring == ring for x in v)
        else:
            ok = mx.shape(v) == (self.rank, self.rank) and all(x.ring == ring for row in v for x in row)
        if not ok:
            raise StructuralError(f"bad {self.kind.value} value {v!r} for rank {self.rank} over {ring}")

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, algebra, degree, kind, rank=None) -> Form:
        return cls(algebra, degree, kind, None, rank)

    @classmethod
    def scalar(cls, algebra, value) -> Form:
        """Degree-0 scalar form (an element of A)."""
        if not isinstance(value, Polynomial):
            value = algebra.ring.const(value)
        return cls(algebra, 0, Kind.SCALAR, {(): value})

    @classmethod
    def identity(cls, algebra, rank: int) -> Form:
        """Degree-0 Endo form with value the identity matrix."""
        return cls(algebra, 0, Kind.ENDO, {(): mx.identity(algebra.ring, rank)}, rank)

    @classmethod
    def dual(cls, algebra, i: int, coefficient=1) -> Form:
        """The scalar 1-form ``coefficient * g_i^*``."""
        if not isinstance(coefficient, Polynomial):
            coefficient = algebra.ring.const(coefficient)
        return cls(algebra, 1, Kind.SCALAR, {(i,): coefficient})

    # structure --------------------------------------------------------------
    def _like(self, values) -> Form:
        f = object.__new__(Form)
        f.algebra, f.degree, f.kind, f.rank = self.algebra, self.degree, self.kind, self.rank
        f.values = values
        return f

    def _check_compatible(self, other: Form):
        if not isinstance(other, Form):
            raise StructuralError(f"expected a Form, got {type(other).__name__}")
        if (self.degree, self.kind, self.rank) != (other.degree, other.kind, other.rank):
            raise StructuralError(
                f"incompatible forms: degree/kind/rank {self.degree}/{self.kind.value}/{self.rank}"
                f" vs {other.degree}/{other.kind.value}/{other.rank}")
        if self.algebra != other.algebra:
            raise StructuralError("forms live on different algebras")

    def __getitem__(self, key):
        key = tuple(key)
        if self.degree > self.algebra.rank:
            return zero_value(self.kind, self.algebra, self.rank)
        return self.values[key]

    def items(self):
        return self.values.items()

    def map_values(self, f) -> Form:
        return self._like({k: f(v) for k, v in self.values.items()})

    def map_coefficients(self, f: Callable[[Polynomial], Polynomial]) -> Form:
        return self._like({k: value_map(self.kind, f, v) for k, v in self.values.items()})

    def __add__(self, other: Form) -> Form:
        self._check_compatible(other)
        return self._like({k: value_add(self.kind, v, other.values[k]) for k, v in self.values.items()})

    def __neg__(self) -> Form:
        return self.scaled(-1)

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def scaled(self, c) -> Form:
        """Multiply by a rational or by an element of A."""
        if not isinstance(c, (Polynomial, int, Fraction)):
            raise StructuralError(f"cannot scale a form by {type(c).__name__}")
        return self._like({k: value_scale(self.kind, v, c) for k, v in self.values.items()})

    def is_zero(self) -> bool:
        return all(value_is_zero(self.kind, v) for v in self.values.values())

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (
            (self.degree, self.kind, self.rank) == (other.degree, other.kind, other.rank)
            and self.algebra == other.algebra
            and self.values == other.values
        )

    __hash__ = None

    def __repr__(self):
        nz = sum(1 for v in self.values.values() if not value_is_zero(self.kind, v))
        return f"Form(degree={self.degree}, kind={self.kind.value}, rank={self.rank}, nonzero={nz})"

    # serialisation ------------------------------------------------------------
    def to_entries(self, include_zero: bool = False) -> list[dict]:
        """``[{indices: [1-based...], value: str | [str] | [[str]]}]`` in subset order."""
        out = []
        for key, v in self.values.items():
            if not include_zero and value_is_zero(self.kind, v):
                continue
            if self.kind is Kind.SCALAR:
                val = str(v)
            elif self.kind is Kind.MODULE:
                val = [str(x) for x in v]
            else:
                val = mx.format_matrix(v)
            out.append({"indices": [i + 1 for i in key], "value": val})
        return out


# actions (how g acts on the value module) ------------------------------------

class Action:
    """Action of the basis of g on values of one kind: ``act(i, v) = nabla_{g_i}(v)``."""

    kind: Kind
    rank: int | None
    algebra: LieRinehartData

    def act(self, i: int, value):
        raise NotImplementedError

    def act_general(self, d: GElement, value):
        """``nabla_d(v) = sum_i d_i nabla_{g_i}(v)`` (connections are A-linear in d)."""
        acc = zero_value(self.kind, self.algebra, self.rank)
        for i, di in enumerate(d.coefficients):
            if di.terms:
                acc = value_add(self.kind, acc, value_scale(self.kind, self.act(i, value), di))
        return acc


class ScalarAction(Action):
    """The canonical action ``nabla_d(a) = alpha(d)(a)`` on A."""

    kind = Kind.SCALAR
    rank = None

    def __init__(self, algebra: LieRinehartData):
        self.algebra = algebra

    def act(self, i, value):
        return self.algebra.anchor[i](value)


def _resolve_action(phi: Form, action: Action | None) -> Action:
    if action is None:
        if phi.kind is not Kind.SCALAR:
            raise StructuralError(f"{phi.kind.value} forms need an explicit connection")
        return ScalarAction(phi.algebra)
    if action.kind is not phi.kind or action.rank != phi.rank:
        raise StructuralError(
            f"action on {action.kind.value} (rank {action.rank}) cannot differentiate "
            f"a {phi.kind.value} form of rank {phi.rank}")
    if action.algebra != phi.algebra:
        raise StructuralError("connection and form live on different algebras")
    return action


# differential ------------------------------------------------------------------

def differential(phi: Form, action: Action | None = None) -> Form:
    """The Lie-Rinehart differential, assembled on basis subsets.

    ``(d phi)(g_S) = sum_i (-1)^i nabla_{g_{s_i}} phi(S - s_i)
    + sum_{i<j} (-1)^{i+j} sum_k c^k_{s_i s_j} phi(g_k ^ (S - s_i - s_j))``
    with 0-based positions ``i, j`` in ``S``.
    """
    action = _resolve_action(phi, action)
    L = phi.algebra
    kind = phi.kind
    p = phi.degree
    out = Form.zero(L, p + 1, kind, phi.rank)
    if p + 1 > L.rank:
        return out
    zero = zero_value(kind, L, phi.rank)
    values = {}
    for S in out.values:
        acc = zero
        for i, s in enumerate(S):
            rest = S[:i] + S[i + 1:]
            v = phi.values[rest]
            if value_is_zero(kind, v):
                continue
            term = action.act(s, v)
            acc = value_add(kind, acc, term if i % 2 == 0 else value_scale(kind, term, -1))
        for i, j in itertools.combinations(range(len(S)), 2):
            row = L.basis_bracket(S[i], S[j])
            rest = S[:i] + S[i + 1:j] + S[j + 1:]
            sign = -1 if (i + j) % 2 else 1
            for k, c in enumerate(row):
                if not c.terms:
                    continue
                hit = _insert_sorted(k, rest)
                if hit is None:
                    continue
                s2, key = hit
                v = phi.values[key]
                if value_is_zero(kind, v):
                    continue
                acc = value_add(kind, acc, value_scale(kind, v, c * (sign * s2)))
        values[S] = acc
    out.values = values
    return out


def _det(rows: list[list[Polynomial]]) -> Polynomial:
    n = len(rows)
    ring = rows[0][0].ring
    acc = ring.zero()
    for perm in itertools.permutations(range(n)):
        term = ring.one()
        for r, c in enumerate(perm):
            term = term * rows[r][c]
            if not term.terms:
                break
        if term.terms:
            acc = acc + term.scale(_perm_sign(perm))
    return acc


def evaluate(phi: Form, args: Sequence[GElement]):
    """Value of ``phi`` on arbitrary elements via its alternating A-multilinear extension."""
    L = phi.algebra
    if len(args) != phi.degree:
        raise StructuralError(f"degree-{phi.degree} form evaluated on {len(args)} arguments")
    for a in args:
        L._check_element(a)
    if phi.degree == 0:
        return phi.values[()]
    acc = zero_value(phi.kind, L, phi.rank)
    if phi.degree > L.rank:
        return acc
    for S, v in phi.values.items():
        if value_is_zero(phi.kind, v):
            continue
        minor = [[a.coefficients[s] for s in S] for a in args]
        c = _det(minor)
        if c.terms:
            acc = value_add(phi.kind, acc, value_scale(phi.kind, v, c))
    return acc


def differential_eval_raw(phi: Form, action: Action | None, args: Sequence[GElement]):
    """Evaluate ``d phi`` on arbitrary arguments straight from the defining sum.

    Uses :meth:`LieRinehartData.bracket_general` and the connection on general
    elements; independent of the basis-subset normalisation in :func:`differential`.
    """
    action = _resolve_action(phi, action)
    L = phi.algebra
    args = list(args)
    if len(args) != phi.degree + 1:
        raise StructuralError(f"d of a degree-{phi.degree} form takes {phi.degree + 1} arguments")
    kind = phi.kind
    acc = zero_value(kind, L, phi.rank)
    for i, d in enumerate(args):
        rest = args[:i] + args[i + 1:]
        term = action.act_general(d, evaluate(phi, rest))
        acc = value_add(kind, acc, term if i % 2 == 0 else value_scale(kind, term, -1))
    for i, j in itertools.combinations(range(len(args)), 2):
        br = L.bracket_general(args[i], args[j])
        rest = [a for k, a in enumerate(args) if k not in (i, j)]
        term = evaluate(phi, [br] + rest)
        acc = value_add(kind, acc, term if (i + j) % 2 == 0 else value_scale(kind, term, -1))
    return acc


# products --------------------------------------------------------------------

def wedge(phi: Form, psi: Form) -> Form:
    """Shuffle product; the value product is matrix composition for Endo forms."""
    if phi.algebra != psi.algebra:
        raise StructuralError("wedge of forms on different algebras")
    kind = _PRODUCT_KIND.get((phi.kind, psi.kind))
    if kind is None:
        raise StructuralError(f"cannot wedge {phi.kind.value} with {psi.kind.value}")
    if phi.rank is not None and psi.rank is not None and phi.rank != psi.rank:
        raise StructuralError(f"rank mismatch {phi.rank} vs {psi.rank}")
    rank = phi.rank if phi.rank is not None else psi.rank
    L = phi.algebra
    p, q = phi.degree, psi.degree
    out = Form.zero(L, p + q, kind, rank)
    if p + q > L.rank:
        return out
    zero = zero_value(kind, L, rank)
    positions = list(itertools.combinations(range(p + q), p))
    base = p * (p - 1) // 2
    values = {}
    for S in out.values:
        acc = zero
        for first in positions:
            a = phi.values[tuple(S[t] for t in first)]
            if value_is_zero(phi.kind, a):
                continue
            b = psi.values[tuple(S[t] for t in range(p + q) if t not in first)]
            if value_is_zero(psi.kind, b):
                continue
            prod = _value_product(phi.kind, psi.kind, a, b)
            if (sum(first) - base) % 2:
                prod = value_scale(kind, prod, -1)
            acc = value_add(kind, acc, prod)
        values[S] = acc
    out.values = values
    return out


def trace_form(phi: Form) -> Form:
    if phi.kind is not Kind.ENDO:
        raise StructuralError(f"trace of a {phi.kind.value} form")
    return Form(phi.algebra, phi.degree, Kind.SCALAR,
                {k: mx.trace(v) for k, v in phi.values.items()})


def block_sum(phi: Form, psi: Form) -> Form:
    """``phi (+) psi`` for Endo forms of equal degree: block-diagonal values."""
    if phi.kind is not Kind.ENDO or psi.kind is not Kind.ENDO or phi.degree != psi.degree:
        raise StructuralError("block_sum needs two Endo forms of the same degree")
    if phi.algebra != psi.algebra:
        raise StructuralError("forms live on different algebras")
    return Form(phi.algebra, phi.degree, Kind.ENDO,
                {k: mx.block_diag(v, psi.values[k]) for k, v in phi.values.items()},
                phi.rank + psi.rank)


def tensor_identity_right(phi: Form, r2: int) -> Form:
    """``phi (x) 1`` on ``W (x) W'`` with ``rank W' = r2``."""
    if phi.kind is not Kind.ENDO:
        raise StructuralError("tensor_identity_right needs an Endo form")
    eye = mx.identity(phi.algebra.ring, r2)
    return Form(phi.algebra, phi.degree, Kind.ENDO,
                {k: mx.kron(v, eye) for k, v in phi.values.items()}, phi.rank * r2)


def tensor_identity_left(r1: int, psi: Form) -> Form:
    """``1 (x) psi`` on ``W (x) W'`` with ``rank W = r1``."""
    if psi.kind is not Kind.ENDO:
        raise StructuralError("tensor_identity_left needs an Endo form")
    eye = mx.identity(psi.algebra.ring, r1)
    return Form(psi.algebra, psi.degree, Kind.ENDO,
                {k: mx.kron(eye, v) for k, v in psi.values.items()}, r1 * psi.rank)


def sum_forms(forms: Iterable[Form]) -> Form:
    it = iter(forms)
    acc = next(it)
    for f in it:
        acc = acc + f
    return acc
