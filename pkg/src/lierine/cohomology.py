"""Cohomology by flattening cochain groups to finite-dimensional Q-vector spaces.

Two regimes:

* ``finite``: A is finite-dimensional over Q (A = Q or every variable
  truncated).  Betti numbers, and "not exact" verdicts, are complete.
* ``degree:D``: A is an untruncated polynomial ring and unknown cochains are
  restricted to coefficients of total degree <= D.  A found primitive is a
  certificate; failing to find one says nothing beyond the bound.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .connections import AdAction, ModuleAction, curvature
from .errors import LierineError, NonFlatError, NotClosedError, RegimeError
from .exact_algebra import Polynomial
from .forms import Action, Form, Kind, ScalarAction, basis_subsets, differential
from .lie_rinehart import LieRinehartData
from . import matrices as mx


@dataclass(frozen=True)
class Regime:
    mode: str = "finite"
    bound: int | None = None

    def __post_init__(self):
        if self.mode not in ("finite", "degree"):
            raise RegimeError(f"unknown regime mode {self.mode!r}")
        if self.mode == "degree" and (self.bound is None or self.bound < 0):
            raise RegimeError("degree regime needs a bound D >= 0")

    @classmethod
    def finite(cls) -> Regime:
        return cls("finite")

    @classmethod
    def degree(cls, bound: int) -> Regime:
        return cls("degree", bound)

    @classmethod
    def parse(cls, text: str) -> Regime:
        if text == "finite":
            return cls.finite()
        if text.startswith("degree:"):
            try:
                return cls.degree(int(text.split(":", 1)[1]))
            except ValueError:
                pass
        raise RegimeError(f"regime must be 'finite' or 'degree:D', got {text!r}")

    def monomials(self, ring) -> list[tuple]:
        if self.mode == "finite":
            if not ring.is_finite:
                raise RegimeError(f"finite regime needs a finite-dimensional ring, {ring} is not")
            return ring.finite_basis()
        if ring.is_truncated:
            raise RegimeError("degree-bounded regime needs an untruncated polynomial ring")
        return ring.monomials_up_to(self.bound)

    def __str__(self):
        return "finite" if self.mode == "finite" else f"degree:{self.bound}"


def _coords(kind: Kind, rank: int | None) -> list[tuple]:
    if kind is Kind.SCALAR:
        return [()]
    if kind is Kind.MODULE:
        return [(a,) for a in range(rank)]
    return [(a, b) for a in range(rank) for b in range(rank)]


def _component(kind: Kind, value, coord):
    if kind is Kind.SCALAR:
        return value
    if kind is Kind.MODULE:
        return value[coord[0]]
    return value[coord[0]][coord[1]]


class Flattening:
    """A deterministic Q-basis ``(subset, monomial, value coordinate)`` of a cochain group."""

    def __init__(self, algebra: LieRinehartData, degree: int, kind: Kind, monomials, rank=None):
        self.algebra = algebra
        self.degree = degree
        self.kind = Kind(kind)
        self.rank = rank
        self.monomials = list(monomials)
        self.basis = [
            (S, mono, coord)
            for S in basis_subsets(algebra.rank, degree)
            for mono in self.monomials
            for coord in _coords(self.kind, rank)
        ]
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_form(self, i: int) -> Form:
        S, mono, coord = self.basis[i]
        ring = self.algebra.ring
        mono_poly = ring.monomial(mono)
        if self.kind is Kind.SCALAR:
            value = mono_poly
        elif self.kind is Kind.MODULE:
            value = tuple(mono_poly if (a,) == coord else ring.zero() for a in range(self.rank))
        else:
            value = tuple(
                tuple(mono_poly if (a, b) == coord else ring.zero() for b in range(self.rank))
                for a in range(self.rank))
        return Form(self.algebra, self.degree, self.kind, {S: value}, self.rank)

    def sparse(self, form: Form) -> dict[tuple, Fraction]:
        """Coordinates of ``form`` keyed by basis label (labels need not lie in this basis)."""
        out = {}
        for S, value in form.values.items():
            for coord in _coords(self.kind, self.rank):
                poly = _component(self.kind, value, coord)
                for mono, c in poly.terms.items():
                    out[(S, mono, coord)] = c
        return out

    def vector(self, form: Form) -> list[Fraction]:
        vec = [Fraction(0)] * self.dim
        for label, c in self.sparse(form).items():
            try:
                vec[self.index[label]] = c
            except KeyError:
                raise RegimeError(f"coefficient {label} lies outside the flattened space") from None
        return vec

    def form(self, vector) -> Form:
        ring = self.algebra.ring
        acc: dict = {}
        for (S, mono, coord), c in zip(self.basis, vector):
            if c:
                acc.setdefault(S, {}).setdefault(coord, {})[mono] = c
        values = {}
        for S, comps in acc.items():
            polys = {coord: Polynomial(ring, terms) for coord, terms in comps.items()}
            if self.kind is Kind.SCALAR:
                values[S] = polys[()]
            elif self.kind is Kind.MODULE:
                values[S] = tuple(polys.get((a,), ring.zero()) for a in range(self.rank))
            else:
                values[S] = tuple(
                    tuple(polys.get((a, b), ring.zero()) for b in range(self.rank))
                    for a in range(self.rank))
        return Form(self.algebra, self.degree, self.kind, values, self.rank)


def flatten(algebra: LieRinehartData, degree: int, kind: Kind, regime: Regime, rank=None) -> Flattening:
    return Flattening(algebra, degree, Kind(kind), regime.monomials(algebra.ring), rank)


def differential_matrix(src: Flattening, dst: Flattening, action: Action) -> list[list[Fraction]]:
    """Dense matrix of ``d: src -> dst`` (rows indexed by ``dst``)."""
    rows = [[Fraction(0)] * src.dim for _ in range(dst.dim)]
    for j in range(src.dim):
        image = differential(src.basis_form(j), action)
        for label, c in dst.sparse(image).items():
            i = dst.index.get(label)
            if i is None:
                raise RegimeError(f"differential leaves the flattened space at {label}")
            rows[i][j] = c
    return rows


def _default_action(algebra, action):
    return ScalarAction(algebra) if action is None else action


def check_flat(action: Action) -> None:
    """Raise :class:`NonFlatError` unless ``d o d = 0`` for this action."""
    L = action.algebra
    report = L.verify_axioms()
    if not report.passed:
        raise LierineError(f"algebra fails the Lie-Rinehart axioms: {report.to_dict()}")
    if isinstance(action, ModuleAction):
        R = curvature(action.conn)
        if not R.is_zero():
            raise NonFlatError(_obstruction(R))
    elif isinstance(action, AdAction):
        # ad-curvature is [R, -]: flat iff every curvature value is central
        R = curvature(action.conn)
        ring = L.ring
        for v in R.values.values():
            lam = v[0][0]
            if v != mx.scale(mx.identity(ring, R.rank), lam):
                raise NonFlatError(_obstruction(R))


def _obstruction(R: Form) -> str:
    return f"connection is not flat; nonzero curvature entries {R.to_entries()[:3]}"


@dataclass
class CohomologyReport:
    betti: list[int]
    dims: list[int]
    ranks: list[int]
    regime: Regime

    def to_dict(self) -> dict:
        return {"regime": str(self.regime), "dims": self.dims, "ranks": self.ranks, "betti": self.betti}


def cochain_matrices(algebra, action, regime, rank=None):
    """Flattenings ``C^0..C^m`` and differential matrices ``d^0..d^{m-1}``."""
    kind = action.kind
    flats = [flatten(algebra, p, kind, regime, rank) for p in range(algebra.rank + 1)]
    mats = [differential_matrix(flats[p], flats[p + 1], action) for p in range(algebra.rank)]
    return flats, mats


def betti_numbers(algebra: LieRinehartData, action: Action | None = None,
                  regime: Regime | None = None) -> CohomologyReport:
    regime = regime or Regime.finite()
    if regime.mode != "finite":
        raise RegimeError("Betti numbers are only computed in the finite regime")
    regime.monomials(algebra.ring)
    action = _default_action(algebra, action)
    check_flat(action)
    flats, mats = cochain_matrices(algebra, action, regime, action.rank)
    dims = [f.dim for f in flats]
    ranks = [linalg.rank(M, f.dim) for M, f in zip(mats, flats)] + [0]
    betti = [dims[p] - ranks[p] - (ranks[p - 1] if p else 0) for p in range(len(dims))]
    return CohomologyReport(betti, dims, ranks, regime)


# primitives ----------------------------------------------------------------

class Status(str, enum.Enum):
    FOUND = "found"
    NOT_FOUND_WITHIN_BOUND = "not_found_within_bound"
    NOT_EXACT = "not_exact"


@dataclass
class PrimitiveResult:
    status: Status
    witness: Form | None = None
    bound: int | None = None

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def to_dict(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.witness is not None:
            out["witness"] = self.witness.to_entries()
        return out


def degree_shift(action: Action) -> int:
    """Upper bound on how much ``d`` can raise the total degree of coefficients."""
    L = action.algebra
    deg = L.max_degree()
    shift = max(deg["anchor"] - 1, deg["brackets"], 0)
    conn = getattr(action, "conn", None)
    if conn is not None:
        gam = max((x.degree for g in conn.christoffel for row in g for x in row), default=-1)
        shift = max(shift, gam)
    return shift


def _not_closed(target: Form, action: Action):
    if not differential(target, action).is_zero():
        raise NotClosedError(f"target of degree {target.degree} is not closed")


def find_primitive(target: Form, action: Action | None = None,
                   regime: Regime | None = None) -> PrimitiveResult:
    regime = regime or Regime.finite()
    L = target.algebra
    action = _default_action(L, action)
    _not_closed(target, action)
    p = target.degree
    if target.is_zero():
        witness = None if p == 0 else Form.zero(L, p - 1, target.kind, target.rank)
        return PrimitiveResult(Status.FOUND, witness)
    miss = (PrimitiveResult(Status.NOT_EXACT) if regime.mode == "finite"
            else PrimitiveResult(Status.NOT_FOUND_WITHIN_BOUND, bound=regime.bound))
    if p == 0:
        return PrimitiveResult(Status.NOT_EXACT)
    src = flatten(L, p - 1, target.kind, regime, target.rank)
    images = [differential(src.basis_form(j), action) for j in range(src.dim)]
    if regime.mode == "degree":
        _degree_guard(src, images, regime.bound - degree_shift(action), regime.bound)
    rows_of: dict[tuple, dict[int, Fraction]] = {}
    for j, image in enumerate(images):
        for label, c in src.sparse(image).items():
            rows_of.setdefault(label, {})[j] = c
    rhs_sparse = src.sparse(target)
    labels = sorted(set(rows_of) | set(rhs_sparse), key=_label_key)
    rows = [[rows_of.get(label, {}).get(j, Fraction(0)) for j in range(src.dim)] for label in labels]
    rhs = [rhs_sparse.get(label, Fraction(0)) for label in labels]
    x = linalg.solve(rows, rhs) if rows else None
    if x is None:
        return miss
    witness = src.form(x)
    if differential(witness, action) != target:
        raise LierineError("primitive failed exact re-verification")
    return PrimitiveResult(Status.FOUND, witness, regime.bound)


def _label_key(label):
    S, mono, coord = label
    return (S, sum(mono), mono, coord)


def _degree_guard(src: Flattening, images, low: int, high: int):
    for (S, mono, coord), image in zip(src.basis, images):
        if sum(mono) > low:
            continue
        for value in image.values.values():
            for coord2 in _coords(image.kind, image.rank):
                if _component(image.kind, value, coord2).degree > high:
                    raise LierineError(
                        f"degree guard: d of basis element {(S, mono, coord)} exceeds degree {high}")


class Verdict(str, enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    UNKNOWN = "unknown"


def classes_equal(z1: Form, z2: Form, action: Action | None = None,
                  regime: Regime | None = None) -> Verdict:
    action = _default_action(z1.algebra, action)
    _not_closed(z1, action)
    _not_closed(z2, action)
    result = find_primitive(z1 - z2, action, regime)
    if result.status is Status.FOUND:
        return Verdict.EQUAL
    if result.status is Status.NOT_EXACT:
        return Verdict.UNEQUAL
    return Verdict.UNKNOWN
