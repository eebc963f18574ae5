"""Named example algebras and connections, plus seeded random instances.

Random algebras come from a catalogue of known-valid Lie-Rinehart algebras
(Lie algebras with zero anchor, and Lie algebras of polynomial vector
fields acting on A) padded with zero-anchor abelian summands and moved by a
random change of basis.  Every generated algebra passes ``verify_axioms``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import linalg
from . import matrices as mx
from .connections import Connection
from .exact_algebra import Polynomial, RingSpec
from .forms import Form, Kind, basis_subsets
from .lie_rinehart import Derivation, GElement, LieRinehartData

QQ = RingSpec(())
QXY = RingSpec(("x", "y"))
QX4 = RingSpec(("x",), (4,))


def _brackets(ring: RingSpec, m: int, table: dict) -> dict:
    """``{(i, j): {k: coeff}}`` (0-based, i < j) to the coefficient-row format."""
    out = {}
    for (i, j), row in table.items():
        coeffs = [ring.zero()] * m
        for k, c in row.items():
            coeffs[k] = c if isinstance(c, Polynomial) else ring.parse(str(c))
        out[(i, j)] = coeffs
    return out


def vector_fields(ring: RingSpec, fields: Sequence[Sequence[str]], table: dict | None = None) -> LieRinehartData:
    anchor = [Derivation(ring, [ring.parse(c) for c in f]) for f in fields]
    return LieRinehartData(ring, anchor, _brackets(ring, len(anchor), table or {}))


def lie_algebra(ring: RingSpec, m: int, table: dict | None = None) -> LieRinehartData:
    """A k-Lie algebra with constant structure constants, tensored up to A with zero anchor."""
    return LieRinehartData(ring, [Derivation.zero(ring)] * m, _brackets(ring, m, table or {}))


def de_rham(n: int = 2) -> LieRinehartData:
    """``Q[x_1..x_n]`` (x, y for n = 2) with g free on the partial derivatives."""
    names = ("x", "y") if n == 2 else tuple(f"x{i + 1}" for i in range(n))
    ring = RingSpec(names)
    return LieRinehartData(ring, [Derivation.partial(ring, v) for v in range(n)])


def line_bundle_algebra() -> LieRinehartData:
    return de_rham(2)


def line_bundle(lam=1, algebra: LieRinehartData | None = None, label: str | None = None) -> Connection:
    """Rank-1 connection with ``Gamma_1 = [0]``, ``Gamma_2 = [lam * x]``; curvature ``lam``."""
    L = algebra or line_bundle_algebra()
    ring = L.ring
    g2 = ring.var("x").scale(Fraction(lam))
    return Connection(L, 1, (((ring.zero(),),), ((g2,),)), label or f"line{lam}")


def sl2(ring: RingSpec = QQ) -> LieRinehartData:
    """Basis e, h, f with [h, e] = 2e, [h, f] = -2f, [e, f] = h and zero anchor."""
    return lie_algebra(ring, 3, {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}})


def abelian(m: int, ring: RingSpec = QQ) -> LieRinehartData:
    return lie_algebra(ring, m)


def truncated_circle() -> LieRinehartData:
    """``Q[x]/(x^4)`` with g free on ``x d/dx``."""
    return vector_fields(QX4, [["x"]])


def broken_jacobi() -> LieRinehartData:
    """[g1, g2] = g3, [g2, g3] = g1, [g1, g3] = g1 over Q: fails Jacobi on (1, 2, 3)."""
    return lie_algebra(QQ, 3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})


# catalogue -------------------------------------------------------------------

_LIE = {
    # name: (dimension, brackets)
    "abelian1": (1, {}),
    "abelian2": (2, {}),
    "aff": (2, {(0, 1): {1: 1}}),
    "heisenberg": (3, {(0, 1): {2: 1}}),
    "sl2": (3, {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}),
    "so3": (3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}),
    "filiform4": (4, {(0, 1): {2: 1}, (0, 2): {3: 1}}),
    "aff+aff": (4, {(0, 1): {1: 1}, (2, 3): {3: 1}}),
}

_FIELDS = {
    QXY: [
        ([["1", "0"], ["0", "1"]], {}),
        ([["1", "0"], ["x", "0"]], {(0, 1): {0: 1}}),
        ([["1", "0"], ["-2*x", "0"], ["-x^2", "0"]], {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}),
        ([["1", "0"], ["0", "x"], ["0", "1"]], {(0, 1): {2: 1}}),
        ([["1", "0"], ["0", "1"], ["0", "x"]], {(0, 2): {1: 1}}),
        ([["1", "0"], ["0", "1"], ["x", "0"], ["0", "y"]], {(0, 2): {0: 1}, (1, 3): {1: 1}}),
    ],
    QX4: [
        ([["x"]], {}),
        ([["x"], ["x^2"]], {(0, 1): {1: 1}}),
        ([["x"], ["x^2"], ["x^3"]], {(0, 1): {1: 1}, (0, 2): {2: 2}}),
    ],
}


def _pad(L: LieRinehartData, m: int) -> LieRinehartData:
    """Direct sum with a zero-anchor abelian algebra of rank ``m - L.rank``."""
    extra = m - L.rank
    if extra <= 0:
        return L
    anchor = list(L.anchor) + [Derivation.zero(L.ring)] * extra
    brackets = {key: list(row) + [L.ring.zero()] * extra for key, row in L.brackets.items()}
    return LieRinehartData(L.ring, anchor, brackets)


def _inverse(P: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(P)
    cols = []
    for k in range(n):
        x = linalg.solve(P, [Fraction(int(i == k)) for i in range(n)])
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def change_basis(L: LieRinehartData, P, P_inv) -> LieRinehartData:
    """Re-express ``L`` in the basis ``g'_a = sum_b P[a][b] g_b``.

    ``P`` and ``P_inv`` are matrices over A (polynomials or rationals) with
    ``P P_inv = 1``.
    """
    ring = L.ring
    m = L.rank

    def lift(x):
        return x if isinstance(x, Polynomial) else ring.const(x)

    P = [[lift(x) for x in row] for row in P]
    P_inv = [[lift(x) for x in row] for row in P_inv]
    new = [GElement(tuple(P[a])) for a in range(m)]
    anchor = [L.anchor_of(g) for g in new]
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            old = L.bracket_general(new[a], new[b]).coefficients
            # coordinates in the new basis: row vector old * P_inv
            brackets[(a, b)] = [
                sum((old[k] * P_inv[k][c] for k in range(m)), ring.zero()) for c in range(m)
            ]
    return LieRinehartData(ring, anchor, brackets)


def random_poly(rng: random.Random, ring: RingSpec, max_degree: int = 2, max_terms: int = 3) -> Polynomial:
    monos = ring.monomials_up_to(max_degree)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        num = rng.choice([-3, -2, -1, 1, 1, 2, 3])
        den = rng.choice([1, 1, 1, 2, 3])
        terms[rng.choice(monos)] = Fraction(num, den)
    return Polynomial(ring, terms)


def random_algebra(rng: random.Random, ring: RingSpec, max_rank: int = 4) -> LieRinehartData:
    choices = []
    for name, (dim, table) in _LIE.items():
        if dim <= max_rank:
            choices.append(("lie", dim, table))
    for fields, table in _FIELDS.get(ring, []):
        if len(fields) <= max_rank:
            choices.append(("fields", fields, table))
    kind, data, table = rng.choice(choices)
    L = lie_algebra(ring, data, table) if kind == "lie" else vector_fields(ring, data, table)
    L = _pad(L, rng.randint(L.rank, max_rank))
    m = L.rank
    while True:
        P = [[Fraction(rng.choice([-1, 0, 0, 1, 2])) if i != j else Fraction(rng.choice([1, -1, 2]))
              for j in range(m)] for i in range(m)]
        P_inv = _inverse(P)
        if P_inv is not None:
            break
    L = change_basis(L, P, P_inv)
    if ring.nvars and rng.random() < 0.3 and m > 1:
        # unipotent change of basis over A: makes structure constants non-constant
        i, j = sorted(rng.sample(range(m), 2))
        a = random_poly(rng, ring, 1, 1)
        P = [[ring.one() if r == c else ring.zero() for c in range(m)] for r in range(m)]
        Q = [row[:] for row in P]
        P[i][j], Q[i][j] = a, -a
        L = change_basis(L, P, Q)
    return L


def random_connection(rng: random.Random, L: LieRinehartData, rank: int = 1,
                      max_degree: int = 2, label: str = "W") -> Connection:
    gam = tuple(
        tuple(tuple(random_poly(rng, L.ring, max_degree, 2) for _ in range(rank)) for _ in range(rank))
        for _ in range(L.rank)
    )
    return Connection(L, rank, gam, label)


def random_value(rng: random.Random, L: LieRinehartData, kind: Kind, rank: int | None, max_degree: int = 2):
    ring = L.ring
    if kind is Kind.SCALAR:
        return random_poly(rng, ring, max_degree)
    if kind is Kind.MODULE:
        return tuple(random_poly(rng, ring, max_degree) for _ in range(rank))
    return mx.from_rows([[random_poly(rng, ring, max_degree) for _ in range(rank)] for _ in range(rank)])


def random_form(rng: random.Random, L: LieRinehartData, degree: int, kind: Kind = Kind.SCALAR,
                rank: int | None = None, max_degree: int = 2) -> Form:
    kind = Kind(kind)
    values = {S: random_value(rng, L, kind, rank, max_degree) for S in basis_subsets(L.rank, degree)}
    return Form(L, degree, kind, values, rank)


def random_element(rng: random.Random, L: LieRinehartData, max_degree: int = 1) -> GElement:
    return GElement(tuple(random_poly(rng, L.ring, max_degree, 2) for _ in range(L.rank)))


BASE_RINGS = {"Q": QQ, "Q[x,y]": QXY, "Q[x]/(x^4)": QX4}
