import random
from fractions import Fraction

import pytest

from lierine import matrices as mx
from lierine.chern import ChernForm, chern_character, chern_component, curvature_power, verify_closed
from lierine.connections import Connection, curvature, direct_sum, tensor
from lierine.errors import StructuralError
from lierine.forms import (
    Form, block_sum, differential, tensor_identity_left, tensor_identity_right, trace_form, wedge,
)
from lierine.samples import de_rham, line_bundle, random_connection, random_poly, sl2
from oracles import random_instances


def _two_plane_line(lam):
    """Rank-1 connection on <d1..d4> over Q[x1..x4] with curvature lam*(g1^g2 + g3^g4)."""
    L = de_rham(4)
    ring = L.ring
    z = ((ring.zero(),),)
    g = lambda v: ((ring.parse(f"{lam}*{v}"),),)  # noqa: E731
    return Connection(L, 1, (z, g("x1"), z, g("x3")), f"plane{lam}")


def test_curvature_power_examples():
    L = de_rham(2)
    R = curvature(line_bundle(1, L))
    assert curvature_power(R, 1) == R
    assert curvature_power(R, 0) == Form.identity(L, 1)
    assert curvature_power(R, 2).is_zero()
    with pytest.raises(StructuralError):
        curvature_power(Form.dual(L, 0), 1)


def test_block_power_on_rank4():
    c1, c2 = _two_plane_line(1), _two_plane_line(2)
    R1, R2 = curvature(c1), curvature(c2)
    s = direct_sum(c1, c2)
    assert curvature_power(curvature(s), 2) == block_sum(curvature_power(R1, 2), curvature_power(R2, 2))
    # R = g12 + g34: R^2 = 2 g1234 under the shuffle product
    assert curvature_power(R1, 2)[(0, 1, 2, 3)] == ((2,),)


def test_chern_component_examples():
    L = de_rham(2)
    c = line_bundle(1, L)
    assert chern_component(Connection.trivial(L, 3), 0)[()] == 3
    assert chern_component(c, 1)[(0, 1)] == 1
    assert chern_component(c, 2).is_zero()
    assert chern_component(_two_plane_line(3), 2)[(0, 1, 2, 3)] == 9


def test_chern_character_examples():
    L = de_rham(2)
    flat = chern_character(Connection.trivial(L, 2))
    assert flat[0][()] == 2 and flat[1].is_zero()
    ch = chern_character(line_bundle(1, L))
    assert ch[0][()] == 1 and ch[1][(0, 1)] == 1
    prod = chern_character(tensor(line_bundle(1, L), line_bundle(2, L)))
    assert prod[1][(0, 1)] == 3
    assert prod == chern_character(line_bundle(1, L)).wedge(chern_character(line_bundle(2, L)))
    assert ch.to_dict() == [
        {"n": 0, "degree": 0, "entries": [{"indices": [], "value": "1"}]},
        {"n": 1, "degree": 2, "entries": [{"indices": [1, 2], "value": "1"}]},
    ]


def test_chern_character_matches_components():
    for _, _, c in random_instances(41, 30):
        ch = chern_character(c)
        assert set(ch.components) == set(range(c.algebra.rank // 2 + 1))
        for n, f in ch.components.items():
            assert f == chern_component(c, n)
            assert f.degree == 2 * n


def test_closedness():
    assert verify_closed(line_bundle(1)).passed
    for _, _, c in random_instances(42, 60):
        rep = verify_closed(c)
        assert rep.passed and rep.failing_degrees == []


def test_closedness_of_curvature_powers():
    for _, _, c in random_instances(43, 40):
        R = curvature(c)
        for n in range(c.algebra.rank // 2 + 1):
            assert differential(trace_form(curvature_power(R, n))).is_zero()


def test_corrupted_character_fails():
    L = de_rham(2)
    ch = chern_character(line_bundle(1, L))
    bad = ChernForm(L, dict(ch.components))
    bad.components[0] = ch[0] + Form.scalar(L, L.ring.parse("x"))
    rep = verify_closed(bad)
    assert not rep.passed and rep.failing_degrees == [0]
    assert rep.to_dict()["closed"] == {"0": False, "2": True}


def test_trace_of_kronecker_product():
    rng = random.Random(44)
    ring = de_rham(2).ring
    for _ in range(50):
        r1, r2 = rng.randint(1, 3), rng.randint(1, 3)
        a = [[random_poly(rng, ring) for _ in range(r1)] for _ in range(r1)]
        b = [[random_poly(rng, ring) for _ in range(r2)] for _ in range(r2)]
        assert mx.trace(mx.kron(mx.from_rows(a), mx.from_rows(b))) == mx.trace(mx.from_rows(a)) * mx.trace(mx.from_rows(b))


def test_trace_wedge_lemma():
    for rng, L, c1 in random_instances(45, 30):
        c2 = random_connection(rng, L, rng.randint(1, 2))
        R1, R2 = curvature(c1), curvature(c2)
        for n in range(L.rank // 2 + 1):
            for k in range(L.rank // 2 + 1 - n):
                P, Q = curvature_power(R1, n), curvature_power(R2, k)
                lhs = trace_form(wedge(tensor_identity_right(P, c2.rank), tensor_identity_left(c1.rank, Q)))
                assert lhs == wedge(trace_form(P), trace_form(Q))


def test_ring_homomorphism_at_form_level():
    for rng, L, c1 in random_instances(46, 25):
        c2 = random_connection(rng, L, rng.randint(1, 2))
        ch1, ch2 = chern_character(c1), chern_character(c2)
        assert chern_character(direct_sum(c1, c2)) == ch1 + ch2
        assert chern_character(tensor(c1, c2)) == ch1.wedge(ch2)


def test_chern_form_algebra():
    L = sl2()
    z = ChernForm.zero(L)
    assert z.top == 1 and set(z.components) == {0, 1}
    ch = chern_character(Connection.trivial(L, 2))
    assert (ch - ch) == z and ch.scaled(Fraction(1, 2))[0][()] == 1
    with pytest.raises(StructuralError):
        ch + ChernForm.zero(de_rham(4))
