import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoforms.exterior import ConstForm, hodge_star, random_form
from holoforms.gauge import (
    GENERATORS,
    GaugeConfig,
    GaugeError,
    LieForm,
    Mat2,
    PolyConnection,
    PolyMatrix,
    big_part,
    bracket,
    chern_weil_closed,
    chern_weil_form,
    covariant_d,
    curvature,
    g2_energy_sides,
    gauge_suite,
    instanton_residual,
    is_anti_hermitian,
    is_instanton,
    kahler_energy_sides,
    kahler_split,
    lie_norm_sq,
    lie_star,
    lie_wedge,
    mat_wedge,
    pairing,
    random_connection,
    random_lie_form,
    seven_part,
    spin7_energy_sides,
    structure_constants,
)
from holoforms.polyforms import PolyForm, d as poly_d, poly_wedge
from holoforms.polynomial import PolyScalar
from holoforms.structures import canonical_structure, split2

G1, G2_, G3 = GENERATORS


def test_generators_form_su2():
    for g in GENERATORS:
        assert is_anti_hermitian(g)
        assert pairing(g, g) == 2
    assert structure_constants()[(0, 1)] == [0, 0, -2]
    assert bracket(G1, G2_) == G3.scale(-2)


def test_negative_definite_trace():
    rng = random.Random(0)
    for _ in range(20):
        x = Mat2(0, 0, 0, 0)
        for g in GENERATORS:
            x = x + g.scale(rng.randint(-3, 3))
        if x:
            assert (x @ x).trace() < 0


def test_zero_is_instanton():
    for kind, n in (("g2", 7), ("spin7", 8)):
        F = LieForm.zero(n)
        assert not instanton_residual(F, kind)
        assert is_instanton(F, kind)


def test_fourteen_part_gives_zero_residual():
    a = split2(random_form(random.Random(1), 7, 2), "g2")["14"]
    assert instanton_residual(LieForm.tensor(G1, a), "g2") == LieForm.zero(7)


def test_seven_part_gives_three_star():
    a = split2(ConstForm.blade(7, 0, 1), "g2")["7"]
    F = LieForm.tensor(G2_, a)
    assert instanton_residual(F, "g2") == LieForm.tensor(G2_, hodge_star(a)).scale(3)
    assert not is_instanton(F, "g2")


def test_spin7_twenty_one_part_is_instanton():
    a = split2(random_form(random.Random(2), 8, 2), "spin7")["21"]
    assert is_instanton(LieForm.tensor(G3, a), "spin7")
    a7 = split2(ConstForm.blade(8, 0, 1), "spin7")["7"]
    F = LieForm.tensor(G3, a7)
    assert instanton_residual(F, "spin7") == lie_star(F).scale(4)


def test_cy3_has_no_instanton_form():
    with pytest.raises(GaugeError):
        instanton_residual(LieForm.zero(6), "cy3")


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.sampled_from(["g2", "spin7"]))
def test_instanton_iff_seven_part_vanishes(seed, kind):
    rng = random.Random(seed)
    n = 7 if kind == "g2" else 8
    F = random_lie_form(rng, n)
    assert is_instanton(F, kind) == (not seven_part(F, kind))
    assert is_instanton(big_part(F, kind), kind)


def _one_form(n, var, blade, g):
    x = PolyScalar.variable(n, var)
    return PolyMatrix.tensor(g, PolyForm.term(x, ConstForm.blade(n, blade)))


def test_zero_connection_is_flat():
    conn = PolyConnection(PolyMatrix.zero(7))
    assert not curvature(conn)
    assert not chern_weil_form(conn)
    assert chern_weil_closed(conn).ok


def test_single_generator_connection():
    conn = PolyConnection(_one_form(7, 1, 2, G1))
    F = curvature(conn)
    assert not mat_wedge(conn.A, conn.A)
    assert F == PolyMatrix.tensor(G1, PolyForm.from_const(ConstForm.blade(7, 1, 2)))
    assert not covariant_d(conn, F)


def test_abelian_chern_weil():
    x0 = PolyScalar.variable(7, 0)
    a = PolyForm.term(x0 * x0, ConstForm.blade(7, 3)) + PolyForm.term(x0, ConstForm.blade(7, 4))
    conn = PolyConnection(PolyMatrix.tensor(G1, a))
    f = poly_d(a)
    cw = chern_weil_form(conn)
    assert cw == poly_wedge(f, f) * (G1 @ G1).trace()
    assert not poly_d(cw)


def test_non_commuting_connection_satisfies_bianchi():
    conn = PolyConnection(_one_form(7, 0, 1, G1) + _one_form(7, 2, 3, G2_))
    F = curvature(conn)
    assert mat_wedge(conn.A, conn.A)
    assert not covariant_d(conn, F)
    assert not poly_d(chern_weil_form(conn))


@settings(max_examples=8)
@given(st.integers(0, 10**6), st.sampled_from([7, 8]))
def test_random_connections(seed, n):
    conn = random_connection(random.Random(seed), n)
    assert not covariant_d(conn, curvature(conn))
    assert not poly_d(chern_weil_form(conn))


def test_g2_energy_examples():
    lhs, rhs = g2_energy_sides(LieForm.zero(7))
    assert not lhs and not rhs
    a7 = split2(ConstForm.blade(7, 0, 1), "g2")["7"]
    alpha = LieForm.tensor(G1, a7)
    lhs, rhs = g2_energy_sides(alpha)
    assert lhs == rhs == ConstForm.volume(7) * (2 * lie_norm_sq(alpha))


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_g2_energy_random(seed):
    lhs, rhs = g2_energy_sides(random_lie_form(random.Random(seed), 7))
    assert lhs == rhs


def test_g2_energy_negative_on_fourteen():
    a = split2(random_form(random.Random(5), 7, 2), "g2")["14"]
    alpha = LieForm.tensor(G1, a) + LieForm.tensor(G3, a * 2)
    lhs, _ = g2_energy_sides(alpha)
    assert lhs.coeff((1 << 7) - 1) < 0


def test_spin7_energy_examples():
    a21 = split2(random_form(random.Random(4), 8, 2), "spin7")["21"]
    alpha = LieForm.tensor(G2_, a21)
    lhs, rhs = spin7_energy_sides(alpha)
    assert lhs == rhs == ConstForm.volume(8) * -lie_norm_sq(alpha)
    for seed in range(5):
        lhs, rhs = spin7_energy_sides(random_lie_form(random.Random(seed), 8))
        assert lhs == rhs


def test_kahler_energy_on_omega():
    omega = canonical_structure("cy3")["omega"]
    alpha = LieForm.tensor(G1, omega)
    s = kahler_split(alpha)
    assert s.a0 == G1
    assert not s.a20 and not s.a02 and not s.a11_0
    lhs, rhs = kahler_energy_sides(alpha)
    assert lhs == rhs


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.booleans())
def test_kahler_energy_random(seed, complex_coeffs):
    alpha = random_lie_form(random.Random(seed), 6, complex_coeffs=complex_coeffs)
    lhs, rhs = kahler_energy_sides(alpha)
    assert lhs == rhs


def test_lie_wedge_is_non_commutative():
    a = LieForm.tensor(G1, ConstForm.blade(7, 0))
    b = LieForm.tensor(G2_, ConstForm.blade(7, 1))
    assert lie_wedge(a, b) != lie_wedge(b, a).scale(-1)


def test_small_gauge_suites_pass():
    cfg = GaugeConfig(seed=3, samples=5, instanton_samples=6, connections=2)
    for kind in ("g2", "spin7", "cy3"):
        rep = gauge_suite(kind, cfg)
        assert rep.ok, rep.to_text()
