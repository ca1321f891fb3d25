import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from holoforms.exterior import ConstForm, inner
from holoforms.polyforms import (
    CODIFF,
    D,
    KahlerOperators,
    PolyForm,
    adjoint,
    codiff,
    codiff_coordinate,
    coordinate_laplacian,
    d,
    laplacian,
    poly_wedge,
    random_polyform,
    sample_family,
    star,
    supercommutator,
    verify_jacobi_instances,
    verify_kahler_identities,
)
from holoforms.polynomial import ExponentOverflow, PolyScalar, format_poly, monomials_up_to, random_poly
from holoforms.structures import canonical_structure

X = sympy.symbols("x0:8")


def to_sympy(p: PolyScalar):
    expr = 0
    for exps, c in p.exponent_terms().items():
        term = sympy.Rational(str(c))
        for i, e in enumerate(exps):
            term *= X[i] ** e
        expr += term
    return sympy.expand(expr)


polys = st.tuples(st.integers(0, 10**6), st.integers(0, 3)).map(
    lambda sd: random_poly(random.Random(sd[0]), 4, max_degree=sd[1], terms=3))


@given(polys, polys)
def test_polynomial_ring_matches_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    for i in range(4):
        assert to_sympy(p.diff(i)) == sympy.diff(to_sympy(p), X[i])


def test_monomial_enumeration():
    assert len(monomials_up_to(7, 2)) == 36
    assert len(set(monomials_up_to(5, 3))) == 56


def test_exponent_overflow():
    x = PolyScalar.variable(2, 0)
    with pytest.raises(ExponentOverflow):
        x ** 128
    assert (x ** 127).degree() == 127


def test_format_poly():
    x0, x1 = PolyScalar.variable(2, 0), PolyScalar.variable(2, 1)
    assert format_poly(x0 * x0 * x1 - 3) == "-3 + x0^2*x1"


def test_d_examples():
    x1 = PolyScalar.variable(7, 1)
    assert d(PolyForm.function(x1)) == PolyForm.from_const(ConstForm.blade(7, 1))
    assert d(PolyForm.term(x1, ConstForm.blade(7, 2))) == PolyForm.from_const(ConstForm.blade(7, 1, 2))
    assert codiff(PolyForm.term(x1, ConstForm.blade(7, 1))) == PolyForm.function(PolyScalar.constant(7, -1))


forms7 = st.integers(0, 10**6).map(lambda s: random_polyform(random.Random(s), 7))


@given(forms7)
def test_d_squared_and_codiff_formulas(a):
    assert not d(d(a))
    assert not codiff(codiff(a))
    assert codiff(a) == codiff_coordinate(a)
    assert laplacian(a) == coordinate_laplacian(a)


@given(forms7, forms7)
def test_d_leibniz(a, b):
    for p in a.degrees():
        ap = a.grade(p)
        assert d(poly_wedge(ap, b)) == poly_wedge(d(ap), b) + poly_wedge(ap, d(b)) * (-1) ** p


@given(forms7)
def test_star_involution(a):
    for p in a.degrees():
        ap = a.grade(p)
        assert star(star(ap)) == ap * (-1) ** (p * (7 - p))


def test_structural_adjoint_of_pointwise_operator_is_metric_adjoint():
    omega = canonical_structure("g2")["phi"]
    ops = KahlerOperators.build(omega)
    lam = adjoint(ops.L)
    rng = random.Random(3)
    point = [1, -2, 3, 0, 1, 2, -1]
    for _ in range(20):
        a = random_polyform(rng, 7, degree=2)
        b = random_polyform(rng, 7, degree=5)
        lhs = inner(ops.L.apply(a).evaluate(point), b.evaluate(point))
        assert lhs == inner(a.evaluate(point), lam.apply(b).evaluate(point))
        assert lam.apply(b) == ops.Lam.apply(b)
    assert adjoint(D).label == CODIFF.label


@pytest.mark.parametrize("kind,key", [("g2", "phi"), ("cy3", "omega")])
def test_kahler_identities_small_family(kind, key):
    omega = canonical_structure(kind)[key]
    fam = sample_family(omega.n, random.Random(2), random_count=10, max_degree=1)
    rep = verify_kahler_identities(omega, fam, label=key)
    statuses = {c.id.split("/")[1]: c.status for c in rep.checks}
    assert statuses.pop("dC-lemma") == "derived-mismatch"
    assert set(statuses.values()) == {"pass"}
    assert "constant -1" in rep.get(f"{key}/dC-lemma").detail


def test_dc_lemma_holds_with_minus_sign():
    omega = canonical_structure("cy3")["omega"]
    ops = KahlerOperators.build(omega)
    for a in random.Random(4).sample(sample_family(6, random.Random(4), 20), 40):
        assert ops.dC.apply(a) == -ops.lemma_rhs.apply(a)


def test_jacobi_instances():
    omega = canonical_structure("g2")["psi"]
    fam = sample_family(7, random.Random(9), random_count=10, max_degree=1)[::5]
    assert verify_jacobi_instances(omega, fam, "psi").ok


def test_supercommutator_sign():
    # {d, d} = 2 d^2 = 0 and [L, L] = 0 for an even operator
    omega = canonical_structure("cy3")["omega"]
    ops = KahlerOperators.build(omega)
    a = random_polyform(random.Random(1), 6)
    assert not supercommutator(D, D).apply(a)
    assert not supercommutator(ops.L, ops.L).apply(a)
