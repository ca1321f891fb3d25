import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holoforms.exterior import (
    ConstForm,
    DerivationSpec,
    adjoint_wedge,
    blades_of_degree,
    derivation_extend,
    hodge_star,
    inner,
    random_form,
    wedge,
)

from . import oracles


def forms(n, degree=None):
    deg = st.integers(0, n) if degree is None else st.just(degree)
    return st.tuples(st.integers(0, 10**6), deg).map(lambda sd: random_form(random.Random(sd[0]), n, sd[1]))


@given(forms(6), forms(6), forms(6))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(7), forms(7))
def test_graded_commutative(a, b):
    p, q = a.degree, b.degree
    assert wedge(a, b) == wedge(b, a) * (-1) ** (p * q)


@given(forms(7), forms(7))
def test_wedge_matches_permutation_oracle(a, b):
    assert oracles.to_dict(wedge(a, b)) == oracles.wedge(oracles.to_dict(a), oracles.to_dict(b))


@given(st.integers(1, 8).flatmap(lambda n: forms(n)))
def test_star_matches_oracle_and_squares_to_sign(a):
    n, p = a.n, a.degree
    assert oracles.to_dict(hodge_star(a)) == oracles.star(oracles.to_dict(a), n)
    assert hodge_star(hodge_star(a)) == a * (-1) ** (p * (n - p))


@given(st.integers(0, 7).flatmap(lambda p: st.tuples(forms(7, p), forms(7, p))))
def test_star_gives_inner_product(ab):
    a, b = ab
    assert wedge(a, hodge_star(b)) == ConstForm.volume(7) * inner(a, b)


def test_blade_orientation_sign():
    assert ConstForm.blade(4, 1, 0) == -ConstForm.blade(4, 0, 1)
    assert hodge_star(ConstForm.blade(3, 1)) == ConstForm.blade(3, 2, 0)
    assert hodge_star(ConstForm.scalar(5)) == ConstForm.volume(5)


def test_blades_of_degree_counts():
    assert [len(blades_of_degree(7, p)) for p in range(8)] == [1, 7, 21, 35, 35, 21, 7, 1]


def test_dimension_limits():
    with pytest.raises(ValueError):
        ConstForm(9)
    with pytest.raises(ValueError):
        ConstForm.blade(3, 3)


@given(forms(6, 2), forms(6, 3))
def test_adjoint_wedge_is_metric_adjoint(omega, b):
    a_deg = 1
    for m in blades_of_degree(6, a_deg):
        a = ConstForm(6, {m: 1})
        assert inner(wedge(omega, a), b) == inner(a, adjoint_wedge(omega, b))


def test_derivation_extension_leibniz():
    rng = random.Random(5)
    spec = DerivationSpec.from_map(5, lambda e: hodge_star(wedge(random_form(random.Random(1), 5, 2), e)))
    for _ in range(20):
        a, b = random_form(rng, 5, 1), random_form(rng, 5, 2)
        lhs = derivation_extend(spec, wedge(a, b))
        sgn = (-1) ** spec.parity
        rhs = wedge(derivation_extend(spec, a), b) + wedge(a, derivation_extend(spec, b)) * sgn
        assert lhs == rhs
