import random
from fractions import Fraction

import pytest
import yaml
from hypothesis import given
from hypothesis import strategies as st

from holoforms import cone
from holoforms.exterior import hodge_star, wedge

PRESETS = cone.PRESET_NAMES

# [DERIVED] exact solves, frozen; cross-checked by d(potential) == target
POTENTIALS = {
    ("SasakianKaehlerCone", "omega_cone"): "r^2*eta",
    ("NK6toG2Cone", "phi"): "1/3*r^3*omega",
    ("NK6toG2Cone", "star-phi"): "-1/4*r^4*ImOm",
    ("NPG2toSpin7Cone", "Omega"): "1/4*r^4*phi",
    ("CY3ConeToG2Cylinder", "star-phi"): "1/4*r^2*eta*omega_cone + t*ReOm_cone",
    ("G2ConeToSpin7Cylinder", "Omega"): "t*phi - 1/4*r^4*ImOm",
}


def random_element(alg: cone.ConeAlgebra, rng: random.Random, terms: int = 4) -> cone.ConeElement:
    gens = list(alg.base.degrees)
    out = {}
    for _ in range(terms):
        key = (rng.randint(-2, 4), rng.randint(0, 2) if alg.uses_t else 0,
               rng.randint(0, 1) if alg.uses_t else 0, rng.randint(0, 1), rng.choice(gens))
        out[key] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return alg.element(out)


def homogeneous(x: cone.ConeElement, deg: int) -> cone.ConeElement:
    return x.alg.element({k: c for k, c in x.terms.items() if x.degree_of(k) == deg})


@pytest.mark.parametrize("name", PRESETS)
def test_presets_verify(name):
    rep = cone.verify_structure_preset(name)
    assert rep.ok, rep.to_text()
    assert rep.summary["mismatch"] == 0


@pytest.mark.parametrize("name", PRESETS)
def test_structure_forms_closed_and_coclosed(name):
    p = cone.load_preset(name)
    for f in p.structure_forms:
        x = p.elements[f]
        assert not p.algebra.d(x)
        assert not p.algebra.d(p.algebra.star(x))


@pytest.mark.parametrize("key,expected", sorted(POTENTIALS.items()))
def test_potentials_frozen(key, expected):
    name, pid = key
    p = cone.load_preset(name)
    spec = next(x for x in p.potentials if x["id"] == pid)
    target = p.parse(spec["target"])
    sol = cone.solve_potential(target, spec["ansatz"], p)
    assert sol.potential == p.parse(expected)
    assert p.algebra.d(sol.potential) == target
    assert cone.growth_classify(sol.potential, p).classification == "linear"


def test_potential_report_mismatches():
    rep = cone.potential_report("NK6toG2Cone")
    statuses = {c.id: c.status for c in rep.checks}
    assert statuses["NK6toG2Cone/phi"] == "pass"
    assert statuses["NK6toG2Cone/phi/printed-1"] == "derived-mismatch"
    assert statuses["NK6toG2Cone/star-phi/printed-0"] == "derived-mismatch"
    assert "Remark 4.3" in rep.get("NK6toG2Cone/phi/printed-1").anchor


@pytest.mark.parametrize("name", PRESETS)
def test_d_squared_and_leibniz(name):
    alg = cone.load_preset(name).algebra
    rng = random.Random(name)
    for _ in range(25):
        x, y = random_element(alg, rng), random_element(alg, rng)
        assert not alg.d(alg.d(x))
        for p in x.degrees():
            xp = homogeneous(x, p)
            assert alg.d(xp * y) == alg.d(xp) * y + xp * alg.d(y) * (-1) ** p


@pytest.mark.parametrize("name", PRESETS)
def test_star_matches_pointwise_oracle(name):
    alg = cone.load_preset(name).algebra
    rng = random.Random(name + "star")
    n = alg.dim
    for _ in range(15):
        x = random_element(alg, rng)
        r, t = Fraction(rng.randint(1, 5), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), 2)
        assert alg.evaluate(alg.star(x), r, t) == hodge_star(alg.evaluate(x, r, t))
        for p in x.degrees():
            xp = homogeneous(x, p)
            assert alg.star(alg.star(xp)) == xp * (-1) ** (p * (n - p))


@pytest.mark.parametrize("name", PRESETS)
def test_wedge_matches_pointwise(name):
    alg = cone.load_preset(name).algebra
    rng = random.Random(name + "wedge")
    for _ in range(15):
        x, y = random_element(alg, rng, 3), random_element(alg, rng, 3)
        r, t = Fraction(3, 2), Fraction(-1, 3)
        assert alg.evaluate(x * y, r, t) == wedge(alg.evaluate(x, r, t), alg.evaluate(y, r, t))


def test_parser_features():
    p = cone.load_preset("NK6toG2Cone")
    a = p.parse("r^2 omega dr")
    assert a == p.parse("r^2*omega*dr") == p.parse("r^2*dr*omega")
    assert p.parse("ReOm*dr") == -p.parse("dr*ReOm")
    assert p.parse("r^-1*r") == p.parse("1")
    assert p.parse("2/6*omega") == p.parse("1/3*omega")
    assert p.parse("d(r^3*omega)") == p.parse("3*r^2*dr*omega + 3*r^3*ReOm")
    assert p.parse("omega^2") == p.parse("omega2")
    assert p.parse("lambda*omega") == p.parse("omega")


@pytest.mark.parametrize("text,pos", [("r^", 2), ("omega +", 7), ("foo", 0), ("(r", 2), ("r $", 2)])
def test_parser_errors(text, pos):
    p = cone.load_preset("NK6toG2Cone")
    with pytest.raises(cone.ConeSyntaxError) as info:
        p.parse(text)
    assert info.value.position == pos


def test_t_rejected_on_pure_cone():
    p = cone.load_preset("NK6toG2Cone")
    with pytest.raises(cone.ConeError):
        p.parse("t*omega")


@given(st.integers(0, 10**6))
def test_format_round_trip(seed):
    p = cone.load_preset("G2ConeToSpin7Cylinder")
    x = random_element(p.algebra, random.Random(seed))
    assert p.parse(str(x)) == x


def test_solve_not_closed():
    p = cone.load_preset("NK6toG2Cone")
    with pytest.raises(cone.NotClosed) as info:
        cone.solve_potential(p.parse("r^2*omega"), ["omega"], p)
    assert info.value.d_target == p.parse("2*r*dr*omega + 3*r^2*ReOm")


def test_solve_no_solution_and_kernel():
    p = cone.load_preset("NK6toG2Cone")
    phi = p.elements["phi"]
    assert not cone.solve_potential(phi, [{"shape": "omega", "r": [0, 2]}], p)
    # dr is closed, so r^k dr adds to the kernel without changing d
    sol = cone.solve_potential(p.parse("dr*omega*r^2 + r^3*ReOm"),
                               [{"shape": "omega", "r": [3, 3]}, {"shape": "dr*omega", "r": [0, 0]}], p)
    assert sol.kernel_dim == 0 and sol.potential == p.parse("1/3*r^3*omega")
    sol = cone.solve_potential(p.parse("dr"), [{"shape": "1", "r": [1, 1]}, {"shape": "dr", "r": [0, 0]}], p)
    assert sol.potential == p.parse("r")


def test_growth_classes():
    p = cone.load_preset("NK6toG2Cone")
    g = lambda s: cone.growth_classify(p.parse(s), p)
    assert g("r^2*omega").classification == "decaying_or_bounded"
    assert g("r^3*omega").classification == "linear"
    assert g("r^5*omega").label == "polynomial(3)"
    assert g("r*omega").classification == "singular_at_apex"
    q = cone.load_preset("G2ConeToSpin7Cylinder")
    assert cone.growth_classify(q.parse("t^2*r^2*omega"), q).label == "polynomial(2)"


def test_custom_preset_file(tmp_path):
    spec = {
        "name": "Custom", "base": "Sasakian5", "uses_t": False,
        "elements": {"w": "r^2*deta + 2*r*dr*eta"}, "structure": "w",
        "potentials": [{"id": "w", "target": "w", "ansatz": [{"shape": "eta", "r": [0, 3]}], "expected": "r^2*eta"}],
    }
    path = tmp_path / "custom.yaml"
    path.write_text(yaml.safe_dump(spec))
    p = cone.load_preset_file(path)
    assert cone.verify_structure_preset(p).ok
    assert cone.potential_report(p).ok


def test_unknown_names():
    with pytest.raises(cone.ConeError):
        cone.load_preset("Nope")
    alg = cone.load_preset("NK6toG2Cone").algebra
    with pytest.raises(cone.UnknownGenerator):
        alg.monomial(gen="zeta")


def test_bad_base_model_rejected():
    spec = {"dim": 3, "volume": "v", "generators": [
        {"name": "a", "degree": 1, "model": "e0"},
        {"name": "v", "degree": 3, "model": "e012"}], "d": {}}
    with pytest.raises(cone.ConeError, match="not in the span"):
        cone.BaseAlgebra.from_spec("tiny", spec)  # *a = e12 has no generator
