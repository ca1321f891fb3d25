"""Lie-algebra-valued forms for the instanton and energy identities.

The gauge algebra is su(2), realised as anti-hermitian 2x2 matrices with
Gaussian-rational entries and basis ``g_k = i sigma_k``.  A :class:`LieForm`
is a constant form with matrix coefficients; a :class:`PolyConnection` is a
1-form whose coefficients are 2x2 matrices of polynomials.  All norms use the
positive pairing ``|a|^2 = -tr(a a)`` on the algebra and the orthonormal blade
basis on forms; they are extended bilinearly, so complex inputs are allowed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping

from .exterior import ConstForm, _SIGN, blades_of_degree, hodge_star, random_form, wedge
from .polyforms import PolyForm, d as poly_d, poly_wedge, random_polyform
from .report import SuiteReport
from .scalars import QI, Scalar, div, format_scalar, normalize
from .structures import (
    CY3,
    G2,
    SPIN7,
    DegreeError,
    canonical_structure,
    lefschetz_lambda,
    normalize_kind,
    split2,
    type_component,
)

I = QI(0, 1)


class GaugeError(ValueError):
    pass


# ---------------------------------------------------------------- the Lie algebra


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix ``[[a, b], [c, d]]`` over Q(i)."""

    a: Scalar = 0
    b: Scalar = 0
    c: Scalar = 0
    d: Scalar = 0


    def entries(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return self.a, self.b, self.c, self.d

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def scale(self, s: Scalar) -> "Mat2":
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def trace(self) -> Scalar:
        return normalize(self.a + self.d)

    def adjoint(self) -> "Mat2":
        conj = lambda x: x.conjugate() if isinstance(x, QI) else x
        return Mat2(conj(self.a), conj(self.c), conj(self.b), conj(self.d))

    def is_zero(self) -> bool:
        return not any(self.entries())

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return "[[" + ", ".join(format_scalar(x) for x in (self.a, self.b)) + "], [" + \
            ", ".join(format_scalar(x) for x in (self.c, self.d)) + "]]"


ZERO = Mat2()
GENERATORS = (Mat2(0, I, I, 0), Mat2(0, 1, -1, 0), Mat2(I, 0, 0, -I))  # i sigma_1, i sigma_2, i sigma_3


def bracket(x: Mat2, y: Mat2) -> Mat2:
    return x @ y - y @ x


def pairing(x: Mat2, y: Mat2) -> Scalar:
    """Positive pairing ``-tr(x y)``; equals ``2 delta_kl`` on the generators."""
    return normalize(-(x @ y).trace())


def lie_element(coeffs: Iterable[Scalar]) -> Mat2:
    out = ZERO
    for c, g in zip(coeffs, GENERATORS):
        out = out + g.scale(c)
    return out


def is_anti_hermitian(x: Mat2) -> bool:
    return x.adjoint() == -x and x.trace() == 0


def structure_constants() -> dict[tuple[int, int], list[Scalar]]:
    """``[g_i, g_j] = sum_k c_ijk g_k`` read off by the pairing."""
    out = {}
    for i, gi in enumerate(GENERATORS):
        for j, gj in enumerate(GENERATORS):
            br = bracket(gi, gj)
            out[(i, j)] = [div(pairing(br, g), 2) for g in GENERATORS]
    return out


# ---------------------------------------------------------------- Lie-valued constant forms


class LieForm:
    """Constant form with 2x2 matrix coefficients; ``terms`` maps blade masks to matrices."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, Mat2] | None = None):
        self.n = n
        self.terms = {m: v for m, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, n: int) -> "LieForm":
        return cls(n)

    @classmethod
    def tensor(cls, g: Mat2, form: ConstForm) -> "LieForm":
        """``g (x) form``."""
        return cls(form.n, {m: g.scale(c) for m, c in form.terms.items()})

    @classmethod
    def from_components(cls, forms: Iterable[ConstForm]) -> "LieForm":
        """``sum_k g_k (x) forms[k]``."""
        forms = list(forms)
        out = cls.zero(forms[0].n)
        for g, f in zip(GENERATORS, forms):
            out = out + cls.tensor(g, f)
        return out

    @classmethod
    def from_entries(cls, entries: tuple[ConstForm, ConstForm, ConstForm, ConstForm]) -> "LieForm":
        n = entries[0].n
        masks = set().union(*(e.terms for e in entries))
        return cls(n, {m: Mat2(*(e.coeff(m) for e in entries)) for m in masks})

    def entries(self) -> tuple[ConstForm, ...]:
        """The four matrix entries as scalar forms (row-major)."""
        return tuple(ConstForm(self.n, {m: v.entries()[k] for m, v in self.terms.items()}) for k in range(4))

    def map_forms(self, f) -> "LieForm":
        """Apply a linear map of scalar forms to every entry."""
        return LieForm.from_entries(tuple(f(e) for e in self.entries()))

    def __add__(self, o: "LieForm") -> "LieForm":
        out = dict(self.terms)
        for m, v in o.terms.items():
            out[m] = out.get(m, ZERO) + v
        return LieForm(self.n, out)

    def __neg__(self):
        return LieForm(self.n, {m: -v for m, v in self.terms.items()})

    def __sub__(self, o: "LieForm") -> "LieForm":
        return self + (-o)

    def scale(self, s: Scalar) -> "LieForm":
        return LieForm(self.n, {m: v.scale(s) for m, v in self.terms.items()})

    def __eq__(self, o):
        return isinstance(o, LieForm) and self.n == o.n and self.terms == o.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {bin(m).count("1") for m in self.terms}

    def __repr__(self):
        return f"LieForm({self.n}, {len(self.terms)} blades)"


def lie_wedge(x: LieForm, y: LieForm) -> LieForm:
    """Wedge with matrix multiplication of coefficients (non-commutative)."""
    out: dict[int, Mat2] = {}
    for ma, va in x.terms.items():
        row = _SIGN[ma]
        for mb, vb in y.terms.items():
            s = row[mb]
            if s:
                prod = va @ vb
                out[ma | mb] = out.get(ma | mb, ZERO) + (prod if s > 0 else -prod)
    return LieForm(x.n, out)


def bracket_wedge(x: LieForm, y: LieForm) -> LieForm:
    """``[x ^ y] = x ^ y - (-1)^(pq) y ^ x`` for homogeneous x, y."""
    p = next(iter(x.degrees()), 0)
    q = next(iter(y.degrees()), 0)
    back = lie_wedge(y, x)
    return lie_wedge(x, y) - back if (p * q) % 2 == 0 else lie_wedge(x, y) + back


def scalar_wedge(form: ConstForm, x: LieForm) -> LieForm:
    """``form ^ x`` for a scalar form."""
    acc: dict[int, dict[int, Scalar]] = {}
    for ma, c in form.terms.items():
        row = _SIGN[ma]
        for mb in x.terms:
            s = row[mb]
            if s:
                slot = acc.setdefault(ma | mb, {})
                slot[mb] = slot.get(mb, 0) + s * c
    out = {}
    for m, parts in acc.items():
        total = ZERO
        for mb, c in parts.items():
            total = total + x.terms[mb].scale(c)
        out[m] = total
    return LieForm(x.n, out)


def lie_star(x: LieForm) -> LieForm:
    return x.map_forms(hodge_star)


def lie_trace(x: LieForm) -> ConstForm:
    return ConstForm(x.n, {m: v.trace() for m, v in x.terms.items()})


def lie_norm_sq(x: LieForm, y: LieForm | None = None) -> Scalar:
    """``sum_I -tr(x_I y_I)`` over orthonormal blades (bilinear)."""
    y = x if y is None else y
    total = 0
    for m, v in x.terms.items():
        w = y.terms.get(m)
        if w is not None:
            total = total + pairing(v, w)
    return normalize(total)


def random_lie_form(rng: random.Random, n: int, degree: int = 2, density: float = 0.4,
                    complex_coeffs: bool = False) -> LieForm:
    return LieForm.from_components(
        [random_form(rng, n, degree, density=density, complex_coeffs=complex_coeffs) for _ in GENERATORS]
    )


# ---------------------------------------------------------------- instantons


def instanton_form(preset) -> ConstForm:
    kind = normalize_kind(preset if isinstance(preset, str) else preset.kind)
    if kind == CY3:
        raise GaugeError("the CY3 structure has no instanton form; use g2 or spin7")
    s = canonical_structure(kind)
    return s["phi"] if kind == G2 else s["Omega"]


def _require(F: LieForm, n: int, degree: int = 2):
    if F.n != n:
        raise DegreeError(f"expected a form on R^{n}, got R^{F.n}")
    if F and F.degrees() != {degree}:
        raise DegreeError(f"expected a {degree}-form, got degrees {sorted(F.degrees())}")


def instanton_residual(F: LieForm, preset) -> LieForm:
    """``*F + (*Q) ^ F`` with ``*Q = phi`` (G2) or ``Omega`` (Spin(7)); zero iff F is an instanton."""
    form = instanton_form(preset)
    _require(F, form.n)
    return lie_star(F) + scalar_wedge(form, F)


def is_instanton(F: LieForm, preset) -> bool:
    return not instanton_residual(F, preset)


@lru_cache(maxsize=None)
def _seven_projector(kind: str) -> dict[int, tuple[tuple[int, Scalar], ...]]:
    """Image of every 2-blade under the projection onto the 7-dimensional summand."""
    s = canonical_structure(kind)
    out = {}
    for m in blades_of_degree(s.n, 2):
        img = split2(ConstForm(s.n, {m: 1}), s)["7"]
        out[m] = tuple(sorted(img.terms.items()))
    return out


def seven_part(F: LieForm, preset) -> LieForm:
    """Componentwise projection onto the 7-dimensional summand."""
    kind = normalize_kind(preset if isinstance(preset, str) else preset.kind)
    proj = _seven_projector(kind)
    _require(F, canonical_structure(kind).n)
    out: dict[int, Mat2] = {}
    for m, v in F.terms.items():
        for mm, c in proj[m]:
            out[mm] = out.get(mm, ZERO) + v.scale(c)
    return LieForm(F.n, out)


def big_part(F: LieForm, preset) -> LieForm:
    return F - seven_part(F, preset)


# ---------------------------------------------------------------- polynomial connections


class PolyMatrix:
    """2x2 matrix of polynomial forms on R^n."""

    __slots__ = ("n", "m")

    def __init__(self, n: int, m):
        self.n = n
        self.m = tuple(tuple(row) for row in m)

    @classmethod
    def zero(cls, n: int) -> "PolyMatrix":
        return cls(n, [[PolyForm.zero(n)] * 2 for _ in range(2)])

    @classmethod
    def tensor(cls, g: Mat2, form: PolyForm) -> "PolyMatrix":
        a, b, c, dd = g.entries()
        return cls(form.n, [[form * a, form * b], [form * c, form * dd]])

    def __add__(self, o):
        return PolyMatrix(self.n, [[self.m[i][j] + o.m[i][j] for j in range(2)] for i in range(2)])

    def __neg__(self):
        return PolyMatrix(self.n, [[-x for x in row] for row in self.m])

    def __sub__(self, o):
        return self + (-o)

    def __bool__(self):
        return any(bool(x) for row in self.m for x in row)

    def __eq__(self, o):
        return isinstance(o, PolyMatrix) and self.m == o.m

    def __hash__(self):
        return hash(self.m)

    def trace(self) -> PolyForm:
        return self.m[0][0] + self.m[1][1]

    def degrees(self) -> set[int]:
        return set().union(*(x.degrees() for row in self.m for x in row))

    def evaluate(self, point) -> LieForm:
        ents = [self.m[i][j].evaluate(point) for i in range(2) for j in range(2)]
        return LieForm.from_entries(tuple(ents))


def mat_wedge(x: PolyMatrix, y: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(x.n, [
        [poly_wedge(x.m[i][0], y.m[0][j]) + poly_wedge(x.m[i][1], y.m[1][j]) for j in range(2)]
        for i in range(2)
    ])


def mat_d(x: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(x.n, [[poly_d(e) for e in row] for row in x.m])


@dataclass
class PolyConnection:
    """Connection 1-form ``A`` on the trivial rank-2 bundle over R^n."""

    A: PolyMatrix

    @property
    def n(self) -> int:
        return self.A.n

    @classmethod
    def from_components(cls, forms: Iterable[PolyForm]) -> "PolyConnection":
        forms = list(forms)
        n = forms[0].n
        for f in forms:
            if f and f.degrees() != {1}:
                raise DegreeError("connection components must be 1-forms")
        out = PolyMatrix.zero(n)
        for g, f in zip(GENERATORS, forms):
            out = out + PolyMatrix.tensor(g, f)
        return cls(out)


def curvature(conn: PolyConnection) -> PolyMatrix:
    """``F = dA + A ^ A``."""
    A = conn.A
    return mat_d(A) + mat_wedge(A, A)


def covariant_d(conn: PolyConnection, x: PolyMatrix) -> PolyMatrix:
    """``d_A x = dx + A ^ x - (-1)^p x ^ A`` for an adjoint-valued p-form."""
    A = conn.A
    p = next(iter(x.degrees()), 0)
    back = mat_wedge(x, A)
    out = mat_d(x) + mat_wedge(A, x)
    return out - back if p % 2 == 0 else out + back


def chern_weil_form(conn: PolyConnection) -> PolyForm:
    F = curvature(conn)
    return mat_wedge(F, F).trace()


def random_connection(rng: random.Random, n: int, blades: int = 2, max_degree: int = 2,
                      components: int = 3) -> PolyConnection:
    forms = [random_polyform(rng, n, blades=blades, max_degree=max_degree, degree=1)
             for _ in range(components)]
    forms += [PolyForm.zero(n)] * (3 - components)
    return PolyConnection.from_components(forms)


def chern_weil_closed(conn: PolyConnection) -> SuiteReport:
    rep = SuiteReport("chern-weil")
    cw = chern_weil_form(conn)
    dcw = poly_d(cw)
    rep.add("d-tr(F^F)", not dcw, "d tr(F^F)", "0", f"tr(F^F) has {len(cw.terms)} blades",
            "Cor C2: dtr(F_A^F_A)=tr(d_A(F_A^F_A))=0")
    return rep


# ---------------------------------------------------------------- energy identities


def g2_energy_sides(alpha: LieForm) -> tuple[ConstForm, ConstForm]:
    """``-tr(a ^ a) ^ phi`` and ``(2|a7|^2 - |a14|^2) vol`` on R^7."""
    phi = instanton_form(G2)
    _require(alpha, 7)
    lhs = wedge(lie_trace(lie_wedge(alpha, alpha)), phi) * -1
    a7 = seven_part(alpha, G2)
    a14 = alpha - a7
    return lhs, ConstForm.volume(7) * (2 * lie_norm_sq(a7) - lie_norm_sq(a14))


def spin7_energy_sides(alpha: LieForm) -> tuple[ConstForm, ConstForm]:
    """``-tr(a ^ (a ^ Omega))`` and ``(3|a7|^2 - |a21|^2) vol`` on R^8."""
    omega = instanton_form(SPIN7)
    _require(alpha, 8)
    lhs = lie_trace(lie_wedge(alpha, scalar_wedge(omega, alpha))) * -1
    a7 = seven_part(alpha, SPIN7)
    a21 = alpha - a7
    return lhs, ConstForm.volume(8) * (3 * lie_norm_sq(a7) - lie_norm_sq(a21))


@dataclass(frozen=True)
class KahlerSplit:
    a20: LieForm
    a02: LieForm
    a0: Mat2
    a11_0: LieForm


def kahler_split(alpha: LieForm) -> KahlerSplit:
    _require(alpha, 6)
    omega = canonical_structure(CY3)["omega"]
    a20 = alpha.map_forms(lambda e: type_component(e, 2, 0))
    a02 = alpha.map_forms(lambda e: type_component(e, 0, 2))
    a0 = Mat2(*(div(lefschetz_lambda(e).coeff(0), 3) for e in alpha.entries()))
    trace = LieForm.tensor(a0, omega)
    return KahlerSplit(a20, a02, a0, alpha - a20 - a02 - trace)


def kahler_energy_sides(alpha: LieForm) -> tuple[ConstForm, ConstForm]:
    """Both sides of the n = 3 Kaehler identity with squared norms.

    ``-tr(a ^ *a) = tr(a ^ a) ^ omega + 2|a20 + a02|^2 vol + 3|a0 omega|^2 vol``.
    """
    omega = canonical_structure(CY3)["omega"]
    lhs = lie_trace(lie_wedge(alpha, lie_star(alpha))) * -1
    s = kahler_split(alpha)
    a0w = LieForm.tensor(s.a0, omega)
    rhs = wedge(lie_trace(lie_wedge(alpha, alpha)), omega) + ConstForm.volume(6) * (
        2 * lie_norm_sq(s.a20 + s.a02) + 3 * lie_norm_sq(a0w)
    )
    return lhs, rhs


# ---------------------------------------------------------------- suites


@dataclass
class GaugeConfig:
    seed: int = 0
    samples: int = 100
    instanton_samples: int = 200
    connections: int = 50


def _instanton_family(rng: random.Random, kind: str, count: int) -> list[LieForm]:
    """Generic, pure large-summand and large-plus-small-7 samples, in rotation."""
    kind = normalize_kind(kind)
    n = 7 if kind == G2 else 8
    out = []
    for i in range(count):
        F = random_lie_form(rng, n)
        if i % 3:
            F = big_part(F, kind)
        if i % 3 == 2:
            g = GENERATORS[rng.randrange(3)]
            e = random_form(rng, n, 2, density=0.1)
            F = F + seven_part(LieForm.tensor(g, e), kind)
        out.append(F)
    return out


def instanton_checks(rep: SuiteReport, rng: random.Random, kind: str, count: int, prefix: str):
    kind = normalize_kind(kind)
    fam = _instanton_family(rng, kind, count)
    top = 3 if kind == G2 else 4
    sevens = [seven_part(F, kind) for F in fam]
    bad, inst = [], 0
    for F, a7 in zip(fam, sevens):
        flag = is_instanton(F, kind)
        inst += flag
        if flag != (not a7):
            bad.append(F)
    big = "14" if kind == G2 else "21"
    rep.add(f"{prefix}/instanton-equivalence", not bad, "instanton(F)", f"pi_7(F) = 0",
            f"{count} Lie-valued 2-forms, {inst} instantons" if not bad else f"counterexample {bad[0]}",
            f"Eq 1.1: *F_A+*Q^F_A=0 iff F in Lambda^2_{big}")
    bad = []
    for F, a7 in zip(fam, sevens):
        if instanton_residual(F, kind) != lie_star(a7).scale(top):
            bad.append(F)
    rep.add(f"{prefix}/residual-on-7", not bad, "*F + *Q^F", f"{top} *pi_7(F)",
            f"{count} samples" if not bad else f"counterexample {bad[0]}", "")
    n = 7 if kind == G2 else 8
    rep.add(f"{prefix}/zero-is-instanton", is_instanton(LieForm.zero(n), kind), "instanton(0)", "true", "", "")


def connection_checks(rep: SuiteReport, rng: random.Random, n: int, count: int, prefix: str):
    bad_b, bad_cw, commutators = [], [], 0
    for _ in range(count):
        conn = random_connection(rng, n)
        F = curvature(conn)
        if mat_wedge(conn.A, conn.A):
            commutators += 1
        if covariant_d(conn, F):
            bad_b.append(conn)
        if poly_d(chern_weil_form(conn)):
            bad_cw.append(conn)
    rep.add(f"{prefix}/bianchi", not bad_b, "dF + A^F - F^A", "0",
            f"{count} polynomial connections of coefficient degree <= 2 on R^{n}, {commutators} non-abelian",
            "all connections satisfy the Bianchi identity d_A F_A = 0")
    rep.add(f"{prefix}/chern-weil", not bad_cw, "d tr(F^F)", "0", f"{count} connections on R^{n}",
            "Cor C2: dtr(F_A^F_A)=tr(d_A(F_A^F_A))=0")


def _energy_check(rep: SuiteReport, cid: str, fam, sides, lhs_text: str, rhs_text: str, anchor: str,
                  detail: str):
    bad = None
    for a in fam:
        lhs, rhs = sides(a)
        if lhs != rhs:
            bad = (a, lhs, rhs)
            break
    rep.add(cid, bad is None, lhs_text, rhs_text,
            detail if bad is None else f"counterexample {bad[0]}: {bad[1]} vs {bad[2]}", anchor)


def gauge_suite(kind: str, config: GaugeConfig | None = None) -> SuiteReport:
    """Instanton, Bianchi/Chern-Weil and energy checks for one structure.

    Only pointwise inputs are certified; the integration arguments that turn
    them into vanishing theorems are outside the scope of these checks.
    """
    cfg = config or GaugeConfig()
    kind = normalize_kind(kind)
    name = {G2: "gauge-g2", SPIN7: "gauge-spin7", CY3: "gauge-kahler"}[kind]
    rep = SuiteReport(name, seed=cfg.seed)
    rng = random.Random(f"{name}:{cfg.seed}")
    rep.add("su2/structure", all(is_anti_hermitian(g) for g in GENERATORS)
            and structure_constants()[(0, 1)] == [0, 0, -2], "[g1,g2]", "-2 g3",
            "g_k = i sigma_k, -tr(g_k g_l) = 2 delta_kl", "")
    if kind == G2:
        instanton_checks(rep, rng, G2, cfg.instanton_samples, "g2")
        connection_checks(rep, rng, 7, cfg.connections, "r7")
        fam = [random_lie_form(rng, 7) for _ in range(cfg.samples)]
        fam += [big_part(a, G2) for a in fam[: cfg.samples // 4]]
        _energy_check(rep, "g2/energy", fam, g2_energy_sides, "-tr(a^a)^phi", "(2|a7|^2-|a14|^2) vol",
                      "Lemma 3.2: a^phi=2*a7-*a14; YM(A):=int tr(F_A^F_A)^w",
                      f"{len(fam)} random Lie-valued 2-forms")
        negdef = all(lie_norm_sq(b) > 0 and g2_energy_sides(b)[1].coeff((1 << 7) - 1) < 0
                     for b in fam[cfg.samples:] if b)
        rep.add("g2/energy-negative-on-14", negdef, "-tr(a^a)^phi on Lambda^2_14", "-|a|^2 vol < 0",
                "instanton inputs give a negative-definite pairing", "")
    elif kind == SPIN7:
        instanton_checks(rep, rng, SPIN7, cfg.instanton_samples, "spin7")
        connection_checks(rep, rng, 8, cfg.connections, "r8")
        fam = [random_lie_form(rng, 8, density=0.25) for _ in range(cfg.samples)]
        _energy_check(rep, "spin7/energy", fam, spin7_energy_sides, "-tr(a^(a^Omega))",
                      "(3|a7|^2-|a21|^2) vol", "Lemma 3.4: a^Omega=3*a7-*a21",
                      f"{len(fam)} random Lie-valued 2-forms; invented analogue of the G2 pairing")
    else:
        fam = [random_lie_form(rng, 6, density=0.5) for _ in range(cfg.samples)]
        fam += [random_lie_form(rng, 6, density=0.5, complex_coeffs=True) for _ in range(cfg.samples // 4)]
        _energy_check(rep, "kahler/energy", fam, kahler_energy_sides, "-tr(a^*a)",
                      "tr(a^a)^w + 2|a20+a02|^2 vol + 3|a0 w|^2 vol",
                      "Lemma L5: -tr(a^*a)=tr(a^a)^w^(n-2)/(n-2)!+2|a20+a02|w^n/n!+n|a0w|^2w^n/n!",
                      f"{len(fam)} samples over Q(i); squared norms on both middle terms (n = 3)")
        omega = canonical_structure(CY3)["omega"]
        g = GENERATORS[0]
        s = kahler_split(LieForm.tensor(g, omega))
        rep.add("kahler/trace-example", s.a0 == g and not s.a20 and not s.a02 and not s.a11_0,
                "split(g omega)", "a0 = g", "pure trace part", "")
        connection_checks(rep, rng, 6, cfg.connections, "r6")
    return rep
