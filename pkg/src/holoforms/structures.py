"""Flat-model special holonomy structures and their 2-form splittings.

The G2 3-form is the standard one (0-based axes)

    phi = e012 + e034 + e056 + e135 - e146 - e236 - e245

The Spin(7) 4-form lives on R^8 with the extra axis appended as index 7,
``Omega = phi ^ e7 + *phi``; with the increasing orientation this is the
self-dual choice (``e7 ^ phi + *phi`` is anti-self-dual).  The Calabi-Yau
data on R^6 = C^3 pair axes (0,1), (2,3), (4,5) into complex coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .exterior import (
    ConstForm,
    adjoint_wedge,
    axes_of,
    basis_forms,
    hodge_star,
    inner,
    norm_sq,
    operator_matrix,
    popcount,
    random_form,
    substitute,
    top_coefficient,
    wedge,
)
from .parsing import format_form, parse_form
from .report import SuiteReport
from .scalars import QI, Scalar, div, format_scalar

G2_PHI = "e012 + e034 + e056 + e135 - e146 - e236 - e245"

G2, SPIN7, CY3 = "G2", "Spin7", "CY3"
_KINDS = {"g2": G2, "spin7": SPIN7, "cy3": CY3}


class DegreeError(ValueError):
    pass


class NotInSubspace(ValueError):
    pass


@dataclass(frozen=True)
class StructurePreset:
    kind: str
    n: int
    forms: dict = field(hash=False)

    @property
    def form(self) -> ConstForm:
        """The defining parallel form (phi, Omega or the Kaehler form)."""
        return self.forms[{G2: "phi", SPIN7: "Omega", CY3: "omega"}[self.kind]]

    def __getitem__(self, name: str) -> ConstForm:
        return self.forms[name]


def normalize_kind(kind: str) -> str:
    try:
        return _KINDS[kind.lower().replace("(", "").replace(")", "")]
    except KeyError:
        raise ValueError(f"unknown structure {kind!r}; expected g2, spin7 or cy3") from None


@lru_cache(maxsize=None)
def canonical_structure(kind: str) -> StructurePreset:
    kind = normalize_kind(kind)
    if kind == G2:
        phi = parse_form(G2_PHI, 7)
        return StructurePreset(G2, 7, {"phi": phi, "psi": hodge_star(phi)})
    if kind == SPIN7:
        g2 = canonical_structure(G2)
        phi = ConstForm(8, g2["phi"].terms)
        psi = ConstForm(8, g2["psi"].terms)
        e7 = ConstForm(8, {1 << 7: 1})
        omega = wedge(phi, e7) + psi
        return StructurePreset(SPIN7, 8, {"Omega": omega, "phi": phi, "psi": psi, "dt": e7})
    omega = parse_form("e01 + e23 + e45", 6)
    dz = complex_coframe()[:3]
    vol = wedge(wedge(dz[0], dz[1]), dz[2])
    re = vol.map_coeffs(lambda c: c.re if isinstance(c, QI) else c)
    im = vol.map_coeffs(lambda c: c.im if isinstance(c, QI) else 0)
    return StructurePreset(CY3, 6, {"omega": omega, "Omega30": vol, "ReOmega": re, "ImOmega": im})


# ---------------------------------------------------------------- G2 / Spin(7)

_EIGEN = {G2: (2, -1, 14), SPIN7: (3, -1, 21)}


@dataclass(frozen=True)
class TwoFormSplit:
    """Components of a 2-form; ``labels`` name the parts in order."""

    labels: tuple[str, ...]
    parts: tuple[ConstForm, ...]
    trace: Scalar | None = None  # alpha^0 for the Kaehler splitting

    def __getitem__(self, label: str) -> ConstForm:
        return self.parts[self.labels.index(label)]

    def total(self) -> ConstForm:
        out = ConstForm.zero(self.parts[0].n)
        for p in self.parts:
            out = out + p
        return out


def two_form_operator(preset: StructurePreset):
    """``alpha -> *(alpha ^ form)`` on 2-forms."""
    form = preset.form
    return lambda a: hodge_star(wedge(a, form))


def _require_two_form(alpha: ConstForm, n: int):
    if alpha.n != n:
        raise DegreeError(f"expected a form on R^{n}, got R^{alpha.n}")
    if alpha and alpha.degrees() != {2}:
        raise DegreeError(f"expected a 2-form, got degrees {sorted(alpha.degrees())}")


def split2(alpha: ConstForm, preset: StructurePreset | str) -> TwoFormSplit:
    """Irreducible splitting of a 2-form.

    G2: ``a7 = (a + *(a ^ phi)) / 3``; Spin(7): ``a7 = (a + *(a ^ Omega)) / 4``;
    the other summand is the remainder.  CY3 delegates to
    :func:`type_decompose_c3`.
    """
    if isinstance(preset, str):
        preset = canonical_structure(preset)
    if preset.kind == CY3:
        return type_decompose_c3(alpha)
    _require_two_form(alpha, preset.n)
    top, _, big = _EIGEN[preset.kind]
    a7 = (alpha + two_form_operator(preset)(alpha)) * Fraction(1, top + 1)
    return TwoFormSplit(("7", str(big)), (a7, alpha - a7))


def eigen_matrix(preset: StructurePreset):
    return operator_matrix(two_form_operator(preset), preset.n, 2, 2)


def projector_matrices(preset: StructurePreset):
    """Exact matrices of the projections onto the 7- and large summands."""
    m = eigen_matrix(preset)
    top = _EIGEN[preset.kind][0]
    size = len(m)
    eye = linalg.identity(size)
    p7 = [[div(eye[i][j] + m[i][j], top + 1) for j in range(size)] for i in range(size)]
    prest = [[eye[i][j] - p7[i][j] for j in range(size)] for i in range(size)]
    return p7, prest


def spectrum_check(preset: StructurePreset) -> dict:
    """Characteristic polynomial of ``*(. ^ form)`` against the expected factorization."""
    top, low, big = _EIGEN[preset.kind]
    m = eigen_matrix(preset)
    cp = linalg.charpoly(m)
    expected = linalg.poly_mul(linalg.poly_pow([-top, 1], 7), linalg.poly_pow([-low, 1], big))
    size = len(m)
    eye = linalg.identity(size)
    shift = lambda lam: [[m[i][j] - lam * eye[i][j] for j in range(size)] for i in range(size)]
    mult_top = size - linalg.rank(shift(top))
    mult_low = size - linalg.rank(shift(low))
    return {
        "charpoly": cp,
        "expected": expected,
        "factored": linalg.format_factored({top: 7, low: big}),
        "matches": cp == expected,
        "eigenspace_dims": {top: mult_top, low: mult_low},
    }


# ---------------------------------------------------------------- identity suites


def default_samples(n: int, rng: random.Random, count: int = 100) -> dict[int, list[ConstForm]]:
    """Basis forms plus ``count`` random rational forms in degrees 0, 1, 2."""
    out = {}
    for p in (0, 1, 2):
        forms = list(basis_forms(n, p))
        forms += [random_form(rng, n, p) for _ in range(count)]
        out[p] = forms
    return out


def _first_failure(pairs, predicate):
    for item in pairs:
        if not predicate(*item):
            return item
    return None


def _identity_suite(preset: StructurePreset, samples, name: str, consts: dict, anchor: str) -> SuiteReport:
    """Shared engine for the G2 and Spin(7) pointwise identity suites."""
    n = preset.n
    form = preset.form
    vol = ConstForm.volume(n)
    star = hodge_star
    report = SuiteReport(name)
    by_deg: dict[int, list[ConstForm]] = {0: [], 1: [], 2: []}
    for s in (samples.values() if isinstance(samples, dict) else [samples]):
        for f in s:
            if f.n != n:
                raise DegreeError(f"sample on R^{f.n}, expected R^{n}")
            for p, comp in f.grade_components().items():
                if p in by_deg:
                    by_deg[p].append(comp)
    fsym = consts["symbol"]

    def pairs(forms):
        # all pairs among the first 12, then consecutive pairs
        head = forms[:12]
        out = [(a, b) for a in head for b in head]
        out += list(zip(forms, forms[1:] + forms[:1]))
        return out

    # degree 0
    scal = [f.coeff(0) for f in by_deg[0]] or [1]
    p0 = pairs([ConstForm.scalar(n, s) for s in scal])
    _constant_check(
        report, "deg0-pairing", p0,
        lambda a, b: wedge(wedge(a, form), star(wedge(b, form))),
        lambda a, b: wedge(wedge(a, b), vol),
        consts["deg0"], f"(a^{fsym})^*(b^{fsym})", "a b *1",
        f"{anchor}: (a^{fsym})^*(b^{fsym})={consts['deg0']}ab*1",
    )
    # degree 1
    ones = by_deg[1]
    _constant_check(
        report, "deg1-contraction", [(a,) for a in ones],
        lambda a: wedge(star(wedge(a, form)), form),
        lambda a: star(a),
        consts["deg1"], f"*(a^{fsym})^{fsym}", "*a",
        f"{anchor}: *(a^{fsym})^{fsym}={consts['deg1']}*a",
    )
    _constant_check(
        report, "deg1-pairing", pairs(ones),
        lambda a, b: wedge(star(wedge(a, form)), wedge(b, form)),
        lambda a, b: wedge(star(a), b),
        consts["deg1_pair"], f"*(a^{fsym})^(b^{fsym})", "*a^b",
        f"{anchor}: *(a^{fsym})^(b^{fsym})={consts['deg1_pair']}*a^b",
    )
    # degree 2
    top, low, big = _EIGEN[preset.kind]
    twos = by_deg[2]

    def deg2(a):
        s = split2(a, preset)
        return wedge(a, form) == star(s["7"]) * top + star(s[str(big)]) * low

    bad = _first_failure([(a,) for a in twos], deg2)
    report.add(
        "deg2-splitting", bad is None,
        f"a^{fsym}", f"{top}*a7 - *a{big}", _detail(len(twos), bad),
        f"{anchor}: a^{fsym}={top}*a7-*a{big}",
    )

    def norms(a):
        s = split2(a, preset)
        return norm_sq(wedge(a, form)) == top * top * norm_sq(s["7"]) + norm_sq(s[str(big)])

    bad = _first_failure([(a,) for a in twos], norms)
    report.add(
        "deg2-norms", bad is None,
        f"|a^{fsym}|^2", f"{top * top}|a7|^2 + |a{big}|^2", _detail(len(twos), bad),
        f"{anchor} proof: norm relation",
    )

    def eigen(a):
        s = split2(a, preset)
        op = two_form_operator(preset)
        return op(s["7"]) == s["7"] * top and op(s[str(big)]) == s[str(big)] * low and \
            inner(s["7"], s[str(big)]) == 0

    bad = _first_failure([(a,) for a in twos], eigen)
    report.add(
        "deg2-eigen", bad is None,
        f"*(a7^{fsym}), *(a{big}^{fsym})", f"{top} a7, {low} a{big}", _detail(len(twos), bad),
        consts["eigen_anchor"],
    )
    return report


def proportionality(pairs, lhs, rhs) -> tuple[Scalar | None, tuple | None]:
    """Constant ``c`` with ``lhs(*x) == c * rhs(*x)`` for every ``x``.

    Returns ``(c, None)`` on success and ``(c, x)`` with the first
    counterexample otherwise; ``c`` is read off the first sample with a
    nonzero right side.
    """
    c = None
    for item in pairs:
        left, right = lhs(*item), rhs(*item)
        if c is None and right:
            m = next(iter(right.terms))
            c = div(left.coeff(m), right.coeff(m))
        if left != right * (0 if c is None else c):
            return c, item
    return c, None


def _constant_check(report, cid, items, lhs, rhs, printed, lhs_text, rhs_text, anchor):
    """Derive the constant of a proportionality identity and audit the printed one.

    Fails when the two sides are not proportional on the samples; records a
    derived-mismatch when they are, but with a constant other than ``printed``.
    """
    c, bad = proportionality(items, lhs, rhs)
    if bad is not None:
        report.add(cid, False, lhs_text, f"{printed} {rhs_text}", _detail(len(items), bad), anchor)
    elif c == printed:
        report.add(cid, True, lhs_text, f"{printed} {rhs_text}", _detail(len(items), None), anchor)
    else:
        report.mismatch(
            cid, lhs_text, f"{format_scalar(c)} {rhs_text}",
            f"exact on {len(items)} samples with derived constant {format_scalar(c)}; "
            f"printed constant {printed} does not hold",
            anchor,
        )


def _detail(count, bad):
    if bad is None:
        return f"exact on {count} samples"
    return "counterexample: " + ", ".join(format_form(x) for x in bad)


def identity_suite_g2(samples) -> SuiteReport:
    return _identity_suite(
        canonical_structure(G2), samples, "g2-identities",
        {"symbol": "phi", "deg0": 7, "deg1": -4, "deg1_pair": 4,
         "eigen_anchor": "G2 splitting: *(a^phi)=2a on L2_7, -a on L2_14"},
        "Lemma 3.2",
    )


def identity_suite_spin7(samples) -> SuiteReport:
    return _identity_suite(
        canonical_structure(SPIN7), samples, "spin7-identities",
        {"symbol": "Omega", "deg0": 14, "deg1": 4, "deg1_pair": 4,
         "eigen_anchor": "Spin(7) splitting: *(a^Omega)=3a on L2_7, -a on L2_21"},
        "Lemma 3.4",
    )


# ---------------------------------------------------------------- C^3 types


@lru_cache(maxsize=None)
def complex_coframe() -> tuple[ConstForm, ...]:
    """``(dz0, dz1, dz2, dzbar0, dzbar1, dzbar2)`` with ``dz_j = e_2j + i e_2j+1``."""
    out = []
    for sign in (1, -1):
        for j in range(3):
            out.append(ConstForm(6, {1 << (2 * j): 1, 1 << (2 * j + 1): QI(0, sign)}))
    return tuple(out)


@lru_cache(maxsize=None)
def _real_to_complex_images() -> list[ConstForm]:
    # e_2j = (dz_j + dzbar_j)/2, e_2j+1 = -i (dz_j - dzbar_j)/2 on complex axes 0..5
    imgs = []
    for j in range(3):
        imgs.append(ConstForm(6, {1 << j: Fraction(1, 2), 1 << (j + 3): Fraction(1, 2)}))
        imgs.append(ConstForm(6, {1 << j: QI(0, Fraction(-1, 2)), 1 << (j + 3): QI(0, Fraction(1, 2))}))
    return imgs


def to_complex_basis(a: ConstForm) -> ConstForm:
    """Rewrite a form on R^6 in the basis of wedges of dz's (axes 0-2) and dzbar's (axes 3-5)."""
    if a.n != 6:
        raise DegreeError(f"complex types need R^6, got R^{a.n}")
    return substitute(a, _real_to_complex_images())


def from_complex_basis(a: ConstForm) -> ConstForm:
    return substitute(a, list(complex_coframe()))


def complex_type(mask: int) -> tuple[int, int]:
    hol = popcount(mask & 0b000111)
    return hol, popcount(mask) - hol


def type_component(a: ConstForm, p: int, q: int) -> ConstForm:
    c = to_complex_basis(a)
    keep = ConstForm(6, {m: v for m, v in c.terms.items() if complex_type(m) == (p, q)})
    return from_complex_basis(keep)


def types_present(a: ConstForm) -> set[tuple[int, int]]:
    return {complex_type(m) for m in to_complex_basis(a).terms}


def lefschetz_lambda(alpha: ConstForm) -> ConstForm:
    """Adjoint of wedging with the Kaehler form."""
    return adjoint_wedge(canonical_structure(CY3).form, alpha)


def type_decompose_c3(alpha: ConstForm) -> TwoFormSplit:
    """``alpha = a20 + a02 + a0*omega + a11_0`` with ``a0 = Lambda(alpha)/3``."""
    if alpha.n != 6:
        raise DegreeError(f"type decomposition needs R^6, got R^{alpha.n}")
    _require_two_form(alpha, 6)
    omega = canonical_structure(CY3).form
    a20 = type_component(alpha, 2, 0)
    a02 = type_component(alpha, 0, 2)
    a11 = alpha - a20 - a02
    a0 = div(lefschetz_lambda(alpha).coeff(0), 3)
    trace = omega * a0
    return TwoFormSplit(("2,0", "0,2", "trace", "1,1_0"), (a20, a02, trace, a11 - trace), a0)


# ---------------------------------------------------------------- potentials


def seven_part_potential(alpha7: ConstForm) -> ConstForm:
    """1-form ``b = *(alpha7 ^ *phi) / 3`` with ``*(*phi ^ b) == alpha7``."""
    g2 = canonical_structure(G2)
    _require_two_form(alpha7, 7)
    rest = split2(alpha7, g2)["14"]
    if rest:
        raise NotInSubspace(
            f"input has a nonzero 14-dimensional part (squared norm {format_scalar(norm_sq(rest))})"
        )
    return hodge_star(wedge(alpha7, g2["psi"])) * Fraction(1, 3)


def structure_map_g2(beta: ConstForm) -> ConstForm:
    """``beta -> *(*phi ^ beta)`` on 1-forms."""
    return hodge_star(wedge(canonical_structure(G2)["psi"], beta))


def conj_star(a: ConstForm) -> ConstForm:
    """Conjugate-linear Hodge star ``a -> *conj(a)``; maps (p,q) to (3-p,3-q)."""
    return hodge_star(a.conjugate())


def volume_pairing_c3(beta: ConstForm) -> ConstForm:
    """``beta -> *(beta ^ Omega30)`` for a pure (0,p) form, with the conjugate-linear star."""
    if beta.n != 6:
        raise DegreeError(f"expected a form on R^6, got R^{beta.n}")
    if beta:
        types = types_present(beta)
        if len(types) != 1 or next(iter(types))[0] != 0 or next(iter(types))[1] not in (1, 2):
            raise NotInSubspace(f"input is not of pure type (0,1) or (0,2): types {sorted(types)}")
    return conj_star(wedge(beta, canonical_structure(CY3)["Omega30"]))


def volume_pairing_constant(p: int) -> Scalar:
    """The constant c_p with ``V(V(beta)) == c_p * beta`` on (0,p)-forms."""
    dzbar = complex_coframe()[3:]
    beta = dzbar[0] if p == 1 else wedge(dzbar[0], dzbar[1])
    out = volume_pairing_c3(volume_pairing_c3(beta))
    m = next(iter(beta.terms))
    c = div(out.coeff(m), beta.coeff(m))
    if out != beta * c:
        raise ArithmeticError("composite is not a multiple of the input")
    return c


# ---------------------------------------------------------------- eigen suite


def eigen_suite() -> SuiteReport:
    report = SuiteReport("eigen-decompositions")
    for kind, anchor in ((G2, "E6: L2 = L2_7 + L2_14"), (SPIN7, "E13: L2 = L2_7 + L2_21")):
        preset = canonical_structure(kind)
        res = spectrum_check(preset)
        top, low, big = _EIGEN[kind]
        report.add(
            f"{kind}/charpoly", res["matches"],
            "det(t - *(.^form))", res["factored"],
            "exact characteristic polynomial over Q", anchor,
        )
        dims = res["eigenspace_dims"]
        report.add(
            f"{kind}/eigenspace-dims", dims == {top: 7, low: big},
            "dim ker(M - l)", f"{top}:7, {low}:{big}",
            f"ranks give {dims[top]}, {dims[low]}", anchor,
        )
        p7, prest = projector_matrices(preset)
        zero = [[0] * len(p7) for _ in p7]
        idem = linalg.matmul(p7, p7) == p7 and linalg.matmul(prest, prest) == prest
        ortho = linalg.matmul(p7, prest) == zero and linalg.matmul(prest, p7) == zero
        symmetric = p7 == linalg.transpose(p7)
        report.add(
            f"{kind}/projectors", idem and ortho and symmetric,
            "P7^2, P7 P_rest, P7^T", "P7, 0, P7",
            "idempotent, complementary, orthogonal",
            "Lemma 3.9 proof: a7 = (a + *(a^phi))/3" if kind == G2 else anchor,
        )
    # adjoint of the Lefschetz-type maps is the transpose
    for kind in (G2, SPIN7, CY3):
        preset = canonical_structure(kind)
        form = preset.form
        k = form.degree
        ok = True
        for p in range(0, preset.n - k + 1):
            lmat = operator_matrix(lambda a: wedge(form, a), preset.n, p, p + k)
            amat = operator_matrix(lambda b: adjoint_wedge(form, b), preset.n, p + k, p)
            if amat != linalg.transpose(lmat):
                ok = False
                break
        report.add(
            f"{kind}/lambda-transpose", ok, "Lambda", "L^T",
            "all degrees", "Prop 2.5(ii): adjoint operator Lambda",
        )
    cy = canonical_structure(CY3)
    omega, vol30 = cy.form, cy["Omega30"]
    report.add(
        "CY3/compatibility",
        wedge(omega, vol30).is_zero() and wedge(wedge(omega, omega), omega) == ConstForm.volume(6) * 6,
        "omega^Omega30, omega^3", "0, 6 vol", "", "Lemma L5: omega^n/n! = vol",
    )
    for p in (1, 2):
        c = volume_pairing_constant(p)
        report.add(
            f"CY3/volume-pairing-c{p}", c != 0, f"V(V(b)) / b on (0,{p})", format_scalar(c),
            "derived constant for Omega30 = dz0^dz1^dz2 (|Omega30|^2 = 8)", "E12: b = *(a02 ^ Omega30)",
        )
    return report
