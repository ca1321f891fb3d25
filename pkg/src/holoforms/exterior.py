"""Constant-coefficient exterior algebra on R^n, n <= 8.

A basis monomial ``e^{i1...ip}`` is stored as the bitmask with bits
``i1..ip`` set.  Signs of products come from counting transpositions, so the
whole algebra (dimension 2^n <= 256) is cheap to enumerate exhaustively.

Conventions: Euclidean metric, orientation ``e^0 ^ ... ^ e^(n-1)``, and
``*e_I = sign(I, I^c) e_{I^c}`` so that ``a ^ *b = <a, b> vol``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .scalars import Scalar, conj, normalize

MAX_DIM = 8


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------- blades


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def axes_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(axes: Iterable[int]) -> int:
    m = 0
    for a in axes:
        m |= 1 << a
    return m


def _compute_sign(a: int, b: int) -> int:
    # parity of pairs (i in a, j in b) with i > j
    if a & b:
        return 0
    count = 0
    for j in axes_of(b):
        count += popcount(a >> (j + 1))
    return -1 if count & 1 else 1


_SIGN = [[_compute_sign(a, b) for b in range(1 << MAX_DIM)] for a in range(1 << MAX_DIM)]


def wedge_sign(a: int, b: int) -> int:
    """Sign of ``e_a ^ e_b`` relative to ``e_(a|b)``; zero when axes repeat."""
    return _SIGN[a][b]


# parity of the number of axes of a below axis i
_BELOW = [[popcount(m & ((1 << i) - 1)) & 1 for i in range(MAX_DIM)] for m in range(1 << MAX_DIM)]


def below_parity(mask: int, axis: int) -> int:
    return _BELOW[mask][axis]


@dataclass(frozen=True, order=True)
class Blade:
    """Increasing axis subset of {0..n-1}."""

    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension {self.n} outside 0..{MAX_DIM}")
        if self.mask >> self.n:
            raise ValueError(f"blade {self.axes} does not fit in R^{self.n}")

    @classmethod
    def from_axes(cls, n: int, axes: Iterable[int]) -> "Blade":
        axes = list(axes)
        if len(set(axes)) != len(axes):
            raise ValueError(f"repeated axis in {axes}")
        return cls(n, mask_of(axes))

    @property
    def axes(self) -> tuple[int, ...]:
        return axes_of(self.mask)

    @property
    def degree(self) -> int:
        return popcount(self.mask)


def blades_of_degree(n: int, p: int) -> list[int]:
    """Masks of all degree-p blades in lexicographic axis order."""
    return [mask_of(c) for c in combinations(range(n), p)]


# ---------------------------------------------------------------- forms


class ConstForm:
    """Sparse exact element of the exterior algebra of R^n.

    ``terms`` maps blade masks to nonzero coefficients.  Instances are treated
    as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, Scalar] | None = None):
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"dimension {n} outside 0..{MAX_DIM}")
        self.n = n
        clean = {}
        if terms:
            limit = 1 << n
            for m, c in terms.items():
                if m < 0 or m >= limit:
                    raise ValueError(f"blade {axes_of(m)} does not fit in R^{n}")
                c = normalize(c)
                if c:
                    clean[m] = c
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, n: int) -> "ConstForm":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, c: Scalar = 1) -> "ConstForm":
        return cls(n, {0: c})

    @classmethod
    def blade(cls, n: int, *axes: int, coeff: Scalar = 1) -> "ConstForm":
        """``coeff * e^{axes}`` with the axes wedged in the order given."""
        out = cls.scalar(n, coeff)
        for a in axes:
            if not 0 <= a < n:
                raise ValueError(f"axis {a} outside R^{n}")
            out = wedge(out, cls(n, {1 << a: 1}))
        return out

    @classmethod
    def volume(cls, n: int) -> "ConstForm":
        return cls(n, {(1 << n) - 1: 1})

    # algebra
    def _check(self, other: "ConstForm"):
        if not isinstance(other, ConstForm):
            raise TypeError(f"expected ConstForm, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"forms live on R^{self.n} and R^{other.n}")

    def __add__(self, other):
        if not isinstance(other, ConstForm):
            return NotImplemented
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return ConstForm(self.n, t)

    def __sub__(self, other):
        if not isinstance(other, ConstForm):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ConstForm(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, ConstForm):
            return NotImplemented
        return ConstForm(self.n, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ConstForm):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mask: int) -> Scalar:
        return self.terms.get(mask, 0)

    def degrees(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous form (0 for the zero form)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"form is not homogeneous (degrees {sorted(ds)})")
        return ds.pop() if ds else 0

    def grade(self, p: int) -> "ConstForm":
        return ConstForm(self.n, {m: c for m, c in self.terms.items() if popcount(m) == p})

    def grade_components(self) -> dict[int, "ConstForm"]:
        return {p: self.grade(p) for p in sorted(self.degrees())}

    def map_coeffs(self, f: Callable[[Scalar], Scalar]) -> "ConstForm":
        return ConstForm(self.n, {m: f(c) for m, c in self.terms.items()})

    def conjugate(self) -> "ConstForm":
        return self.map_coeffs(conj)

    def is_real(self) -> bool:
        return all(c == conj(c) for c in self.terms.values())

    def __repr__(self):
        from .parsing import format_form

        return f"ConstForm({self.n}, {format_form(self)!r})"


def wedge(a: ConstForm, b: ConstForm) -> ConstForm:
    a._check(b)
    out: dict[int, Scalar] = {}
    for ma, ca in a.terms.items():
        row = _SIGN[ma]
        for mb, cb in b.terms.items():
            s = row[mb]
            if s:
                m = ma | mb
                out[m] = out.get(m, 0) + (ca * cb if s > 0 else -(ca * cb))
    return ConstForm(a.n, out)


def wedge_all(forms: Iterable[ConstForm], n: int) -> ConstForm:
    out = ConstForm.scalar(n)
    for f in forms:
        out = wedge(out, f)
    return out


def star_mask(n: int, mask: int) -> tuple[int, int]:
    """``*e_mask = sign * e_comp``; returns ``(comp, sign)``."""
    comp = ((1 << n) - 1) ^ mask
    return comp, _SIGN[mask][comp]


def hodge_star(a: ConstForm) -> ConstForm:
    n = a.n
    full = (1 << n) - 1
    out = {}
    for m, c in a.terms.items():
        comp = full ^ m
        out[comp] = c if _SIGN[m][comp] > 0 else -c
    return ConstForm(n, out)


def inner(a: ConstForm, b: ConstForm) -> Scalar:
    """Bilinear pointwise pairing: sum of products of matching coefficients."""
    a._check(b)
    small, large = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    return normalize(sum((c * large.terms[m] for m, c in small.terms.items() if m in large.terms), 0))


def hermitian_inner(a: ConstForm, b: ConstForm) -> Scalar:
    """Sesquilinear pairing, conjugate-linear in ``b``."""
    return inner(a, b.conjugate())


def norm_sq(a: ConstForm) -> Scalar:
    """Squared hermitian norm; equals ``inner(a, a)`` for real forms."""
    return hermitian_inner(a, a)


def top_coefficient(a: ConstForm) -> Scalar:
    """Coefficient of the volume blade."""
    return a.coeff((1 << a.n) - 1)


# ---------------------------------------------------------------- derivations


@dataclass(frozen=True)
class DerivationSpec:
    """Action of a derivation on the basis 1-forms.

    ``images[i]`` is the image of ``e^i``; all images share one degree.  The
    parity is even or odd (0 or 1); for a degree-shifting derivation it equals
    the degree shift mod 2.
    """

    n: int
    images: tuple[ConstForm, ...]
    parity: int

    def __post_init__(self):
        if len(self.images) != self.n:
            raise ValueError(f"need {self.n} images, got {len(self.images)}")
        degs = set()
        for img in self.images:
            if img.n != self.n:
                raise DimensionMismatch("derivation image on a different R^n")
            degs |= img.degrees()
        if len(degs) > 1:
            raise ValueError(f"non-uniform target degrees {sorted(degs)}")
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 (even) or 1 (odd)")

    @property
    def target_degree(self) -> int | None:
        for img in self.images:
            if img:
                return img.degree
        return None

    @classmethod
    def from_map(cls, n: int, f: Callable[[ConstForm], ConstForm], parity: int | None = None):
        images = tuple(f(ConstForm(n, {1 << i: 1})) for i in range(n))
        if parity is None:
            degs = set()
            for img in images:
                degs |= img.degrees()
            parity = ((degs.pop() if degs else 1) - 1) % 2
        return cls(n, images, parity)


def derivation_extend(spec: DerivationSpec, a: ConstForm) -> ConstForm:
    """Unique Leibniz extension of ``spec`` evaluated on ``a``.

    On a blade ``e^{i1} ^ ... ^ e^{ip}`` the derivation hits each factor in
    turn, picking up ``(-1)^(parity * k)`` after passing k 1-forms.
    """
    if a.n != spec.n:
        raise DimensionMismatch(f"derivation on R^{spec.n}, form on R^{a.n}")
    return ConstForm(a.n, _derivation_on_blades(spec, a.terms))


def _derivation_on_blades(spec: DerivationSpec, terms: Mapping[int, Scalar]) -> dict[int, Scalar]:
    n = spec.n
    out: dict[int, Scalar] = {}
    odd = spec.parity == 1
    for mask, c in terms.items():
        axes = axes_of(mask)
        for k, ax in enumerate(axes):
            sign = -1 if (odd and k % 2) else 1
            left = mask_of(axes[:k])
            right = mask_of(axes[k + 1:])
            for im, ic in spec.images[ax].terms.items():
                s1 = _SIGN[left][im]
                if not s1:
                    continue
                s2 = _SIGN[left | im][right]
                if not s2:
                    continue
                m = left | im | right
                v = c * ic
                out[m] = out.get(m, 0) + (v if sign * s1 * s2 > 0 else -v)
    return out


@lru_cache(maxsize=None)
def basis_forms(n: int, p: int) -> tuple[ConstForm, ...]:
    return tuple(ConstForm(n, {m: 1}) for m in blades_of_degree(n, p))


def operator_matrix(f: Callable[[ConstForm], ConstForm], n: int, p: int, q: int) -> list[list[Scalar]]:
    """Matrix (rows indexed by degree-q blades) of a linear map Lambda^p -> Lambda^q."""
    src = blades_of_degree(n, p)
    dst = blades_of_degree(n, q)
    cols = [f(ConstForm(n, {m: 1})) for m in src]
    return [[col.coeff(d) for col in cols] for d in dst]


def from_vector(n: int, p: int, vec: Iterable[Scalar]) -> ConstForm:
    return ConstForm(n, dict(zip(blades_of_degree(n, p), vec)))


def to_vector(a: ConstForm, p: int) -> list[Scalar]:
    return [a.coeff(m) for m in blades_of_degree(a.n, p)]


def random_form(rng: random.Random, n: int, degree: int, density: float = 0.5,
                max_num: int = 5, max_den: int = 4, complex_coeffs: bool = False) -> ConstForm:
    """Random sparse rational form of one degree (at least one term when possible)."""
    from .scalars import QI

    masks = blades_of_degree(n, degree)
    terms = {}
    for m in masks:
        if rng.random() < density:
            c = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
            if complex_coeffs:
                c = QI(c, Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)))
            terms[m] = c
    if not any(terms.values()) and masks:
        terms[rng.choice(masks)] = rng.choice([-2, -1, 1, 2, 3])
    return ConstForm(n, terms)


def adjoint_wedge(omega: ConstForm, b: ConstForm) -> ConstForm:
    """Pointwise metric adjoint of ``a -> omega ^ a`` applied to ``b``.

    Satisfies ``inner(omega ^ a, b) == inner(a, adjoint_wedge(omega, b))``.
    """
    omega._check(b)
    out: dict[int, Scalar] = {}
    for mb, cb in b.terms.items():
        for mw, cw in omega.terms.items():
            if mw & ~mb:
                continue
            rest = mb ^ mw
            s = _SIGN[mw][rest]
            v = cw * cb
            out[rest] = out.get(rest, 0) + (v if s > 0 else -v)
    return ConstForm(b.n, out)


def substitute(a: ConstForm, images: list[ConstForm]) -> ConstForm:
    """Algebra map sending ``e^i`` to ``images[i]`` (possibly on another R^m)."""
    m = images[0].n
    out = ConstForm.zero(m)
    cache: dict[int, ConstForm] = {0: ConstForm.scalar(m)}
    for mask, c in a.terms.items():
        if mask not in cache:
            prod = ConstForm.scalar(m)
            for ax in axes_of(mask):
                prod = wedge(prod, images[ax])
            cache[mask] = prod
        out = out + cache[mask] * c
    return out
