"""Sparse multivariate polynomials over Q and Q(i).

A monomial ``x0^a0 ... x(n-1)^a(n-1)`` is packed into one integer with
eight bits per variable, so multiplying monomials is integer addition.  Each
exponent is kept below 128; that leaves the top bit of every field free to
detect overflow with a single mask test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import Scalar, format_scalar, normalize

BITS = 8
FIELD = (1 << BITS) - 1
MAX_EXP = 127
_HIGH = int("".join(["10000000"] * 8), 2)


class ExponentOverflow(ArithmeticError):
    pass


def pack(exps: Iterable[int]) -> int:
    m = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= MAX_EXP:
            raise ExponentOverflow(f"exponent {e} outside 0..{MAX_EXP}")
        m |= e << (BITS * i)
    return m


def unpack(mono: int, n: int) -> tuple[int, ...]:
    return tuple((mono >> (BITS * i)) & FIELD for i in range(n))


def exponent(mono: int, i: int) -> int:
    return (mono >> (BITS * i)) & FIELD


def mono_mul(a: int, b: int) -> int:
    m = a + b
    if m & _HIGH:
        raise ExponentOverflow("monomial exponent exceeds 127")
    return m


def total_degree(mono: int) -> int:
    d = 0
    while mono:
        d += mono & FIELD
        mono >>= BITS
    return d


def monomials_up_to(n: int, degree: int) -> list[int]:
    """Packed monomials in ``n`` variables of total degree <= ``degree``, graded order."""
    out = [0]
    layer = [0]
    for _ in range(degree):
        nxt = []
        seen = set()
        for m in layer:
            # only raise variables at or after the last one used, to avoid repeats
            last = max((i for i in range(n) if exponent(m, i)), default=0)
            for i in range(last, n):
                mm = m + (1 << (BITS * i))
                if mm not in seen:
                    seen.add(mm)
                    nxt.append(mm)
        out += nxt
        layer = nxt
    return out


# ---------------------------------------------------------------- raw dict helpers
# These operate on ``{mono: coeff}`` dicts and are shared with the form layer.


def raw_add_into(out: dict, terms: Mapping[int, Scalar], factor: Scalar = 1):
    for m, c in terms.items():
        v = out.get(m, 0) + (c if factor == 1 else c * factor)
        if v:
            out[m] = v
        else:
            out.pop(m, None)


def raw_mul(a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> dict:
    out: dict[int, Scalar] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def raw_diff(a: Mapping[int, Scalar], i: int) -> dict:
    shift = BITS * i
    unit = 1 << shift
    out = {}
    for m, c in a.items():
        e = (m >> shift) & FIELD
        if e:
            out[m - unit] = c * e
    return out


def raw_clean(a: Mapping[int, Scalar]) -> dict:
    out = {}
    for m, c in a.items():
        c = normalize(c)
        if c:
            out[m] = c
    return out


# ---------------------------------------------------------------- PolyScalar


class PolyScalar:
    """Polynomial in ``n`` variables with exact coefficients.

    ``terms`` maps packed monomials to nonzero scalars.  Instances are
    treated as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, Scalar] | None = None):
        self.n = n
        self.terms = raw_clean(terms) if terms else {}

    @classmethod
    def _wrap(cls, n: int, terms: dict) -> "PolyScalar":
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def constant(cls, n: int, c: Scalar) -> "PolyScalar":
        return cls(n, {0: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "PolyScalar":
        if not 0 <= i < n:
            raise ValueError(f"variable x{i} outside R^{n}")
        return cls(n, {1 << (BITS * i): 1})

    @classmethod
    def monomial(cls, n: int, exps: Iterable[int], coeff: Scalar = 1) -> "PolyScalar":
        exps = tuple(exps)
        if len(exps) != n:
            raise ValueError(f"need {n} exponents, got {len(exps)}")
        return cls(n, {pack(exps): coeff})

    @classmethod
    def from_exponents(cls, n: int, terms: Mapping[tuple, Scalar]) -> "PolyScalar":
        return cls(n, {pack(e): c for e, c in terms.items()})

    def exponent_terms(self) -> dict[tuple[int, ...], Scalar]:
        return {unpack(m, self.n): c for m, c in self.terms.items()}

    def _coerce(self, other) -> "PolyScalar | None":
        if isinstance(other, PolyScalar):
            if other.n != self.n:
                raise ValueError(f"polynomials in {self.n} and {other.n} variables")
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "re"):
            return PolyScalar(self.n, {0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        raw_add_into(out, o.terms)
        return PolyScalar._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar._wrap(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyScalar._wrap(self.n, raw_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyScalar.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, PolyScalar) else other
        if o is None:
            return NotImplemented
        return self.n == o.n and self.terms == o.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def diff(self, i: int) -> "PolyScalar":
        """Partial derivative in ``x_i``."""
        return PolyScalar._wrap(self.n, raw_diff(self.terms, i))

    def degree(self) -> int:
        return max((total_degree(m) for m in self.terms), default=0)

    def is_constant(self) -> bool:
        return all(m == 0 for m in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get(0, 0)

    def evaluate(self, point: Iterable[Scalar]) -> Scalar:
        point = list(point)
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(unpack(m, self.n)):
                if e:
                    v = v * point[i] ** e
            total = total + v
        return normalize(total)

    def __repr__(self):
        return f"PolyScalar({self.n}, {format_poly(self)!r})"


def _mono_text(mono: int, n: int) -> str:
    parts = []
    for i, e in enumerate(unpack(mono, n)):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: PolyScalar) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for m in sorted(p.terms, key=lambda m: (total_degree(m), unpack(m, p.n)[::-1])):
        c = p.terms[m]
        mono = _mono_text(m, p.n)
        cs = format_scalar(c)
        if mono and c == 1:
            body = mono
        elif mono and c == -1:
            body = "-" + mono
        elif mono:
            body = f"{cs}*{mono}"
        else:
            body = cs
        pieces.append(body)
    return " + ".join(pieces).replace("+ -", "- ")


def random_poly(rng: random.Random, n: int, max_degree: int = 2, terms: int = 2,
                max_num: int = 4, max_den: int = 3) -> PolyScalar:
    monos = monomials_up_to(n, max_degree)
    out = {}
    for _ in range(terms):
        m = rng.choice(monos)
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, max_num), rng.randint(1, max_den))
        out[m] = out.get(m, 0) + c
    return PolyScalar(n, out)
