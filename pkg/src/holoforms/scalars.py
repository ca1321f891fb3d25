"""Exact scalars: rationals and Gaussian rationals.

Plain ``int`` and :class:`fractions.Fraction` are used for real values.  A
:class:`QI` is only produced when the imaginary part is nonzero, so real
computations never pay for complex bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "QI"]


def _make(re: Fraction, im: Fraction) -> Scalar:
    if im == 0:
        return re.numerator if re.denominator == 1 else re
    # both parts are already Fractions, so skip the converting constructor
    q = object.__new__(QI)
    q.re = re
    q.im = im
    return q


_F0 = Fraction(0)


class QI:
    """Gaussian rational ``re + im*i`` with exact parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _parts(x):
        if isinstance(x, QI):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return x, _F0
        if isinstance(x, Rational):
            return Fraction(x), _F0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b = self.re, self.im
        return _make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QI(*p) / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = QI(0, 1)


def conj(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, QI) else x


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, QI) else Fraction(x)


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, QI) else Fraction(0)


def is_real(x: Scalar) -> bool:
    return not isinstance(x, QI)


def normalize(x) -> Scalar:
    """Canonical representative: ``int`` when integral, ``QI`` only if complex."""
    if isinstance(x, QI):
        return _make(x.re, x.im)
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def div(x: Scalar, y: Scalar) -> Scalar:
    """Exact quotient; ``int / int`` never falls back to float."""
    if isinstance(x, int) and isinstance(y, int):
        return normalize(Fraction(x, y))
    if isinstance(y, int):
        y = Fraction(y)
    return normalize(x / y)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(x: Scalar) -> str:
    if isinstance(x, QI):
        if x.re == 0:
            if x.im == 1:
                return "i"
            if x.im == -1:
                return "-i"
            return f"{_frac_str(x.im)}i"
        sign = "+" if x.im > 0 else "-"
        return f"({_frac_str(x.re)}{sign}{_frac_str(abs(x.im))}i)"
    return _frac_str(Fraction(x))
