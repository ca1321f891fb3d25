"""Text syntax for constant forms.

Grammar::

    form  := term (('+' | '-') term)*      |  '0'
    term  := [coeff ['*']] blade  |  coeff
    coeff := rational ['i'] | 'i' | '(' rational ('+'|'-') rational 'i' ')'
    blade := 'e' digit+

Digits of a blade are single axis labels, 0-based or 1-based depending on
``base``.  A bare coefficient is a multiple of the constant form 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exterior import ConstForm, axes_of, popcount
from .scalars import QI, Scalar, format_scalar


class FormSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class AxisRangeError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<blade>e\d+)"
    r"|(?P<i>i)"
    r"|(?P<op>[-+*()])"
    r")"
)


@dataclass(frozen=True)
class Term:
    coeff: Scalar
    labels: tuple[int, ...] | None  # None for a scalar term
    position: int


@dataclass(frozen=True)
class FormExpr:
    """Parsed, not yet evaluated, form: a signed list of terms."""

    terms: tuple[Term, ...]

    def evaluate(self, n: int, base: int = 0) -> ConstForm:
        out = ConstForm.zero(n)
        for t in self.terms:
            if t.labels is None:
                out = out + ConstForm.scalar(n, t.coeff)
                continue
            axes = []
            for lab in t.labels:
                ax = lab - base
                if not 0 <= ax < n:
                    lo, hi = base, n - 1 + base
                    raise AxisRangeError(
                        f"axis label {lab} at position {t.position} outside {lo}..{hi} for n={n}"
                    )
                axes.append(ax)
            if len(set(axes)) != len(axes):
                continue  # repeated axis: the blade vanishes
            out = out + ConstForm.blade(n, *axes, coeff=t.coeff)
        return out


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg):
        raise FormSyntaxError(msg, self.peek()[2], self.text)

    def parse(self) -> FormExpr:
        if not self.toks:
            self.error("empty form")
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] is not None:
            kind, val, _ = self.take()
            if kind != "op" or val not in "+-":
                self.i -= 1
                self.error("expected '+' or '-'")
            terms.append(self.term(-1 if val == "-" else 1))
        return FormExpr(tuple(terms))

    def rational(self):
        kind, val, pos = self.take()
        if kind != "num":
            self.i -= 1
            self.error("expected a number")
        num, _, den = val.partition("/")
        if den and int(den) == 0:
            raise FormSyntaxError("zero denominator", pos, self.text)
        return Fraction(int(num), int(den) if den else 1)

    def coeff(self):
        kind, val, pos = self.peek()
        if kind == "i":
            self.take()
            return QI(0, 1)
        if kind == "num":
            c = self.rational()
            if self.peek()[0] == "i":
                self.take()
                return QI(0, c)
            return c
        if kind == "op" and val == "(":
            self.take()
            sign = 1
            if self.peek()[1] in ("+", "-"):
                sign = -1 if self.take()[1] == "-" else 1
            re_part = sign * self.rational()
            k2, v2, _ = self.take()
            if k2 != "op" or v2 not in "+-":
                self.i -= 1
                self.error("expected '+' or '-' inside complex coefficient")
            if self.peek()[0] == "i":
                self.take()
                im_part = Fraction(1)
            else:
                im_part = self.rational()
                if self.take()[0] != "i":
                    self.i -= 1
                    self.error("expected 'i'")
            if v2 == "-":
                im_part = -im_part
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return QI(re_part, im_part)
        return None

    def term(self, sign) -> Term:
        pos = self.peek()[2]
        c = self.coeff()
        if c is not None and self.peek()[1] == "*":
            self.take()
            if self.peek()[0] != "blade":
                self.error("expected a blade after '*'")
        kind, val, _ = self.peek()
        if kind == "blade":
            self.take()
            labels = tuple(int(ch) for ch in val[1:])
            return Term(sign * (1 if c is None else c), labels, pos)
        if c is None:
            self.error("expected a coefficient or a blade")
        return Term(sign * c, None, pos)


def parse_expr(text: str) -> FormExpr:
    return _Parser(text).parse()


def parse_form(text: str, n: int, base: int = 0) -> ConstForm:
    """Parse ``text`` into a form on R^n; axis labels are ``base``-indexed."""
    if base not in (0, 1):
        raise ValueError("base must be 0 or 1")
    return parse_expr(text).evaluate(n, base)


def detect_base(text: str, n: int, default: int = 1) -> int:
    """Guess the axis labelling: label 0 forces 0-based, label n forces 1-based."""
    labels = set()
    for kind, val, _ in _tokenize(text):
        if kind == "blade":
            labels.update(int(ch) for ch in val[1:])
    if 0 in labels:
        return 0
    if n in labels:
        return 1
    return default


def _blade_order(mask: int):
    return (popcount(mask), axes_of(mask))


def format_form(a: ConstForm, base: int = 0) -> str:
    """Canonical text: blades by degree then lexicographically."""
    if not a.terms:
        return "0"
    pieces = []
    for m in sorted(a.terms, key=_blade_order):
        c = a.terms[m]
        axes = axes_of(m)
        name = "e" + "".join(str(x + base) for x in axes) if axes else ""
        if isinstance(c, QI):
            neg = c.re == 0 and c.im < 0
        else:
            neg = c < 0
        mag = -c if neg else c
        if not name:
            body = format_scalar(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{format_scalar(mag)} {name}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)
