"""Differential graded algebras of cones and cylinders over structured bases.

A base is finite presentation data: named generators with flat model forms
(from which products, Hodge star and norms are derived exactly) and a
declared exterior derivative.  A cone element is a sum of monomials

    c * r^a * t^b * dt^delta * dr^epsilon * g

stored in that order, ``g`` a base generator or the unit ``1``.  The cone
metric is ``dr^2 + r^2 g`` with orientation ``dr ^ vol_b``; cylinders add
``dt^2`` with orientation ``dt ^ dr ^ vol_b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

import yaml

from . import linalg
from .exterior import ConstForm, blades_of_degree, hodge_star, inner, wedge
from .parsing import parse_form
from .report import SuiteReport
from .scalars import Scalar, div, format_scalar, normalize

ONE = "1"
PRESET_NAMES = (
    "SasakianKaehlerCone",
    "NK6toG2Cone",
    "NPG2toSpin7Cone",
    "SE5toCY3Cone",
    "CY3ConeToG2Cylinder",
    "G2ConeToSpin7Cylinder",
)


class ConeError(ValueError):
    pass


class UnknownGenerator(ConeError):
    pass


class NotClosed(ConeError):
    def __init__(self, target: "ConeElement", d_target: "ConeElement"):
        self.d_target = d_target
        super().__init__(f"target {target} is not closed: d(target) = {d_target}")


class ConeSyntaxError(ConeError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


# ---------------------------------------------------------------- base algebra


Combo = dict  # {generator name: coefficient}


@dataclass
class BaseAlgebra:
    """Graded algebra spanned by ``1`` and named generators.

    ``mult[(g, h)]``, ``d_table[g]`` and ``star[g]`` are linear combinations
    of generators; ``norm[g]`` is the constant squared pointwise norm.
    """

    name: str
    dim: int
    degrees: dict[str, int]
    models: dict[str, ConstForm]
    mult: dict[tuple[str, str], Combo]
    d_table: dict[str, Combo]
    star: dict[str, Combo]
    norm: dict[str, Scalar]
    volume: str
    params: dict[str, Scalar] = field(default_factory=dict)
    anchors: dict[str, str] = field(default_factory=dict)
    description: str = ""

    @property
    def generators(self) -> list[str]:
        return [g for g in self.degrees if g != ONE]

    def degree(self, g: str) -> int:
        try:
            return self.degrees[g]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {g!r} of base {self.name}") from None

    def in_span(self, form: ConstForm) -> Combo:
        """Express a flat form as a combination of generator models."""
        out: Combo = {}
        for p, comp in form.grade_components().items():
            names = [g for g, dg in self.degrees.items() if dg == p]
            blades = blades_of_degree(self.dim, p)
            cols = [[self.models[g].coeff(m) for g in names] for m in blades]
            sol = linalg.solve(cols, [comp.coeff(m) for m in blades]) if names else None
            if sol is None:
                raise ConeError(f"form of degree {p} is not in the span of the generators of {self.name}")
            for g, c in zip(names, sol[0]):
                if c:
                    out[g] = c
        return out

    @classmethod
    def from_spec(cls, name: str, spec: Mapping) -> "BaseAlgebra":
        dim = int(spec["dim"])
        params = {k: Fraction(v) for k, v in (spec.get("params") or {}).items()}
        degrees: dict[str, int] = {ONE: 0}
        models: dict[str, ConstForm] = {ONE: ConstForm.scalar(dim)}
        for g in spec["generators"]:
            gname, deg = g["name"], int(g["degree"])
            if gname in degrees or gname in _RESERVED:
                raise ConeError(f"generator name {gname!r} is reserved or repeated")
            if "model" in g:
                model = parse_form(str(g["model"]), dim)
            else:
                model = ConstForm.scalar(dim)
                for factor in str(g["product"]).split("*"):
                    model = wedge(model, models[factor.strip()])
            if model.is_zero() or model.degrees() != {deg}:
                raise ConeError(f"model of {gname} is not a nonzero {deg}-form")
            degrees[gname] = deg
            models[gname] = model
        alg = cls(name, dim, degrees, models, {}, {}, {}, {}, spec["volume"], params,
                  description=spec.get("description", ""))
        names = list(degrees)
        for g in names:
            for h in names:
                prod = wedge(models[g], models[h])
                alg.mult[(g, h)] = alg.in_span(prod) if prod else {}
            alg.star[g] = alg.in_span(hodge_star(models[g]))
            alg.norm[g] = inner(models[g], models[g])
        # the declared differential, written in the base expression language
        alg.d_table = {g: {} for g in names}
        cone = ConeAlgebra(alg, uses_t=False)
        for g, entry in (spec.get("d") or {}).items():
            if g not in degrees:
                raise UnknownGenerator(f"d declared for unknown generator {g!r}")
            expr = entry["expr"] if isinstance(entry, Mapping) else entry
            if isinstance(entry, Mapping) and entry.get("anchor"):
                alg.anchors[g] = entry["anchor"]
            value = cone.parse(str(expr))
            combo = {}
            for (a, b, dt, dr, h), c in value.terms.items():
                if (a, b, dt, dr) != (0, 0, 0, 0):
                    raise ConeError(f"d({g}) must be a base expression")
                combo[h] = c
            alg.d_table[g] = combo
        return alg


_RESERVED = {"r", "t", "dr", "dt", "d", "star", "star_cone", ONE}


@lru_cache(maxsize=None)
def _bases_spec() -> dict:
    text = resources.files("holoforms.presets").joinpath("bases.yaml").read_text()
    return yaml.safe_load(text)


@lru_cache(maxsize=None)
def load_base(name: str) -> BaseAlgebra:
    specs = _bases_spec()
    if name not in specs:
        raise ConeError(f"unknown base algebra {name!r}")
    return BaseAlgebra.from_spec(name, specs[name])


# ---------------------------------------------------------------- cone elements


Key = tuple  # (r_exp, t_exp, has_dt, has_dr, generator)


class ConeElement:
    """Sparse element of a cone or cylinder algebra; treated as immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "ConeAlgebra", terms: Mapping[Key, Scalar] | None = None):
        self.alg = alg
        clean = {}
        for k, c in (terms or {}).items():
            c = normalize(c)
            if c:
                clean[k] = c
        self.terms = clean

    def _coerce(self, other):
        if isinstance(other, ConeElement):
            if other.alg is not self.alg:
                raise ConeError("elements of different cone algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, 0) + c
        return ConeElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return ConeElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ConeElement):
            return self.alg.wedge(self, other)
        if isinstance(other, (int, Fraction)):
            return ConeElement(self.alg, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, ConeElement) else other
        if o is None:
            return NotImplemented
        return self.alg is o.alg and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree_of(self, key: Key) -> int:
        return key[2] + key[3] + self.alg.base.degree(key[4])

    def degrees(self) -> set[int]:
        return {self.degree_of(k) for k in self.terms}

    def __repr__(self):
        return f"ConeElement({self.alg.name}, {format_cone(self)!r})"

    def __str__(self):
        return format_cone(self)


def _key_text(key: Key) -> str:
    a, b, dt, dr, g = key
    parts = []
    if a == 1:
        parts.append("r")
    elif a:
        parts.append(f"r^{a}")
    if b == 1:
        parts.append("t")
    elif b:
        parts.append(f"t^{b}")
    if dt:
        parts.append("dt")
    if dr:
        parts.append("dr")
    if g != ONE:
        parts.append(g)
    return "*".join(parts)


def format_cone(x: ConeElement) -> str:
    """Canonical text, re-parseable by :meth:`ConeAlgebra.parse`."""
    if not x.terms:
        return "0"
    order = {g: i for i, g in enumerate(x.alg.base.degrees)}
    pieces = []
    for k in sorted(x.terms, key=lambda k: (x.degree_of(k), -k[2], -k[3], order[k[4]], k[0], k[1])):
        c = x.terms[k]
        body = _key_text(k)
        neg = c < 0
        mag = -c if neg else c
        if not body:
            text = format_scalar(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_scalar(mag)}*{body}"
        if not pieces:
            pieces.append(("-" if neg else "") + text)
        else:
            pieces.append(("- " if neg else "+ ") + text)
    return " ".join(pieces)


# ---------------------------------------------------------------- the algebra


class ConeAlgebra:
    """Cone ``dr^2 + r^2 g`` over a base, optionally crossed with a line ``dt^2``."""

    def __init__(self, base: BaseAlgebra, uses_t: bool, name: str | None = None):
        self.base = base
        self.uses_t = uses_t
        self.name = name or (f"Cyl(C({base.name}))" if uses_t else f"C({base.name})")
        self.elements: dict[str, ConeElement] = {}

    @property
    def dim(self) -> int:
        return self.base.dim + 1 + (1 if self.uses_t else 0)

    # constructors
    def element(self, terms: Mapping[Key, Scalar]) -> ConeElement:
        return ConeElement(self, terms)

    def scalar(self, c: Scalar) -> ConeElement:
        return ConeElement(self, {(0, 0, 0, 0, ONE): c})

    def monomial(self, coeff: Scalar = 1, r: int = 0, t: int = 0, dt: bool = False, dr: bool = False,
                 gen: str = ONE) -> ConeElement:
        self.base.degree(gen)
        if (t or dt) and not self.uses_t:
            raise ConeError(f"{self.name} has no t direction")
        if t < 0:
            raise ConeError("t exponents must be non-negative")
        return ConeElement(self, {(r, t, int(dt), int(dr), gen): coeff})

    # products
    def wedge(self, x: ConeElement, y: ConeElement) -> ConeElement:
        out: dict[Key, Scalar] = {}
        base = self.base
        for (a1, b1, t1, r1, g1), c1 in x.terms.items():
            p1 = base.degrees[g1]
            for (a2, b2, t2, r2, g2), c2 in y.terms.items():
                if (t1 and t2) or (r1 and r2):
                    continue
                # move dt2 past g1 and dr1, then dr2 past g1
                sign = -1 if (t2 * (p1 + r1) + r2 * p1) % 2 else 1
                for g, cg in base.mult[(g1, g2)].items():
                    k = (a1 + a2, b1 + b2, t1 | t2, r1 | r2, g)
                    out[k] = out.get(k, 0) + sign * c1 * c2 * cg
        return ConeElement(self, out)

    # calculus
    def d(self, x: ConeElement) -> ConeElement:
        """Exterior derivative with ``d(r^a) = a r^(a-1) dr`` and ``d(t^b) = b t^(b-1) dt``."""
        out: dict[Key, Scalar] = {}
        base = self.base

        def add(k, v):
            out[k] = out.get(k, 0) + v

        for (a, b, dt, dr, g), c in x.terms.items():
            if g not in base.degrees:
                raise UnknownGenerator(f"unknown generator {g!r}")
            if a and not dr:
                # d(r^a) ^ dt^delta ... = a r^(a-1) (-1)^delta dt^delta dr ...
                add((a - 1, b, dt, 1, g), (-1 if dt else 1) * a * c)
            if b and not dt:
                add((a, b - 1, 1, dr, g), b * c)
            sign = -1 if (dt + dr) % 2 else 1
            for h, ch in base.d_table.get(g, {}).items():
                add((a, b, dt, dr, h), sign * c * ch)
        return ConeElement(self, out)

    def star_cone(self, x: ConeElement) -> ConeElement:
        """Hodge star of the cone factor (``t`` and ``dt`` are not allowed)."""
        out: dict[Key, Scalar] = {}
        base = self.base
        m = base.dim
        for (a, b, dt, dr, g), c in x.terms.items():
            if dt:
                raise ConeError("star_cone does not act on dt")
            p = base.degrees[g]
            shift = a + m - 2 * p
            sign = 1 if dr else (-1 if p % 2 else 1)
            for h, ch in base.star[g].items():
                k = (shift, b, 0, 0 if dr else 1, h)
                out[k] = out.get(k, 0) + sign * c * ch
        return ConeElement(self, out)

    def star(self, x: ConeElement) -> ConeElement:
        """Hodge star of the whole cone or cylinder."""
        if not self.uses_t:
            return self.star_cone(x)
        out = self.scalar(0)
        for key, c in x.terms.items():
            a, b, dt, dr, g = key
            inner_part = ConeElement(self, {(a, b, 0, dr, g): c})
            s = self.star_cone(inner_part)
            if dt:
                out = out + s
            else:
                q = dr + self.base.degrees[g]
                dt_s = ConeElement(self, {(k[0], k[1], 1, k[3], k[4]): v for k, v in s.terms.items()})
                out = out + (dt_s * (-1 if q % 2 else 1))
        return out

    # pointwise oracle
    def evaluate(self, x: ConeElement, r: Scalar, t: Scalar = 0) -> ConstForm:
        """The element at ``(r, t)`` in an orthonormal coframe.

        Axes are ``(dt,) dr, e_0 ... e_(m-1)`` with ``e_i`` the unit base
        coframe, so a base p-form contributes a factor ``r^-p``.
        """
        off = 2 if self.uses_t else 1
        n = self.dim
        out = ConstForm.zero(n)
        for (a, b, dt, dr, g), c in x.terms.items():
            p = self.base.degrees[g]
            scale = c * Fraction(r) ** (a - p) * Fraction(t) ** b
            model = self.base.models[g]
            lifted = ConstForm(n, {mm << off: v for mm, v in model.terms.items()})
            prefix = ConstForm.scalar(n)
            if dt:
                prefix = wedge(prefix, ConstForm(n, {1: 1}))
            if dr:
                prefix = wedge(prefix, ConstForm(n, {1 << (off - 1): 1}))
            out = out + wedge(prefix, lifted) * scale
        return out

    # parsing
    def parse(self, text: str, names: Mapping[str, ConeElement] | None = None) -> ConeElement:
        scope = dict(self.elements)
        scope.update(names or {})
        return _ConeParser(self, text, scope).parse()


# ---------------------------------------------------------------- expression parser

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/(),.]))")


class _ConeParser:
    """Recursive-descent parser for cone expressions.

    Products are written with ``*`` (or juxtaposition), powers with ``^``;
    ``d(..)``, ``star(..)`` and ``star_cone(..)`` apply the operators.
    """

    FUNCS = ("d", "star", "star_cone")

    def __init__(self, alg: ConeAlgebra, text: str, scope: Mapping[str, ConeElement]):
        self.alg = alg
        self.text = text
        self.scope = scope
        self.toks = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                bad = len(stripped[:pos]) + len(stripped[pos:]) - len(stripped[pos:].lstrip())
                raise ConeSyntaxError(f"unexpected character {stripped[bad]!r}", bad)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, val):
        kind, v, pos = self.take()
        if v != val:
            raise ConeSyntaxError(f"expected {val!r}", pos)

    def parse(self) -> ConeElement:
        if not self.toks:
            raise ConeSyntaxError("empty expression", 0)
        out = self.expr()
        if self.peek()[0] is not None:
            raise ConeSyntaxError("unexpected trailing input", self.peek()[2])
        return out

    def expr(self) -> ConeElement:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            out = out + self.term() * sign
        return out

    def _starts_atom(self):
        kind, val, _ = self.peek()
        return kind in ("num", "name") or val == "("

    def term(self) -> ConeElement:
        out = self.power()
        while True:
            if self.peek()[1] in ("*", "."):
                self.take()
                out = out * self.power()
            elif self._starts_atom():
                out = out * self.power()
            else:
                return out

    def power(self) -> ConeElement:
        base_pos = self.peek()[2]
        atom, symbol = self.atom()
        if self.peek()[1] != "^":
            return atom
        self.take()
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        kind, val, pos = self.take()
        if kind != "num":
            raise ConeSyntaxError("expected an integer exponent", pos)
        k = -int(val) if neg else int(val)
        if symbol == "r":
            return self.alg.monomial(r=k)
        if k < 0:
            raise ConeSyntaxError("negative powers are only allowed for r", base_pos)
        out = self.alg.scalar(1)
        for _ in range(k):
            out = out * atom
        return out

    def atom(self) -> tuple[ConeElement, str | None]:
        kind, val, pos = self.take()
        if kind == "num":
            num = Fraction(int(val))
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or int(v2) == 0:
                    raise ConeSyntaxError("expected a nonzero denominator", p2)
                num = num / int(v2)
            return self.alg.scalar(num), None
        if val == "(":
            out = self.expr()
            self.expect(")")
            return out, None
        if kind != "name":
            raise ConeSyntaxError(f"unexpected {val!r}", pos)
        if val in self.FUNCS and self.peek()[1] == "(":
            self.take()
            arg = self.expr()
            self.expect(")")
            return getattr(self.alg, val)(arg), None
        alg = self.alg
        if val == "r":
            return alg.monomial(r=1), "r"
        if val == "t":
            return alg.monomial(t=1), "t"
        if val == "dr":
            return alg.monomial(dr=True), None
        if val == "dt":
            return alg.monomial(dt=True), None
        if val in self.scope:
            return self.scope[val], None
        if val in alg.base.params:
            return alg.scalar(alg.base.params[val]), None
        if val in alg.base.degrees:
            return alg.monomial(gen=val), None
        raise ConeSyntaxError(f"unknown name {val!r}", pos)


# ---------------------------------------------------------------- presets


@dataclass
class ConePreset:
    name: str
    algebra: ConeAlgebra
    structure: str
    structure_forms: list[str]
    identities: list[dict]
    potentials: list[dict]
    description: str = ""

    @property
    def base(self) -> BaseAlgebra:
        return self.algebra.base

    @property
    def uses_t(self) -> bool:
        return self.algebra.uses_t

    @property
    def elements(self) -> dict[str, ConeElement]:
        return self.algebra.elements

    def parse(self, text: str) -> ConeElement:
        return self.algebra.parse(text)


def preset_from_spec(spec: Mapping, base: BaseAlgebra | None = None) -> ConePreset:
    """Build a preset from its declarative description (see the shipped YAML files)."""
    base = base or load_base(spec["base"])
    alg = ConeAlgebra(base, bool(spec.get("uses_t", False)), spec["name"])
    for ename, expr in (spec.get("elements") or {}).items():
        if ename in _RESERVED or ename in base.degrees:
            raise ConeError(f"element name {ename!r} clashes with a reserved or generator name")
        alg.elements[ename] = alg.parse(str(expr))
    structure = spec["structure"]
    if structure not in alg.elements:
        raise ConeError(f"structure form {structure!r} is not a defined element")
    return ConePreset(
        spec["name"], alg, structure, list(spec.get("structure_forms") or [structure]),
        list(spec.get("identities") or []), list(spec.get("potentials") or []),
        spec.get("description", ""),
    )


def load_preset_file(path) -> ConePreset:
    with open(path) as fh:
        return preset_from_spec(yaml.safe_load(fh))


@lru_cache(maxsize=None)
def load_preset(name: str) -> ConePreset:
    if name not in PRESET_NAMES:
        raise ConeError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")
    text = resources.files("holoforms.presets").joinpath(f"{name}.yaml").read_text()
    return preset_from_spec(yaml.safe_load(text))


def _preset(p) -> ConePreset:
    return load_preset(p) if isinstance(p, str) else p


def dga_d(a: ConeElement, preset=None) -> ConeElement:
    return a.alg.d(a)


def cone_star(a: ConeElement, preset=None) -> ConeElement:
    return a.alg.star(a)


def build_cone_structure(preset) -> ConeElement:
    p = _preset(preset)
    return p.elements[p.structure]


# ---------------------------------------------------------------- potentials


@dataclass
class PotentialSolution:
    coefficients: list[Scalar]
    ansatz: list[ConeElement]
    labels: list[str]
    kernel_dim: int

    @property
    def potential(self) -> ConeElement:
        out = self.ansatz[0].alg.scalar(0)
        for c, m in zip(self.coefficients, self.ansatz):
            out = out + m * c
        return out

    def render(self) -> str:
        parts = [f"{format_scalar(c)}*({lab})" for c, lab in zip(self.coefficients, self.labels) if c]
        return " + ".join(parts) if parts else "0"


@dataclass
class NoSolution:
    reason: str

    def __bool__(self):
        return False


def expand_ansatz(alg: ConeAlgebra, shapes: Iterable) -> tuple[list[ConeElement], list[str]]:
    """Turn ansatz shapes into elements.

    A shape is an expression, or a mapping ``{shape: expr, r: [lo, hi]}``
    that multiplies the expression by ``r^k`` for every ``k`` in the range.
    """
    elems, labels = [], []
    for s in shapes:
        if isinstance(s, ConeElement):
            elems.append(s)
            labels.append(str(s))
            continue
        if isinstance(s, str):
            s = {"shape": s}
        base = alg.parse(str(s["shape"]))
        if "r" in s:
            lo, hi = s["r"]
            for k in range(int(lo), int(hi) + 1):
                elems.append(alg.monomial(r=k) * base)
                labels.append(f"r^{k}*{s['shape']}")
        else:
            elems.append(base)
            labels.append(str(s["shape"]))
    return elems, labels


def solve_potential(target: ConeElement, ansatz, preset=None) -> PotentialSolution | NoSolution:
    """Exact coefficients ``c`` with ``d(sum c_i m_i) == target``.

    Free variables of an underdetermined system are set to zero and the
    kernel dimension is reported.  A non-closed target raises
    :class:`NotClosed`.
    """
    alg = target.alg
    dt = alg.d(target)
    if dt:
        raise NotClosed(target, dt)
    elems, labels = expand_ansatz(alg, ansatz)
    if not elems:
        return NoSolution("empty ansatz")
    images = [alg.d(m) for m in elems]
    keys = sorted({k for im in images for k in im.terms} | set(target.terms), key=repr)
    matrix = [[im.terms.get(k, 0) for im in images] for k in keys]
    rhs = [target.terms.get(k, 0) for k in keys]
    sol = linalg.solve(matrix, rhs)
    if sol is None:
        return NoSolution("the linear system is inconsistent")
    x, kernel = sol
    return PotentialSolution(list(x), elems, labels, kernel)


# ---------------------------------------------------------------- growth


@dataclass(frozen=True)
class GrowthClass:
    classification: str  # decaying_or_bounded | linear | polynomial | singular_at_apex
    degree: int | None
    exponents: tuple[tuple[str, int, int], ...]  # (monomial, apex exponent, growth exponent)

    @property
    def label(self) -> str:
        if self.classification == "polynomial":
            return f"polynomial({self.degree})"
        return self.classification


def growth_classify(a: ConeElement, preset=None) -> GrowthClass:
    """Classify the pointwise norm growth of ``a`` in the distance ``rho``.

    A monomial ``r^a t^b dt dr g`` with base degree p has norm
    ``r^(a-p) |t|^b |g|``.  A negative ``a - p`` blows up at the apex;
    otherwise the growth exponent in ``rho ~ (r^2 + t^2)^(1/2)`` is
    ``a - p + b``.
    """
    base = a.alg.base
    rows = []
    for key in a.terms:
        r_exp, t_exp, _, _, g = key
        if g not in base.norm:
            raise ConeError(f"no norm recorded for generator {g!r}")
        if not base.norm[g]:
            continue
        p = base.degrees[g]
        rows.append((_key_text(key) or "1", r_exp - p, r_exp - p + t_exp))
    rows.sort()
    if any(apex < 0 for _, apex, _ in rows):
        return GrowthClass("singular_at_apex", None, tuple(rows))
    k = max((g for _, _, g in rows), default=0)
    if k <= 0:
        return GrowthClass("decaying_or_bounded", 0, tuple(rows))
    if k == 1:
        return GrowthClass("linear", 1, tuple(rows))
    return GrowthClass("polynomial", k, tuple(rows))


# ---------------------------------------------------------------- verification


def _graded_sign(p: int, q: int) -> int:
    return -1 if (p * q) % 2 else 1


def _combo_mul(base: BaseAlgebra, x: Combo, y: Combo) -> Combo:
    out: Combo = {}
    for g, cg in x.items():
        for h, ch in y.items():
            for k, ck in base.mult[(g, h)].items():
                out[k] = normalize(out.get(k, 0) + cg * ch * ck)
    return {k: v for k, v in out.items() if v}


def _combo_d(base: BaseAlgebra, x: Combo) -> Combo:
    out: Combo = {}
    for g, cg in x.items():
        for k, ck in base.d_table.get(g, {}).items():
            out[k] = normalize(out.get(k, 0) + cg * ck)
    return {k: v for k, v in out.items() if v}


def _combo_add(*parts: tuple[Scalar, Combo]) -> Combo:
    out: Combo = {}
    for s, c in parts:
        for k, v in c.items():
            out[k] = normalize(out.get(k, 0) + s * v)
    return {k: v for k, v in out.items() if v}


def base_checks(base: BaseAlgebra) -> SuiteReport:
    """Differential, product and star consistency of a base algebra."""
    rep = SuiteReport(f"base:{base.name}")
    names = list(base.degrees)
    bad = [g for g in names if _combo_d(base, base.d_table.get(g, {}))]
    rep.add("d-squared", not bad, "d(d g)", "0", f"offending: {bad}" if bad else f"all {len(names)} generators",
            "d^2 = 0")
    bad = [g for g, c in base.d_table.items()
           if any(base.degrees[h] != base.degrees[g] + 1 for h in c)]
    rep.add("d-degree", not bad, "deg d g", "deg g + 1", f"offending: {bad}" if bad else "", "")
    bad = []
    for g in names:
        for h in names:
            p, q = base.degrees[g], base.degrees[h]
            lhs = _combo_d(base, base.mult[(g, h)])
            rhs = _combo_add((1, _combo_mul(base, base.d_table[g], {h: 1})),
                             (-1 if p % 2 else 1, _combo_mul(base, {g: 1}, base.d_table[h])))
            if lhs != rhs:
                bad.append((g, h))
    rep.add("leibniz", not bad, "d(g h)", "dg h + (-1)^p g dh", f"offending: {bad[:3]}" if bad else "",
            "")
    bad = [(g, h) for g in names for h in names
           if base.mult[(g, h)] != {k: v * _graded_sign(base.degrees[g], base.degrees[h])
                                    for k, v in base.mult[(h, g)].items()}]
    rep.add("graded-commutative", not bad, "g h", "(-1)^(pq) h g", f"offending: {bad[:3]}" if bad else "", "")
    bad = []
    for g in names:
        for h in names:
            for k in names:
                left = _combo_mul(base, base.mult[(g, h)], {k: 1})
                right = _combo_mul(base, {g: 1}, base.mult[(h, k)])
                if left != right:
                    bad.append((g, h, k))
    rep.add("associative", not bad, "(g h) k", "g (h k)", f"offending: {bad[:3]}" if bad else "", "")
    m = base.dim
    bad = []
    for g in names:
        p = base.degrees[g]
        twice = {}
        for h, ch in base.star[g].items():
            for k, ck in base.star[h].items():
                twice[k] = normalize(twice.get(k, 0) + ch * ck)
        twice = {k: v for k, v in twice.items() if v}
        if twice != {g: _graded_sign(p, m - p)}:
            bad.append(g)
    rep.add("double-star", not bad, "**g", "(-1)^(p(m-p)) g", f"offending: {bad}" if bad else "", "")
    rep.add("star-one", base.star[ONE] == {base.volume: 1}, "*1", base.volume, "", "")
    return rep


def _eval_identity(preset: ConePreset, lhs: str, rhs: str) -> tuple[ConeElement, ConeElement]:
    return preset.parse(lhs), preset.parse(rhs)


def verify_structure_preset(preset) -> SuiteReport:
    """Base consistency, closedness of the structure forms and declared identities."""
    p = _preset(preset)
    alg = p.algebra
    rep = SuiteReport(f"cone:{p.name}")
    rep.extend(base_checks(p.base), prefix="base")
    for g, anchor in p.base.anchors.items():
        lhs = alg.d(alg.monomial(gen=g))
        rep.add(f"structure-equation/{g}", lhs == alg.element({(0, 0, 0, 0, h): c for h, c in p.base.d_table[g].items()}),
                f"d({g})", str(lhs), "declared structure equation", anchor)
    for name in p.structure_forms:
        x = p.elements[name]
        dx = alg.d(x)
        rep.add(f"closed/{name}", not dx, f"d({name})", "0",
                f"{name} = {x}" if not dx else f"d({name}) = {dx}", "torsion-free model: structure form closed")
        dsx = alg.d(alg.star(x))
        rep.add(f"coclosed/{name}", not dsx, f"d(*{name})", "0",
                "" if not dsx else f"d(*{name}) = {dsx}", "torsion-free model: dual form closed")
    for ident in p.identities:
        lhs, rhs = _eval_identity(p, ident["lhs"], ident["rhs"])
        rep.add(f"identity/{ident['lhs']}", lhs == rhs, str(lhs), str(rhs), f"{ident['lhs']} = {ident['rhs']}",
                ident.get("anchor", ""))
    rep.extend(star_checks(p), prefix="star")
    return rep


def generator_level_elements(alg: ConeAlgebra) -> list[ConeElement]:
    out = []
    for g in alg.base.degrees:
        for dt in ((0, 1) if alg.uses_t else (0,)):
            for dr in (0, 1):
                out.append(alg.element({(2, 1 if alg.uses_t else 0, dt, dr, g): 1}))
    return out


def star_checks(preset) -> SuiteReport:
    """Double star and agreement with the pointwise star at a sample point."""
    p = _preset(preset)
    alg = p.algebra
    n = alg.dim
    rep = SuiteReport("star")
    bad = []
    for x in generator_level_elements(alg):
        deg = next(iter(x.degrees()))
        if alg.star(alg.star(x)) != x * _graded_sign(deg, n - deg):
            bad.append(str(x))
    rep.add("double-star", not bad, "**x", "(-1)^(p(n-p)) x",
            f"offending: {bad[:3]}" if bad else f"all generator-level elements, n = {n}", "")
    one = alg.star(alg.scalar(1))
    vol = alg.element({(alg.base.dim, 0, 1 if alg.uses_t else 0, 1, alg.base.volume): 1})
    rep.add("star-one", one == vol, "*1", str(vol), "", "")
    point = (Fraction(3, 2), Fraction(2, 3))
    bad = []
    for x in generator_level_elements(alg) + [p.elements[k] for k in p.structure_forms]:
        if alg.evaluate(alg.star(x), *point) != hodge_star(alg.evaluate(x, *point)):
            bad.append(str(x))
    rep.add("pointwise", not bad, "star at (r, t) = (3/2, 2/3)", "flat star of the frame",
            f"offending: {bad[:3]}" if bad else "agrees on generators and structure forms", "")
    return rep


def potential_report(preset, report: SuiteReport | None = None, prefix: str | None = None) -> SuiteReport:
    """Solve every declared potential; audit printed constants and growth."""
    p = _preset(preset)
    alg = p.algebra
    rep = report or SuiteReport("potentials")
    pre = f"{prefix or p.name}/"
    for pot in p.potentials:
        cid = pre + pot["id"]
        target = alg.parse(pot["target"])
        sol = solve_potential(target, pot["ansatz"], p)
        if not sol:
            rep.add(cid, False, f"d(beta) = {pot['target']}", "solution", sol.reason, "")
            continue
        beta = sol.potential
        roundtrip = alg.d(beta) == target
        expected = alg.parse(pot["expected"])
        rep.add(cid, roundtrip and beta == expected, str(beta), str(expected),
                f"exact solve over Q, kernel dimension {sol.kernel_dim}; d(beta) == {pot['target']}: {roundtrip}",
                "")
        for i, claim in enumerate(pot.get("paper") or []):
            printed = alg.parse(claim["expr"])
            cid2 = f"{cid}/printed-{i}"
            if printed == beta:
                rep.add(cid2, True, str(printed), str(beta), "printed potential agrees", claim.get("anchor", ""))
            else:
                rep.mismatch(
                    cid2, str(printed), str(beta),
                    f"d(printed) = {alg.d(printed)}, target {pot['target']} = {target}",
                    claim.get("anchor", ""),
                )
    return rep


def growth_report(preset, report: SuiteReport | None = None, prefix: str | None = None) -> SuiteReport:
    p = _preset(preset)
    alg = p.algebra
    rep = report or SuiteReport("growth")
    pre = f"{prefix or p.name}/"
    for pot in p.potentials:
        sol = solve_potential(alg.parse(pot["target"]), pot["ansatz"], p)
        if not sol:
            rep.add(pre + pot["id"], False, "growth", "linear", "no potential", "")
            continue
        g = growth_classify(sol.potential, p)
        rep.add(pre + pot["id"], g.classification == "linear", str(sol.potential), g.label,
                "exponents " + ", ".join(f"{m}: {e}" for m, _, e in g.exponents),
                "d(linear): |beta(x)| <= c(1+rho(x0,x))")
    return rep
