"""Independent reference implementations used only by the tests.

These rebuild the basic operations from permutation parity (via sympy) and
explicit index bookkeeping, without sharing code with the package.
"""

from __future__ import annotations

from itertools import combinations

import sympy
from sympy.combinatorics import Permutation


def parity_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it repeats an index)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    return Permutation(order).signature() if len(seq) > 1 else 1


def to_dict(form) -> dict[tuple[int, ...], object]:
    """ConstForm -> {sorted axis tuple: sympy coefficient}."""
    out = {}
    for mask, c in form.terms.items():
        axes = tuple(i for i in range(form.n) if mask >> i & 1)
        out[axes] = sympy.nsimplify(str(c).replace("i", "*I") if "i" in str(c) else str(c))
    return out


def wedge(a: dict, b: dict) -> dict:
    out = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            s = parity_sign(ia + ib)
            if s:
                key = tuple(sorted(ia + ib))
                out[key] = out.get(key, 0) + s * ca * cb
    return {k: sympy.simplify(v) for k, v in out.items() if sympy.simplify(v) != 0}


def star(a: dict, n: int) -> dict:
    out = {}
    for idx, c in a.items():
        comp = tuple(i for i in range(n) if i not in idx)
        out[comp] = out.get(comp, 0) + parity_sign(idx + comp) * c
    return {k: v for k, v in out.items() if v != 0}


def two_form_matrix(form: dict, n: int, k: int) -> sympy.Matrix:
    """Matrix of a -> *(a ^ form) on 2-forms, in lexicographic blade order."""
    blades = list(combinations(range(n), 2))
    index = {b: i for i, b in enumerate(blades)}
    m = sympy.zeros(len(blades), len(blades))
    for j, b in enumerate(blades):
        img = star(wedge({b: 1}, form), n)
        for key, v in img.items():
            m[index[key], j] = v
    return m
