"""Small dense exact linear algebra over Q and Q(i).

Matrices are lists of row lists.  Entries may be ``int``, ``Fraction`` or
:class:`~holoforms.scalars.QI`; nothing here ever rounds.
"""

from __future__ import annotations

from .scalars import div, normalize


def _copy(m):
    return [[normalize(x) for x in row] for row in m]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    cols = list(zip(*b))
    return [[normalize(sum((x * y for x, y in zip(row, col)), 0)) for col in cols] for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def rref(m):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    r = _copy(m)
    rows = len(r)
    cols = len(r[0]) if rows else 0
    pivots = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        piv = next((i for i in range(pr, rows) if r[i][c]), None)
        if piv is None:
            continue
        r[pr], r[piv] = r[piv], r[pr]
        p = r[pr][c]
        if p != 1:
            r[pr] = [div(x, p) for x in r[pr]]
        for i in range(rows):
            if i != pr and r[i][c]:
                f = r[i][c]
                r[i] = [normalize(x - f * y) for x, y in zip(r[i], r[pr])]
        pivots.append(c)
        pr += 1
    return r, pivots


def rank(m) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Basis of the right kernel, one vector per free column."""
    if not m:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    r, pivots = rref(m)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(r, pivots):
            v[pc] = normalize(-row[f])
        basis.append(v)
    return basis


def solve(a, b):
    """Solve ``a x = b`` exactly.

    Returns ``(x, kernel_dim)`` with free variables set to zero, or ``None``
    when the system is inconsistent.
    """
    rows = len(a)
    ncols = len(a[0]) if rows else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = rref(aug) if rows else ([], [])
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols]
    return x, ncols - len(pivots)


def charpoly(m):
    """Characteristic polynomial ``det(tI - m)`` via Hessenberg reduction.

    Coefficients are returned lowest degree first; the result is monic.
    """
    n = len(m)
    h = _copy(m)
    # similarity-reduce to upper Hessenberg form
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1]), None)
        if piv is None:
            continue
        if piv != k:
            h[k], h[piv] = h[piv], h[k]
            for row in h:
                row[k], row[piv] = row[piv], row[k]
        p = h[k][k - 1]
        for i in range(k + 1, n):
            if not h[i][k - 1]:
                continue
            f = div(h[i][k - 1], p)
            h[i] = [normalize(x - f * y) for x, y in zip(h[i], h[k])]
            for row in h:
                row[k] = normalize(row[k] + f * row[i])
    # recurrence on leading principal submatrices
    polys = [[1]]
    for k in range(n):
        # p_{k+1}(t) = (t - h[k][k]) p_k - sum_{i<k} h[i][k] * prod(h[j+1][j]) p_i
        nxt = poly_mul([normalize(-h[k][k]), 1], polys[k])
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = normalize(prod * h[i + 1][i])
            if not prod:
                break
            coef = normalize(h[i][k] * prod)
            if coef:
                nxt = poly_add(nxt, [normalize(-coef * c) for c in polys[i]])
        polys.append(nxt)
    return polys[n]


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return [normalize(c) for c in out]


def poly_add(p, q):
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return [normalize(a + b) for a, b in zip(p, q)]


def poly_pow(p, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def format_factored(roots: dict) -> str:
    """Render ``{root: multiplicity}`` as ``(t-2)^7(t+1)^14``."""
    parts = []
    for root in sorted(roots, reverse=True):
        mult = roots[root]
        sign = "-" if root >= 0 else "+"
        parts.append(f"(t{sign}{abs(root)})^{mult}")
    return "".join(parts)
