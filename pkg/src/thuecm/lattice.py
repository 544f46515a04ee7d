"""Integer lattice utilities: Hermite normal form, kernels mod p, LLL and
Fincke-Pohst enumeration of short vectors."""
from __future__ import annotations

from fractions import Fraction
from math import floor, ceil, sqrt
from typing import Iterator, Sequence


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows only, upper triangular with positive pivots and
    entries above each pivot reduced into [0, pivot).
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: list[list[int]] = []
    for col in range(ncols):
        active = [r for r in a if r[col] != 0]
        rest = [r for r in a if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            new_active = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col] != 0:
                    new_active.append(r2)
                elif any(r2):
                    rest.append(r2)
            active = new_active
        if active:
            piv = active[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        a = rest
    for i, row in enumerate(out):
        col = next(c for c, v in enumerate(row) if v)
        for j in range(i):
            q = out[j][col] // row[col]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], row)]
    return out


def hnf_det(rows: Sequence[Sequence[int]]) -> int:
    """Index of the full-rank lattice spanned by ``rows`` in Z^n."""
    h = hnf(rows)
    n = len(rows[0]) if rows else 0
    if len(h) != n:
        return 0
    d = 1
    for i, row in enumerate(h):
        d *= row[i]
    return abs(d)


def kernel_mod_p(matrix: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {x : x * matrix == 0 mod p} (row vectors x)."""
    m = len(matrix)
    if m == 0:
        return []
    ncols = len(matrix[0])
    # transpose so that we solve A^T x = 0 by row reduction
    a = [[matrix[i][j] % p for i in range(m)] for j in range(ncols)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(v * inv) % p for v in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-a[r][fc]) % p
        basis.append(v)
    return basis


def solve_rational(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve a x = b exactly for an m x n system (m >= n); None if inconsistent."""
    m, n = len(a), len(a[0])
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(m)]
    prow = 0
    pcols = []
    for col in range(n):
        piv = next((r for r in range(prow, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[prow], aug[piv] = aug[piv], aug[prow]
        pv = aug[prow][col]
        aug[prow] = [v / pv for v in aug[prow]]
        for r in range(m):
            if r != prow and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[prow])]
        pcols.append(col)
        prow += 1
    if any(aug[r][n] != 0 for r in range(prow, m)):
        return None
    if len(pcols) < n:
        raise ValueError("system is underdetermined")
    x = [Fraction(0)] * n
    for r, c in enumerate(pcols):
        x[c] = aug[r][n]
    return x


def invert(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def lll_gram(gram: Sequence[Sequence[Fraction]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL reduction of a positive definite rational Gram matrix.

    Returns the unimodular transformation T whose rows are the reduced basis
    vectors expressed in the original basis.
    """
    n = len(gram)
    g = [[Fraction(v) for v in row] for row in gram]
    t = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = g[i][j] - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
                mu[i][j] = s / bstar[j]
            bstar[i] = g[i][i] - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    def reduce(k, j, q):
        t[k] = [a - q * b for a, b in zip(t[k], t[j])]
        gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j]
        for c in range(n):
            if c != k:
                g[k][c] -= q * g[j][c]
                g[c][k] = g[k][c]
        g[k][k] = gkk

    def swap(k):
        t[k], t[k - 1] = t[k - 1], t[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]

    k = 1
    mu, bstar = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                reduce(k, j, q)
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k)
            mu, bstar = gso()
            k = max(k - 1, 1)
    return t


def _ldl(gram: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact decomposition Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2."""
    n = len(gram)
    q = [[Fraction(v) for v in row] for row in gram]
    u = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        d[i] = q[i][i]
        if d[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = q[i][j] / d[i]
        for j in range(i + 1, n):
            for l in range(j, n):
                q[j][l] -= d[i] * u[i][j] * u[i][l]
                q[l][j] = q[j][l]
    return u, d


def short_vectors(gram: Sequence[Sequence[Fraction]], bound: Fraction,
                  budget: int | None = None, shell: bool = False) -> Iterator[list[int]]:
    """All integer vectors x with x^T G x <= bound (Fincke-Pohst).

    With ``shell`` only vectors with x^T G x == bound are produced.

    The recursion runs in floating point with a relative safety margin;
    every emitted vector is confirmed with the exact quadratic form.  Raises
    ``BudgetExceeded`` once more than ``budget`` tree nodes are visited.
    """
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        return
    u, d = _ldl(gram)
    uf = [[float(v) for v in row] for row in u]
    df = [float(v) for v in d]
    slack = 1e-9 * float(bound) + 1e-9
    gramf = [[Fraction(v) for v in row] for row in gram]
    x = [0] * n
    visited = 0

    def exact_q(vec):
        return sum(gramf[i][j] * vec[i] * vec[j] for i in range(n) if vec[i]
                   for j in range(n) if vec[j])

    def rec(i: int, remaining: float):
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(visited)
        c = sum(uf[i][j] * x[j] for j in range(i + 1, n))
        r = sqrt(max(remaining, 0.0) / df[i])
        lo, hi = ceil(-c - r) - 1, floor(-c + r) + 1
        for v in range(lo, hi + 1):
            x[i] = v
            rem = remaining - df[i] * (v + c) ** 2
            if rem < -slack:
                continue
            if i == 0:
                if shell:
                    if rem <= 2 * slack and exact_q(x) == bound:
                        yield list(x)
                elif exact_q(x) <= bound:
                    yield list(x)
            else:
                yield from rec(i - 1, rem)
        x[i] = 0

    yield from rec(n - 1, float(bound) + slack)


class BudgetExceeded(RuntimeError):
    def __init__(self, visited: int, detail: str = ""):
        super().__init__(f"enumeration budget exceeded after {visited} nodes {detail}".strip())
        self.visited = visited
        self.detail = detail
