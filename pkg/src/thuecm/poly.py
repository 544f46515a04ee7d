"""Dense univariate polynomials over the rationals.

Coefficients are stored lowest degree first as a tuple of ``Fraction``; the
zero polynomial has no coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class QPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "QPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic accessors -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPoly):
            other = QPoly([other]) if isinstance(other, (int, Fraction)) else None
            if other is None:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", s))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "QPoly":
        return other if isinstance(other, QPoly) else QPoly([other])

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        result, base = QPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "QPoly":
        c = _frac(c)
        return QPoly(a * c for a in self.coeffs)

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db, lcb = other.degree, other.lc
        if len(rem) - 1 < db:
            return QPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lcb
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return QPoly(quot), QPoly(rem[:db])

    def __divmod__(self, other):
        return self.divmod(self._coerce(other))

    def __floordiv__(self, other) -> "QPoly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "QPoly":
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "QPoly") -> "QPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "QPoly") -> "QPoly":
        acc = QPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self) -> "QPoly":
        return QPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive integral (0 for zero)."""
        if not self.coeffs:
            return Fraction(0)
        num = reduce(gcd, (c.numerator for c in self.coeffs))
        den = reduce(lcm, (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def monic(self) -> "QPoly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc)

    def primitive(self) -> "QPoly":
        """Primitive integer multiple with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        p = self.scale(1 / c)
        return -p if p.lc < 0 else p

    def int_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError(f"{self} has non-integral coefficients")
        return [c.numerator for c in self.coeffs]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def reverse(self) -> "QPoly":
        return QPoly(reversed(self.coeffs))


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd of ``a`` and ``b``."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: QPoly) -> QPoly:
    g = poly_gcd(p, p.derivative()) if p.degree > 0 else QPoly([1])
    return p.exact_div(g).monic()


def is_squarefree(p: QPoly) -> bool:
    return p.degree <= 0 or poly_gcd(p, p.derivative()).degree == 0


def resultant(a: QPoly, b: QPoly) -> Fraction:
    """Resultant by the Euclidean remainder sequence over Q."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    sign = 1
    acc = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return sign * acc * b.lc ** da
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if (da * db) % 2:
            sign = -sign
        acc *= b.lc ** (da - r.degree)
        a, b = b, r


def sylvester_resultant(a: QPoly, b: QPoly) -> Fraction:
    """Resultant as the Sylvester determinant; an independent check."""
    m, n = a.degree, b.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(reversed(a.coeffs)) + [Fraction(0)] * (n - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(reversed(b.coeffs)) + [Fraction(0)] * (m - 1 - i))
    return det(rows)


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    m = [[_frac(v) for v in row] for row in rows]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return result


def charpoly(matrix: Sequence[Sequence]) -> QPoly:
    """Characteristic polynomial det(xI - M) via the Faddeev-LeVerrier recurrence."""
    n = len(matrix)
    a = [[_frac(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- A*mk + c_{n-k+1} I
        prev = mk
        mk = [[sum((a[i][t] * prev[t][j] for t in range(n) if prev[t][j]), Fraction(0))
               for j in range(n)] for i in range(n)]
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = [[sum((a[i][t] * mk[t][j] for t in range(n) if mk[t][j]), Fraction(0))
               for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return QPoly(coeffs)


def sturm_sequence(p: QPoly) -> list[QPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(vals: Iterable) -> int:
    prev, count = 0, 0
    for v in vals:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def count_real_roots(p: QPoly) -> int:
    """Number of distinct real roots of ``p`` (Sturm's theorem)."""
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    at_neg = _sign_changes(q.lc * (-1) ** q.degree for q in seq)
    at_pos = _sign_changes(q.lc for q in seq)
    return at_neg - at_pos


def all_roots_nonnegative(p: QPoly) -> bool:
    """For a real-rooted ``p``: True iff every root is >= 0.

    A real-rooted polynomial has no negative root exactly when the
    coefficients of (-1)^n p(-x) are all of one sign.
    """
    n = p.degree
    # coefficient of x^i in (-1)^n p(-x) is (-1)^(n+i) c_i
    signs = {1 if c * (-1) ** (n + i) > 0 else -1 for i, c in enumerate(p.coeffs) if c}
    return len(signs) <= 1


def factor_small(p: QPoly, max_degree: int = 32) -> list[QPoly]:
    """Irreducible monic factors of ``p`` over Q, with multiplicity.

    The factorisation itself is delegated to sympy; the product of the
    returned factors is re-checked exactly against ``p``.
    """
    import sympy

    if p.degree < 1:
        return []
    if p.degree > max_degree:
        raise ValueError(f"degree {p.degree} exceeds supported bound {max_degree}")
    x = sympy.Symbol("x")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
                      x, domain="QQ")
    _, facs = expr.factor_list()
    out: list[QPoly] = []
    for f, mult in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        q = QPoly(coeffs).monic()
        out.extend([q] * mult)
    out.sort(key=lambda q: (q.degree, q.coeffs))
    prod = reduce(lambda u, v: u * v, out, QPoly([1]))
    if prod != p.monic():
        raise ArithmeticError("factorisation failed exact verification")
    return out


def is_irreducible(p: QPoly) -> bool:
    return p.degree >= 1 and len(factor_small(p)) == 1


def lagrange_interpolate(xs: Sequence, ys: Sequence) -> QPoly:
    result = QPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        term = QPoly([_frac(yi)])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * QPoly([-_frac(xj), 1])
                denom *= _frac(xi) - _frac(xj)
        result = result + term.scale(1 / denom)
    return result
