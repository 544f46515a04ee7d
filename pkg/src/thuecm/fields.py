"""Absolute number fields Q(theta) and their elements."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import mpmath

from .balls import ComplexBall, complex_roots
from .lattice import invert
from .poly import QPoly, charpoly, count_real_roots, is_irreducible, resultant, squarefree_part


class FieldError(ValueError):
    """Invalid field data (reducible polynomial, bad integral basis, ...)."""


class NotCMError(FieldError):
    pass


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f.

    ``basis`` holds the integral basis as rows of power-basis coordinates.
    Construct through :func:`make_field`, which validates its inputs.
    """

    def __init__(self, min_poly: QPoly, basis: Sequence[Sequence[Fraction]] | None = None,
                 name: str = ""):
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.name = name
        n = self.degree
        if basis is None:
            basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        self.basis = tuple(tuple(Fraction(c) for c in row) for row in basis)
        self._basis_inv = invert(self.basis)
        self._reduce = self._reduction_table()
        self._embeddings: dict[int, list[ComplexBall]] = {}
        self.conjugation = None  # Automorphism, filled in lazily by complex_conjugation

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<NumberField{label} {self.min_poly}>"

    def _reduction_table(self) -> list[list[Fraction]]:
        # x^k mod f for k = n .. 2n-2
        n = self.degree
        table = []
        cur = [Fraction(0)] * n
        if n == 0:
            return table
        # x^n = -(f_0 + ... + f_{n-1} x^{n-1})
        cur = [-c for c in self.min_poly.coeffs[:n]]
        for _ in range(max(n - 1, 0)):
            table.append(cur)
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, table[0])]
            cur = nxt
        table.append(cur)
        return table

    # -- elements --------------------------------------------------------
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, QPoly):
            return self.from_poly(value)
        if isinstance(value, (list, tuple)):
            coords = [Fraction(c) for c in value]
            if len(coords) != self.degree:
                raise FieldError(f"expected {self.degree} coordinates, got {len(coords)}")
            return FieldElem(self, coords)
        c = Fraction(value)
        return FieldElem(self, [c] + [Fraction(0)] * (self.degree - 1))

    def from_poly(self, p: QPoly) -> "FieldElem":
        return FieldElem(self, self._reduce_coeffs(list(p.coeffs)))

    def from_integral(self, coords: Sequence) -> "FieldElem":
        """Element with the given coordinates over the integral basis."""
        if len(coords) != self.degree:
            raise FieldError(f"expected {self.degree} coordinates, got {len(coords)}")
        out = [Fraction(0)] * self.degree
        for c, row in zip(coords, self.basis):
            c = Fraction(c)
            if c:
                for j, v in enumerate(row):
                    out[j] += c * v
        return FieldElem(self, out)

    @cached_property
    def gen(self) -> "FieldElem":
        if self.degree == 1:
            return self(-self.min_poly.coeffs[0])
        return self([0, 1] + [0] * (self.degree - 2))

    @cached_property
    def one(self) -> "FieldElem":
        return self(1)

    @cached_property
    def zero(self) -> "FieldElem":
        return self(0)

    def integral_basis(self) -> list["FieldElem"]:
        return [FieldElem(self, row) for row in self.basis]

    def _reduce_coeffs(self, cs: list[Fraction]) -> list[Fraction]:
        n = self.degree
        if n == 1:
            # Q presented as Q[x]/(x - c): evaluate at c
            c0 = -self.min_poly.coeffs[0]
            return [QPoly(cs)(c0) if cs else Fraction(0)]
        out = [Fraction(0)] * n
        for k, c in enumerate(cs):
            if not c:
                continue
            if k < n:
                out[k] += c
            else:
                row = self._reduce[k - n]
                for j, v in enumerate(row):
                    if v:
                        out[j] += c * v
        return out

    # -- embeddings ------------------------------------------------------
    def embeddings(self, prec: int = 64) -> list[ComplexBall]:
        """Certified discs around the images of the generator."""
        if self.degree == 1:
            return [ComplexBall.exact(self.gen.coords[0])]
        for p in sorted(self._embeddings):
            if p >= prec:
                return self._embeddings[p]
        balls = complex_roots(self.min_poly, prec)
        self._embeddings[prec] = balls
        return balls

    def approx_roots(self, prec: int = 64) -> list[mpmath.mpc]:
        with mpmath.workprec(prec + 16):
            return [mpmath.mpc(mpmath.mpf(b.re.numerator) / b.re.denominator,
                               mpmath.mpf(b.im.numerator) / b.im.denominator)
                    for b in self.embeddings(prec + 8)]

    @cached_property
    def signature(self) -> tuple[int, int]:
        if self.degree == 1:
            return (1, 0)
        r1 = count_real_roots(self.min_poly)
        return r1, (self.degree - r1) // 2

    @cached_property
    def disc_power_basis(self) -> Fraction:
        f = self.min_poly
        n = f.degree
        if n == 1:
            return Fraction(1)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * resultant(f, f.derivative()) / f.lc

    @cached_property
    def discriminant(self) -> Fraction:
        """Discriminant of the stored integral basis."""
        from .poly import det
        d = det(self.basis)
        return self.disc_power_basis * d * d

    def trace_form(self) -> list[list[Fraction]]:
        """Exact Gram matrix of sum_sigma |sigma(z)|^2 over the integral basis.

        Available for totally real fields (Tr(z^2)) and for fields with a
        known complex conjugation c (Tr(z c(z))).
        """
        elems = self.integral_basis()
        if self.signature[1] == 0:
            other = elems
        elif self.conjugation is not None:
            other = [self.conjugation(e) for e in elems]
        else:
            raise FieldError("exact trace form needs a totally real or CM field")
        n = self.degree
        return [[(elems[i] * other[j]).trace() for j in range(n)] for i in range(n)]

    @cached_property
    def trace_dual_basis(self) -> list["FieldElem"]:
        """w_k* with Tr(w_j w_k*) = [j == k]; coordinates are z -> Tr(z w_k*)."""
        elems = self.integral_basis()
        n = self.degree
        ginv = invert([[(elems[i] * elems[j]).trace() for j in range(n)] for i in range(n)])
        out = []
        for k in range(n):
            acc = self.zero
            for j in range(n):
                if ginv[k][j]:
                    acc = acc + elems[j] * ginv[k][j]
            out.append(acc)
        return out


class FieldElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable[Fraction]):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)

    def __repr__(self) -> str:
        return f"FieldElem({self.as_poly()})"

    def __str__(self) -> str:
        return str(self.as_poly()).replace("x", "t")

    def as_poly(self) -> QPoly:
        return QPoly(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == self.field(other).coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other) -> "FieldElem":
        other = self._coerce(other)
        return FieldElem(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, [-a for a in self.coords])

    def __sub__(self, other) -> "FieldElem":
        other = self._coerce(other)
        return FieldElem(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other) -> "FieldElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FieldElem":
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.field, [a * other for a in self.coords])
        other = self._coerce(other)
        a, b = self.coords, other.coords
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElem(self.field, self.field._reduce_coeffs(prod))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FieldElem":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.degree == 1:
            return self.field(1 / self.coords[0])
        # extended Euclid: s*a + t*f = 1
        a, f = self.as_poly(), self.field.min_poly
        r0, r1 = f, a
        s0, s1 = QPoly(), QPoly([1])
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant
        return self.field.from_poly(s0.scale(1 / r0.coeffs[0]))

    def __truediv__(self, other) -> "FieldElem":
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.field, [a / other for a in self.coords])
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "FieldElem":
        return self._coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:]) if self.field.degree > 1 else True

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    # -- linear algebra views -------------------------------------------
    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of z -> self*z on the power basis (row i = self * x^i)."""
        n = self.field.degree
        rows = []
        cur = self
        x = self.field.gen
        for i in range(n):
            rows.append(list(cur.coords))
            if i < n - 1:
                cur = cur * x
        return rows

    def integral_coords(self) -> list[Fraction]:
        inv = self.field._basis_inv
        n = self.field.degree
        return [sum((self.coords[i] * inv[i][j] for i in range(n) if self.coords[i]), Fraction(0))
                for j in range(n)]

    def has_integral_coords(self) -> bool:
        return all(c.denominator == 1 for c in self.integral_coords())

    def charpoly(self) -> QPoly:
        if self.field.degree == 1:
            return QPoly([-self.coords[0], 1])
        return charpoly(self.mult_matrix())

    def trace(self) -> Fraction:
        if self.field.degree == 1:
            return self.coords[0]
        # trace of the multiplication matrix
        return sum((row[i] for i, row in enumerate(self.mult_matrix())), Fraction(0))

    def norm(self) -> Fraction:
        from .poly import det
        if self.field.degree == 1:
            return self.coords[0]
        return det(self.mult_matrix())

    def is_algebraic_integer(self) -> bool:
        return self.charpoly().is_integral()

    # -- embeddings ------------------------------------------------------
    def embed(self, prec: int = 64) -> list[ComplexBall]:
        """Certified enclosures of sigma(self) for every embedding sigma."""
        out = []
        for root in self.field.embeddings(prec + 16):
            acc = ComplexBall.exact(0)
            for c in reversed(self.coords):
                acc = (acc * root + c).rounded(prec + 16)
            out.append(acc)
        return out

    def approx(self, prec: int = 64) -> list[mpmath.mpc]:
        roots = self.field.approx_roots(prec)
        with mpmath.workprec(prec + 16):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.coords)]
            return [mpmath.polyval(cs, r) for r in roots]


def make_field(min_poly: QPoly | Sequence, integral_basis: Sequence[Sequence] | None = None,
               name: str = "") -> NumberField:
    """Validated number field.

    ``integral_basis`` rows are power-basis coordinates.  If omitted, the
    maximal order is computed (the power basis is kept when it is already
    maximal).  A supplied basis must pass :func:`verify_integral_basis` and
    be maximal.
    """
    from .orders import maximal_order_basis, is_maximal, verify_integral_basis

    f = min_poly if isinstance(min_poly, QPoly) else QPoly(min_poly)
    if f.degree < 1:
        raise FieldError("defining polynomial must be nonconstant")
    if not f.is_integral() or f.lc != 1:
        raise FieldError("defining polynomial must be monic with integer coefficients")
    if not is_irreducible(f):
        raise FieldError(f"{f} is reducible over Q")
    field = NumberField(f, name=name)
    if integral_basis is None:
        basis = maximal_order_basis(field)
    else:
        elems = [field(list(row)) for row in integral_basis]
        if not verify_integral_basis(field, elems):
            raise FieldError("supplied integral basis failed verification")
        basis = [list(e.coords) for e in elems]
        if not is_maximal(NumberField(f, basis)):
            raise FieldError("supplied basis spans a non-maximal order")
    return NumberField(f, basis, name=name)


def norm(a: FieldElem) -> Fraction:
    return a.norm()


def minimal_polynomial(a: FieldElem) -> tuple[QPoly, QPoly]:
    """(monic minimal polynomial, primitive integer form with positive lead)."""
    cp = a.charpoly()
    mp = squarefree_part(cp)
    return mp, mp.primitive()


def is_totally_real(field: NumberField) -> bool:
    return field.signature[1] == 0


def rational_field() -> NumberField:
    return NumberField(QPoly([0, 1]), name="Q")
