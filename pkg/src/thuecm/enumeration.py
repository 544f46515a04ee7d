"""Algebraic integers of bounded size and roots of unity."""
from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy

from .automorphism import complex_conjugation
from .fields import FieldElem, NotCMError, NumberField
from .lattice import BudgetExceeded, lll_gram, short_vectors
from .poly import all_roots_nonnegative

DEFAULT_BUDGET = 2_000_000


def _as_fraction(b) -> Fraction:
    if isinstance(b, float):
        return Fraction(str(b))
    return Fraction(b)


def has_exact_trace_form(field: NumberField) -> bool:
    if field.signature[1] == 0:
        return True
    if field.signature[0] == 0 and field.conjugation is None:
        try:
            complex_conjugation(field)
        except NotCMError:
            return False
    return field.conjugation is not None


def abs_square(z: FieldElem) -> FieldElem:
    """z * c(z): the totally real element whose embeddings are |sigma(z)|^2."""
    field = z.field
    if field.signature[1] == 0:
        return z * z
    return z * field.conjugation(z)


def _gram(field: NumberField) -> tuple[list[list[Fraction]], bool]:
    if has_exact_trace_form(field):
        return field.trace_form(), True
    # numeric Gram of sum |sigma(z)|^2, rounded to a nearby rational matrix
    basis = field.integral_basis()
    vals = [b.approx(96) for b in basis]
    n = field.degree
    g = [[Fraction(0)] * n for _ in range(n)]
    with mpmath.workprec(96):
        for i in range(n):
            for j in range(n):
                s = mpmath.fsum(vals[i][k] * mpmath.conj(vals[j][k]) for k in range(n))
                g[i][j] = Fraction(str(mpmath.nstr(s.real, 25)))
    return g, False


def within_bound(z: FieldElem, bound, exact: bool | None = None) -> bool:
    """True iff |sigma(z)| <= bound for every embedding sigma."""
    bound = _as_fraction(bound)
    balls = z.embed(64)
    if all(b.abs_upper() <= bound for b in balls):
        return True
    if any(b.abs_lower() > bound for b in balls):
        return False
    if exact is None:
        exact = has_exact_trace_form(z.field)
    if not exact:
        for prec in (128, 256, 512, 1024):
            balls = z.embed(prec)
            if all(b.abs_upper() <= bound for b in balls):
                return True
            if any(b.abs_lower() > bound for b in balls):
                return False
        raise ArithmeticError("boundary case undecidable without an exact trace form")
    w = abs_square(z)
    return all_roots_nonnegative((z.field(bound * bound) - w).charpoly())


def enumerate_bounded_integers(field: NumberField, bound, budget: int | None = DEFAULT_BUDGET,
                               t2_only: bool = False) -> list[FieldElem]:
    """Every z in O_F with |sigma(z)| <= bound for all embeddings, sorted.

    Candidates come from a Fincke-Pohst sweep of the ellipsoid
    sum |sigma(z)|^2 <= d * bound^2 over the LLL-reduced integral basis;
    each candidate is then checked embedding by embedding.  With
    ``t2_only`` the ellipsoid points themselves are returned.
    """
    bound = _as_fraction(bound)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    n = field.degree
    gram, exact = _gram(field)
    t = lll_gram(gram)
    reduced = [[sum(t[i][a] * gram[a][b] * t[j][b] for a in range(n) if t[i][a]
                    for b in range(n) if t[j][b]) for j in range(n)] for i in range(n)]
    radius = n * bound * bound
    if not exact:
        radius = radius * (1 + Fraction(1, 10**12)) + Fraction(1, 10**12)
    out = []
    for y in short_vectors(reduced, radius, budget):
        coords = [sum(y[i] * t[i][j] for i in range(n)) for j in range(n)]
        z = field.from_integral(coords)
        if t2_only or within_bound(z, bound, exact):
            out.append((coords, z))
    out.sort(key=lambda cz: (sum(abs(c) for c in cz[0]), cz[0]))
    return [z for _, z in out]


def _order_candidates(degree: int) -> list[int]:
    """All k with phi(k) dividing the field degree."""
    # phi(k) >= sqrt(k/2), so k <= 2 * degree^2 suffices
    return [k for k in range(1, 2 * degree * degree + 3)
            if degree % int(sympy.totient(k)) == 0]


def element_order(z: FieldElem) -> int | None:
    for k in _order_candidates(z.field.degree):
        if (z ** k) == z.field.one:
            return k
    return None


def roots_of_unity(field: NumberField, budget: int | None = DEFAULT_BUDGET) -> list[FieldElem]:
    """All roots of unity in ``field``; w is the length of the list.

    Nonzero algebraic integers with every conjugate in the closed unit disc
    are exactly the roots of unity (Kronecker).
    """
    elems = [z for z in enumerate_bounded_integers(field, 1, budget) if not z.is_zero()]
    w = len(elems)
    one = field.one
    for z in elems:
        if z ** w != one:
            raise ArithmeticError(f"{z} is not a {w}-th root of unity")
    keys = {e.coords for e in elems}
    for a in elems:
        for b in elems:
            if (a * b).coords not in keys:
                raise ArithmeticError("roots of unity are not closed under multiplication")
    return sorted(elems, key=lambda z: (element_order(z), z.coords))
