"""Weil heights of algebraic numbers, projective points and binary forms.

Heights are returned as interval enclosures; an exact closed form (a sympy
number) accompanies them whenever it can be decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import mpmath
import sympy

from .balls import _mpf_frac, at_iv_precision, frac_interval
from .enumeration import abs_square, has_exact_trace_form
from .fields import FieldElem, NumberField, minimal_polynomial
from .forms import BinaryForm
from .lattice import hnf_det
from .poly import QPoly, all_roots_nonnegative

iv = mpmath.iv

# bits for interval height computations
HEIGHT_PREC = 128


@dataclass(frozen=True)
class HeightValue:
    value: mpmath.iv.mpf
    exact: sympy.Expr | None = None
    exact_int: int | None = None

    @property
    def upper(self) -> mpmath.mpf:
        return self.value.b

    @property
    def lower(self) -> mpmath.mpf:
        return self.value.a

    def __float__(self) -> float:
        return float(mpmath.mpf(self.value.mid))

    @classmethod
    def from_exact(cls, expr) -> "HeightValue":
        expr = sympy.nsimplify(expr) if not isinstance(expr, sympy.Basic) else expr
        exact_int = int(expr) if expr.is_Integer else None
        return cls(enclose(expr), expr, exact_int)


def enclose(expr, prec: int = 128) -> mpmath.iv.mpf:
    """Interval enclosure of a real sympy number."""
    expr = sympy.sympify(expr)
    if expr.is_Rational:
        return frac_interval(Fraction(int(expr.p), int(expr.q)))
    # evaluate with guard digits and widen by a relative margin well above the error
    digits = prec * 3 // 10
    val = sympy.N(expr, digits + 10)
    with mpmath.workprec(prec + 40):
        mid = mpmath.mpf(str(val))
        eps = abs(mid) * mpmath.mpf(2) ** (-prec + 8) + mpmath.mpf(2) ** (-prec * 2)
        return iv.mpf([mid - eps, mid + eps])


def _rational_height(q: Fraction) -> int:
    return max(abs(q.numerator), abs(q.denominator))


def _all_conjugates_inside(a: FieldElem, inside: bool) -> bool | None:
    """Exact test of |sigma(a)| <= 1 (inside) or >= 1 (outside) for all sigma.

    None when no exact test is available for this field.
    """
    field = a.field
    balls = a.embed(64)
    if inside and all(b.abs_upper() <= 1 for b in balls):
        return True
    if not inside and all(b.abs_lower() >= 1 for b in balls):
        return True
    if inside and any(b.abs_lower() > 1 for b in balls):
        return False
    if not inside and any(b.abs_upper() < 1 for b in balls):
        return False
    if not has_exact_trace_form(field):
        return None
    w = abs_square(a)
    diff = (field.one - w) if inside else (w - field.one)
    return all_roots_nonnegative(diff.charpoly())


@at_iv_precision(HEIGHT_PREC)
def mahler_measure(p: QPoly) -> mpmath.iv.mpf:
    """Enclosure of |lc| * prod max(1, |root|) for an integer polynomial."""
    from .balls import complex_roots
    acc = frac_interval(abs(p.lc))
    for b in complex_roots(p, 96):
        acc = acc * _max1(b.abs_interval())
    return acc


def _iroot(x: mpmath.iv.mpf, n: int) -> mpmath.iv.mpf:
    return iv.exp(iv.log(x) / n)


def _max1(x: mpmath.iv.mpf) -> mpmath.iv.mpf:
    lo = max(mpmath.mpf(1), x.a)
    hi = max(mpmath.mpf(1), x.b)
    return iv.mpf([lo, hi])


def _field_height_parts(a: FieldElem) -> tuple[mpmath.iv.mpf, sympy.Expr | None, int]:
    """(enclosure of M(P), exact M(P) or None, deg P) for the minimal polynomial P of a."""
    _, prim = minimal_polynomial(a)
    deg = prim.degree
    if a.is_rational():
        h = _rational_height(a.rational())
        return frac_interval(Fraction(h)), sympy.Integer(h), 1
    m = int(prim.lc)
    exact = None
    if _all_conjugates_inside(a, inside=True):
        exact = sympy.Integer(m)
    elif _all_conjugates_inside(a, inside=False):
        exact = sympy.Integer(abs(int(prim.coeffs[0])))
    if exact is not None:
        return enclose(exact), exact, deg
    return mahler_measure(prim), None, deg


@at_iv_precision(HEIGHT_PREC)
def absolute_height(a: FieldElem) -> HeightValue:
    """H(a) = M(P)^(1/deg P), P the primitive integer minimal polynomial."""
    encl, exact, deg = _field_height_parts(a)
    if exact is not None:
        val = sympy.Pow(exact, sympy.Rational(1, deg))
        return HeightValue(enclose(val), val, int(val) if val.is_Integer else None)
    return HeightValue(_iroot(encl, deg) if deg > 1 else encl)


@at_iv_precision(HEIGHT_PREC)
def field_height(a: FieldElem, field: NumberField | None = None) -> HeightValue:
    """H_F(a) = H(a)^[F:Q]; an exact integer when the Mahler measure is exact."""
    field = field or a.field
    encl, exact, deg = _field_height_parts(a)
    e = field.degree // deg if field is a.field else None
    if e is None:
        # a viewed inside a larger field F: [F:Q] / deg P is still an integer
        if field.degree % deg:
            raise ValueError("degree of a does not divide [F:Q]")
        e = field.degree // deg
    if exact is not None:
        val = sympy.Pow(exact, e)
        return HeightValue(enclose(val), val, int(val))
    return HeightValue(encl ** e)


def content_norm(coords: Sequence[FieldElem]) -> Fraction:
    """Norm of the fractional ideal generated by ``coords`` in O_K."""
    field = coords[0].field
    n = field.degree
    ints = [c.integral_coords() for c in coords if not c.is_zero()]
    den = lcm(*(q.denominator for v in ints for q in v))
    gens = []
    basis = field.integral_basis()
    for c in coords:
        if c.is_zero():
            continue
        for w in basis:
            gens.append([int(q * den) for q in (c * w).integral_coords()])
    return Fraction(hnf_det(gens), den ** n)


def _archimedean(coords: Sequence[FieldElem], prec: int = 96):
    """prod_sigma max_i |sigma(x_i)| as (enclosure, exact Fraction or None)."""
    field = coords[0].field
    embedded = [c.embed(prec) for c in coords]
    n = field.degree
    total = iv.mpf(1)
    winners = []
    for s in range(n):
        balls = [e[s] for e in embedded]
        hi = max(b.abs_upper() for b in balls)
        lo = max(b.abs_lower() for b in balls)
        total = total * iv.mpf([frac_interval(lo).a, frac_interval(hi).b])
        # a coordinate wins when its lower bound beats every other upper bound,
        # or when it is rational and nobody can exceed it
        win = None
        for i, b in enumerate(balls):
            if b.rad == 0 and b.im == 0 and all(o.abs_upper() <= abs(b.re) for o in balls):
                win = i
                break
        if win is None:
            for i, b in enumerate(balls):
                if all(j == i or b.abs_lower() >= o.abs_upper() for j, o in enumerate(balls)):
                    win = i
                    break
        winners.append(win)
    exact = None
    if all(w is not None for w in winners):
        exact = Fraction(1)
        for w in set(winners):
            group = [s for s in range(n) if winners[s] == w]
            x = coords[w]
            if x.is_rational():
                exact *= abs(x.rational()) ** len(group)
            elif len(group) == n:
                exact *= abs(x.norm())
            else:
                exact = None
                break
    if exact is not None:
        total = frac_interval(exact)
    return total, exact


@at_iv_precision(HEIGHT_PREC)
def point_field_height(coords: Sequence[FieldElem]) -> HeightValue:
    """H_K of the projective point with the given coordinates."""
    if all(c.is_zero() for c in coords):
        raise ValueError("the zero vector is not a projective point")
    field = coords[0].field
    arch, exact = _archimedean(coords)
    fin = content_norm(coords)
    value = arch / frac_interval(fin)
    if exact is not None:
        q = exact / fin
        e = sympy.Rational(q.numerator, q.denominator)
        return HeightValue(frac_interval(q), e, int(e) if e.is_Integer else None)
    return HeightValue(value)


@at_iv_precision(HEIGHT_PREC)
def point_height(coords: Sequence[FieldElem], field: NumberField | None = None) -> HeightValue:
    """Absolute height H = H_K^(1/[K:Q]) of a projective point."""
    coords = list(coords)
    if field is not None:
        coords = [field(c) for c in coords]
    hk = point_field_height(coords)
    d = coords[0].field.degree
    if hk.exact is not None:
        val = sympy.Pow(hk.exact, sympy.Rational(1, d))
        return HeightValue(enclose(val), val, int(val) if val.is_Integer else None)
    return HeightValue(_iroot(hk.value, d) if d > 1 else hk.value)


@at_iv_precision(HEIGHT_PREC)
def form_height(form: BinaryForm) -> tuple[HeightValue, HeightValue]:
    """(H(F), H(Gamma)) with Gamma = (1 : a_0 : ... : a_n)."""
    coeffs = list(form.coeffs)
    return point_height(coeffs), point_height([form.field.one] + coeffs)


@at_iv_precision(HEIGHT_PREC)
def root_height_bound(form: BinaryForm) -> HeightValue:
    """2 * H(F)^(1/2): the bound for the height of a non-real root of F(X,1)."""
    hf, _ = form_height(form)
    if hf.exact is not None:
        val = 2 * sympy.sqrt(hf.exact)
        return HeightValue(enclose(val), val, int(val) if val.is_Integer else None)
    return HeightValue(2 * iv.sqrt(hf.value))


def coordinate_bound_from_height(field: NumberField, height) -> Fraction:
    """Bound on integral-basis coordinates of algebraic integers z with H(z) <= height.

    Every |sigma(z)| <= height^d; coordinates are recovered with the
    trace-dual basis, v_k = Tr(z w_k*), so |v_k| <= sum_sigma |sigma(w_k*)| * height^d.
    """
    if isinstance(height, HeightValue):
        h = _mpf_frac(height.value.b)
    elif isinstance(height, float):
        h = Fraction(str(height))
    else:
        h = Fraction(height)
    if h < 1:
        raise ValueError("height bound must be >= 1")
    worst = Fraction(0)
    for dual in field.trace_dual_basis:
        worst = max(worst, sum((b.abs_upper() for b in dual.embed(64)), Fraction(0)))
    return worst * h ** field.degree
