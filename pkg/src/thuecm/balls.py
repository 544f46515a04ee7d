"""Complex balls with dyadic centres and certified root isolation."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import wraps
from math import isqrt

import mpmath

from .poly import QPoly, is_squarefree


def dyadic(x, prec: int) -> Fraction:
    """Nearest dyadic rational with denominator 2**prec."""
    return Fraction(round(Fraction(x) * (1 << prec)), 1 << prec)


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    """A dyadic upper bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("negative argument")
    scaled = q * (1 << (2 * bits))
    s = isqrt(scaled.numerator // scaled.denominator)
    while Fraction(s * s) < scaled:
        s += 1
    return Fraction(s, 1 << bits)


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    if q <= 0:
        return Fraction(0)
    scaled = q * (1 << (2 * bits))
    s = isqrt(scaled.numerator // scaled.denominator)
    return Fraction(s, 1 << bits)


@dataclass(frozen=True)
class ComplexBall:
    """The closed disc |z - (re + i*im)| <= rad."""

    re: Fraction
    im: Fraction
    rad: Fraction = Fraction(0)

    @classmethod
    def exact(cls, re, im=0) -> "ComplexBall":
        return cls(Fraction(re), Fraction(im), Fraction(0))

    @property
    def mid(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other) -> "ComplexBall":
        other = _ball(other)
        return ComplexBall(self.re + other.re, self.im + other.im, self.rad + other.rad)

    __radd__ = __add__

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.re, -self.im, self.rad)

    def __sub__(self, other) -> "ComplexBall":
        return self + (-_ball(other))

    def __rsub__(self, other) -> "ComplexBall":
        return _ball(other) - self

    def __mul__(self, other) -> "ComplexBall":
        other = _ball(other)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        rad = (self.mid_abs_upper() * other.rad + other.mid_abs_upper() * self.rad
               + self.rad * other.rad)
        return ComplexBall(re, im, rad)

    __rmul__ = __mul__

    def rounded(self, prec: int) -> "ComplexBall":
        """Round the centre to 2**-prec, widening the radius to keep the enclosure."""
        re, im = dyadic(self.re, prec), dyadic(self.im, prec)
        err = abs(re - self.re) + abs(im - self.im)
        rad = self.rad + err
        if rad:
            rad = Fraction(-(-rad.numerator * (1 << prec) // rad.denominator), 1 << prec)
        return ComplexBall(re, im, rad)

    def conjugate(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im, self.rad)

    def mid_abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def mid_abs_upper(self) -> Fraction:
        return sqrt_upper(self.mid_abs2())

    def abs_upper(self) -> Fraction:
        return self.mid_abs_upper() + self.rad

    def abs_lower(self) -> Fraction:
        return max(Fraction(0), sqrt_lower(self.mid_abs2()) - self.rad)

    def contains(self, z) -> bool:
        z = _ball(z)
        d2 = (self.re - z.re) ** 2 + (self.im - z.im) ** 2
        return d2 <= (self.rad - z.rad) ** 2 if self.rad >= z.rad else False

    def overlaps(self, other) -> bool:
        other = _ball(other)
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return d2 <= (self.rad + other.rad) ** 2

    def contains_zero(self) -> bool:
        return self.mid_abs2() <= self.rad ** 2

    def imag_contains_zero(self) -> bool:
        return abs(self.im) <= self.rad

    def abs_interval(self) -> mpmath.iv.mpf:
        lo, hi = frac_interval(self.abs_lower()), frac_interval(self.abs_upper())
        return mpmath.iv.mpf([lo.a, hi.b])

    def __repr__(self) -> str:
        return f"ComplexBall({float(self.re):.6g}{float(self.im):+.6g}i ± {float(self.rad):.3g})"


def _ball(z) -> ComplexBall:
    if isinstance(z, ComplexBall):
        return z
    if isinstance(z, complex):
        return ComplexBall(Fraction(z.real), Fraction(z.imag))
    return ComplexBall(Fraction(z), Fraction(0))


@contextmanager
def iv_precision(bits: int):
    """Run mpmath.iv at no less than ``bits`` of precision."""
    saved = mpmath.iv.prec
    mpmath.iv.prec = max(saved, bits)
    try:
        yield
    finally:
        mpmath.iv.prec = saved


def at_iv_precision(bits: int):
    def deco(fn):
        @wraps(fn)
        def inner(*a, **kw):
            with iv_precision(bits):
                return fn(*a, **kw)
        return inner
    return deco


def frac_interval(q: Fraction) -> mpmath.iv.mpf:
    """Tight interval enclosure of a rational."""
    return mpmath.iv.mpf(q.numerator) / q.denominator


def _approx_roots(p: QPoly, prec: int, start=None) -> list[complex]:
    with mpmath.workprec(prec + 32):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        if start is None:
            roots = mpmath.polyroots(coeffs, maxsteps=200 + 20 * p.degree, extraprec=2 * prec + 64)
        else:
            # Newton polish of previous approximations
            roots = []
            dp = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.derivative().coeffs)]
            for z in start:
                z = mpmath.mpc(z)
                for _ in range(8):
                    z = z - mpmath.polyval(coeffs, z) / mpmath.polyval(dp, z)
                roots.append(z)
        return [mpmath.mpc(r) for r in roots]


def _weierstrass_radii(p: QPoly, mids: list[ComplexBall], bits: int) -> list[Fraction] | None:
    """Inclusion radii n*|W_i| of the Weierstrass corrections at the centres."""
    n = p.degree
    radii = []
    for i, zi in enumerate(mids):
        val = ComplexBall.exact(0)
        for c in reversed(p.coeffs):
            val = val * zi + c
        den = ComplexBall.exact(p.lc)
        for j, zj in enumerate(mids):
            if j != i:
                den = den * (zi - zj)
        # |W|^2 = |val|^2 / |den|^2 with all quantities exact
        if den.mid_abs2() == 0:
            return None
        w2 = val.mid_abs2() / den.mid_abs2()
        radii.append(n * sqrt_upper(w2, bits))
    return radii


def complex_roots(p: QPoly, prec: int = 53) -> list[ComplexBall]:
    """Certified isolating discs for the roots of a squarefree ``p``.

    Each returned ball contains exactly one root and has radius below
    2**-prec.  Centres come from mpmath approximations rounded to dyadics;
    the radii are Weierstrass-correction inclusion radii computed exactly,
    and pairwise disjointness of the discs certifies one root per disc.
    """
    if p.degree < 1:
        return []
    if not is_squarefree(p):
        raise ValueError("complex_roots requires a squarefree polynomial")
    n = p.degree
    work = max(prec, 53)
    approx = None
    for _attempt in range(12):
        approx = _approx_roots(p, work, approx)
        mids = [ComplexBall(dyadic(_mpf_frac(z.real), work + 8), dyadic(_mpf_frac(z.imag), work + 8))
                for z in approx]
        radii = _weierstrass_radii(p, mids, work + 16)
        if radii is None:
            approx, work = None, work * 2
            continue
        balls = [ComplexBall(m.re, m.im, r) for m, r in zip(mids, radii)]
        disjoint = all(not balls[i].overlaps(balls[j]) for i in range(n) for j in range(i + 1, n))
        if disjoint and max(radii) < Fraction(1, 1 << prec):
            return sorted(_snap_real(balls), key=lambda b: (float(b.re), float(b.im)))
        work *= 2
    raise ArithmeticError("root isolation did not converge")


def _snap_real(balls: list[ComplexBall]) -> list[ComplexBall]:
    """Move provably real roots onto the real axis.

    If a disc meets the real axis and its mirror image meets no other disc,
    the conjugate of its root lies in the same disc and so equals the root.
    """
    out = []
    for i, b in enumerate(balls):
        if b.im != 0 and b.imag_contains_zero():
            mirror = b.conjugate()
            if not any(mirror.overlaps(o) for j, o in enumerate(balls) if j != i):
                b = ComplexBall(b.re, Fraction(0), b.rad + abs(b.im))
        out.append(b)
    return out


def _mpf_frac(x) -> Fraction:
    if hasattr(x, "_mpi_"):
        lo, hi = x._mpi_
        if lo != hi:
            raise ValueError("interval is not a single point")
        sign, man, exp, _ = lo
    else:
        sign, man, exp, _ = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    man, exp = (-1) ** sign * int(man), int(exp)
    return Fraction(man * (1 << exp)) if exp >= 0 else Fraction(man, 1 << -exp)
