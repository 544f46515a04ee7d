"""Height bounds and solution-count bounds for Thue equations with a CM root."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath
import sympy

from .balls import at_iv_precision, frac_interval
from .enumeration import roots_of_unity
from .fields import FieldElem, FieldError, NumberField
from .forms import BinaryForm
from .heights import HEIGHT_PREC, HeightValue, absolute_height, enclose, form_height

iv = mpmath.iv


class Case(str, enum.Enum):
    BOTH_UNIT_LEAD = "both-unit-lead"
    X_UNIT_LEAD = "x-unit-lead"
    GENERAL = "general"


@dataclass
class BoundReport:
    case: Case
    omega1: HeightValue
    omega2: HeightValue
    count_bound: int | None = None
    unit_case: bool = False
    w: int | None = None

    def as_dict(self) -> dict:
        return {
            "case": self.case.value,
            "omega1": certified_str(self.omega1),
            "omega2": certified_str(self.omega2),
            "omega1_exact": None if self.omega1.exact is None else str(self.omega1.exact),
            "omega2_exact": None if self.omega2.exact is None else str(self.omega2.exact),
            "count_bound": None if self.count_bound is None else str(self.count_bound),
            "unit_case": self.unit_case,
            "w": self.w,
        }


def certified_str(h: HeightValue, digits: int = 20) -> str:
    """Decimal midpoint with a certified error radius, e.g. '76.1 +/- 1e-18'."""
    with mpmath.workprec(200):
        lo, hi = mpmath.mpf(h.value.a), mpmath.mpf(h.value.b)
        mid = (lo + hi) / 2
        rad = (hi - lo) / 2
        s = mpmath.nstr(mid, digits)
        # rounding the midpoint to `digits` places adds at most one unit in the last place
        err = rad + abs(mid) * mpmath.mpf(10) ** (-digits + 1)
        return f"{s} +/- {mpmath.nstr(err, 3)}"


def _is_pm_one(a: FieldElem) -> bool:
    return a.is_rational() and abs(a.rational()) == 1


def classify_case(form: BinaryForm) -> Case:
    # a_n = +-1 alone gets no case of its own; such forms fall in the general case
    if _is_pm_one(form.a0):
        return Case.BOTH_UNIT_LEAD if _is_pm_one(form.an) else Case.X_UNIT_LEAD
    return Case.GENERAL


def _ipow(x: mpmath.iv.mpf, e: Fraction) -> mpmath.iv.mpf:
    if e == 0:
        return iv.mpf(1)
    if e.denominator == 1 and e > 0:
        return x ** int(e)
    return iv.exp(iv.log(x) * frac_interval(e))


class _Product:
    """Running product of certified reals, exact while every factor is exact."""

    def __init__(self, c: int):
        self.value = frac_interval(Fraction(c))
        self.exact = sympy.Integer(c)

    def mul(self, h: HeightValue, e: Fraction):
        self.value = self.value * _ipow(h.value, e)
        if self.exact is not None and h.exact is not None:
            self.exact = self.exact * sympy.Pow(h.exact, sympy.Rational(e.numerator, e.denominator))
        else:
            self.exact = None

    def result(self) -> HeightValue:
        if self.exact is not None:
            ex = self.exact
            return HeightValue(enclose(ex), ex, int(ex) if ex.is_Integer else None)
        return HeightValue(self.value)


def _abs_norm(a: FieldElem) -> HeightValue:
    q = abs(a.norm())
    e = sympy.Rational(q.numerator, q.denominator)
    return HeightValue(frac_interval(q), e, int(e) if e.is_Integer else None)


@at_iv_precision(HEIGHT_PREC)
def omega(form: BinaryForm, b: FieldElem, field: NumberField | None = None) -> BoundReport:
    """Omega_1 and Omega_2 with H(x) < Omega_1, H(y) < Omega_2 for every solution."""
    field = field or form.field
    b = field(b)
    if b.is_zero():
        raise FieldError("right-hand side must be nonzero")
    n, d = form.degree, field.degree
    case = classify_case(form)
    hb = absolute_height(b)
    nb = _abs_norm(b)
    hf, hgamma = form_height(form)
    inv_n = Fraction(1, n)

    o1 = _Product(32 if case == Case.BOTH_UNIT_LEAD else 2 ** 9)
    o2 = _Product(32)
    for p in (o1, o2):
        p.mul(hb, inv_n)
    if case == Case.BOTH_UNIT_LEAD:
        o1.mul(hf, 1 + inv_n)
        o1.mul(nb, Fraction(2, d))
        o2 = None
    elif case == Case.X_UNIT_LEAD:
        o1.mul(hf, 2 + inv_n)
        o1.mul(nb, Fraction(4, d))
        o2.mul(hf, 1 + inv_n)
        o2.mul(nb, Fraction(2, d))
    else:
        ha0 = absolute_height(form.a0)
        na0 = _abs_norm(form.a0)
        o1.mul(hgamma, Fraction(2 * n + 1))
        o1.mul(nb, Fraction(4, d))
        o2.mul(hgamma, Fraction(n + 1))
        o2.mul(nb, Fraction(2, d))
        for p in (o1, o2):
            p.mul(ha0, Fraction(n - 1))
            p.mul(na0, Fraction(2 * (n - 1), d))
    r1 = o1.result()
    r2 = r1 if o2 is None else o2.result()
    return BoundReport(case, r1, r2)


def count_bound(form: BinaryForm, b: FieldElem, field: NumberField | None = None,
                cm_field: NumberField | None = None, w: int | None = None) -> tuple[int, bool, int | None]:
    """(bound on the number of solutions, unit case?, w).

    For a unit b this is 2wn with w the number of roots of unity in the CM
    field; otherwise 72 * 4^(dn) * |N_K(b)|^(2n).
    """
    field = field or form.field
    b = field(b)
    n, d = form.degree, field.degree
    nb = abs(b.norm())
    if nb == 1:
        if w is None:
            if cm_field is None:
                raise ValueError("the unit case needs the CM field (or w)")
            w = len(roots_of_unity(cm_field))
        return 2 * w * n, True, w
    if nb.denominator != 1:
        raise FieldError("b is not an algebraic integer")
    return 72 * 4 ** (d * n) * int(nb) ** (2 * n), False, w


def full_report(form: BinaryForm, b: FieldElem, cm_field: NumberField | None = None,
                w: int | None = None) -> BoundReport:
    rep = omega(form, b)
    rep.count_bound, rep.unit_case, rep.w = count_bound(form, b, form.field, cm_field, w)
    return rep


def certified_less(h: HeightValue, bound: HeightValue) -> bool:
    """Certified h < bound; False when it cannot be decided."""
    if h.value.b < bound.value.a:
        return True
    if h.value.a >= bound.value.b:
        return False
    if h.exact is not None and bound.exact is not None:
        return bool(sympy.simplify(bound.exact - h.exact).is_positive)
    return False


def verify_solution_bounds(solutions: Iterable[tuple[FieldElem, FieldElem]], report: BoundReport) -> bool:
    for x, y in solutions:
        # H(0) is never queried; a zero coordinate imposes nothing
        if not x.is_zero() and not certified_less(absolute_height(x), report.omega1):
            return False
        if not y.is_zero() and not certified_less(absolute_height(y), report.omega2):
            return False
    return True
