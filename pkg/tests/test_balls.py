from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from thuecm.balls import ComplexBall, complex_roots, sqrt_lower, sqrt_upper
from thuecm.poly import QPoly, is_squarefree


def test_sqrt_bounds():
    lo, hi = sqrt_lower(Fraction(2), 80), sqrt_upper(Fraction(2), 80)
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo < Fraction(1, 2 ** 70)


def test_ball_arithmetic_contains_exact_results():
    a = ComplexBall(Fraction(1, 3), Fraction(1, 7), Fraction(1, 10 ** 6))
    b = ComplexBall.exact(2, -1)
    prod = (a * b).rounded(40)
    # exact product of the centres must lie inside the rounded ball
    re = Fraction(1, 3) * 2 + Fraction(1, 7)
    im = Fraction(1, 7) * 2 - Fraction(1, 3)
    assert (prod.re - re) ** 2 + (prod.im - im) ** 2 <= prod.rad ** 2
    s = a + b
    assert s.re == Fraction(7, 3) and s.rad >= a.rad


def test_roots_of_x2_minus_2():
    balls = complex_roots(QPoly([-2, 0, 1]), 100)
    assert len(balls) == 2
    for b in balls:
        assert b.im == 0
        assert b.rad < Fraction(1, 2 ** 99)
    assert balls[0].re < 0 < balls[1].re
    assert abs(balls[1].re ** 2 - 2) < Fraction(1, 2 ** 95)


def test_requires_squarefree():
    with pytest.raises(ValueError):
        complex_roots(QPoly([1, 2, 1]))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_balls_contain_sympy_roots(cs):
    p = QPoly(cs)
    if not is_squarefree(p):
        return
    balls = complex_roots(p, 60)
    assert len(balls) == p.degree
    x = sympy.Symbol("x")
    ref = sympy.Poly(list(reversed(cs)), x).nroots(n=40)
    for r in ref:
        z = complex(r)
        # every reference root lies in some ball (up to the reference accuracy)
        assert any(abs(complex(float(b.re), float(b.im)) - z) <= float(b.rad) + 1e-25 + 1e-12 * abs(z)
                   for b in balls)
    # balls are pairwise disjoint
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            assert not balls[i].overlaps(balls[j])


def test_abs_interval_encloses():
    b = ComplexBall(Fraction(3), Fraction(4), Fraction(1, 100))
    iv = b.abs_interval()
    assert iv.a <= 5 <= iv.b
    assert b.abs_lower() <= 5 <= b.abs_upper()
