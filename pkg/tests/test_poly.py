from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from thuecm.poly import (QPoly, all_roots_nonnegative, charpoly, count_real_roots, det, factor_small,
                         is_irreducible, is_squarefree, lagrange_interpolate, poly_gcd, resultant,
                         squarefree_part, sylvester_resultant)

X = sympy.Symbol("x")
small_ints = st.integers(min_value=-9, max_value=9)


def poly_st(min_deg=1, max_deg=5):
    return st.lists(small_ints, min_size=min_deg + 1, max_size=max_deg + 1).filter(
        lambda cs: cs[-1] != 0).map(QPoly)


def to_sympy(p: QPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], X)


def test_basic_arithmetic():
    x = QPoly.x()
    p = (x + 1) * (x - 2)
    assert p == QPoly([-2, -1, 1])
    q, r = divmod(p, x - 2)
    assert q == x + 1 and r.is_zero()
    assert p(3) == 4
    assert p.derivative() == QPoly([-1, 2])
    assert (x ** 2).compose(x + 1) == QPoly([1, 2, 1])
    assert QPoly([2, 4, 6]).primitive() == QPoly([1, 2, 3])
    assert QPoly([Fraction(1, 2), 1]).content() == Fraction(1, 2)


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        QPoly([1, 0, 1]).exact_div(QPoly([1, 1]))


@settings(max_examples=60, deadline=None)
@given(poly_st(), poly_st())
def test_resultant_matches_sylvester_and_sympy(a, b):
    r = resultant(a, b)
    assert r == sylvester_resultant(a, b)
    # sympy's own Sylvester matrix; sympy.resultant may differ in sign by convention
    from sympy.polys.subresultants_qq_zz import sylvester
    ref = sylvester(to_sympy(a).as_expr(), to_sympy(b).as_expr(), X).det()
    assert r == Fraction(int(ref))
    assert abs(r) == abs(Fraction(int(sympy.resultant(to_sympy(a), to_sympy(b)))))


@settings(max_examples=60, deadline=None)
@given(poly_st(), poly_st())
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert (a % g).is_zero() and (b % g).is_zero()
    expected = to_sympy(a).gcd(to_sympy(b)).monic()
    assert to_sympy(g).as_expr() == expected.as_expr()


@settings(max_examples=40, deadline=None)
@given(poly_st(1, 4), st.integers(1, 3))
def test_squarefree_part(p, k):
    sf = squarefree_part(p ** k)
    assert is_squarefree(sf)
    assert sf == squarefree_part(p)


def test_charpoly_and_det():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    cp = charpoly(m)
    assert to_sympy(cp) == sympy.Matrix(m).charpoly(X)
    assert det(m) == sympy.Matrix(m).det()


@settings(max_examples=40, deadline=None)
@given(poly_st(1, 6))
def test_sturm_count_matches_sympy(p):
    sf = squarefree_part(p)
    assert count_real_roots(sf) == len(sympy.real_roots(to_sympy(sf)))


def test_all_roots_nonnegative():
    assert all_roots_nonnegative(QPoly.from_roots([0, 1, 5]))
    assert not all_roots_nonnegative(QPoly.from_roots([-1, 2]))
    assert all_roots_nonnegative(QPoly.from_roots([0, 0]))


def test_factor_small():
    x = QPoly.x()
    p = (x ** 2 - 2) * (x + 1) ** 2
    facs = factor_small(p)
    assert facs == [x + 1, x + 1, x ** 2 - 2]
    assert is_irreducible(x ** 4 + 1)
    assert not is_irreducible(x ** 4 + 4)
    with pytest.raises(ValueError):
        factor_small(x ** 40 + 1, max_degree=32)


def test_lagrange_interpolation_recovers_polynomial():
    p = QPoly([3, -1, 0, 2])
    xs = [0, 1, 2, 5]
    assert lagrange_interpolate(xs, [p(v) for v in xs]) == p
