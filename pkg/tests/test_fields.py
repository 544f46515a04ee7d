from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from thuecm import FieldError, QPoly, make_field, minimal_polynomial
from thuecm.fields import is_totally_real

import cases

coord = st.integers(-6, 6)


@pytest.fixture(scope="module")
def cubic():
    return make_field(QPoly([-2, 0, 0, 1]))


def test_make_field_validation():
    with pytest.raises(FieldError):
        make_field(QPoly([-1, 0, 2]))          # not monic
    with pytest.raises(FieldError):
        make_field(QPoly([-1, 0, 1]))          # reducible
    with pytest.raises(FieldError):
        make_field(QPoly([Fraction(1, 2), 0, 1]))


def test_signature_and_total_reality(cubic):
    assert cases.quadratic(2).signature == (2, 0)
    assert cubic.signature == (1, 1)
    assert is_totally_real(cases.k_p(13))
    assert not is_totally_real(make_field(QPoly([1, 0, 1])))


def test_arithmetic_in_q_sqrt2(k2):
    s = k2.gen
    assert s * s == k2(2)
    a = 3 + 2 * s
    assert a.norm() == 1 and a.trace() == 6
    assert a.inverse() == 3 - 2 * s
    assert (1 + s) ** -2 == (1 + s).inverse() ** 2
    assert (a / (1 + s)) * (1 + s) == a


def test_minimal_polynomial(k2):
    s = k2.gen
    mp, prim = minimal_polynomial((1 + s) / 2)
    assert prim == QPoly([-1, -4, 4])
    assert minimal_polynomial(k2(Fraction(2, 3)))[1] == QPoly([-2, 3])


def test_embeddings_enclose_values(k2):
    s = k2.gen
    balls = (1 + s).embed(80)
    vals = sorted([1 - sympy.sqrt(2), 1 + sympy.sqrt(2)], key=float)
    for b, v in zip(sorted(balls, key=lambda b: b.re), vals):
        assert abs(b.re - Fraction(str(sympy.N(v, 40)))) <= b.rad + Fraction(1, 10 ** 35)


@settings(max_examples=80, deadline=None)
@given(st.lists(coord, min_size=3, max_size=3), st.lists(coord, min_size=3, max_size=3))
def test_norm_multiplicative_and_inverse(u, v):
    K = make_field(QPoly([-2, 0, 0, 1]))
    a, b = K(u), K(v)
    assert (a * b).norm() == a.norm() * b.norm()
    if not a.is_zero():
        assert a * a.inverse() == K.one
        assert a.norm() == sympy.Matrix(a.mult_matrix()).det()


def test_discriminant_and_integral_basis():
    k5 = make_field(QPoly([-5, 0, 1]))
    assert k5.discriminant == 5
    half = k5.integral_basis()[1]
    assert half == (1 + k5.gen) / 2
    assert cases.quadratic(2).discriminant == 8
    assert make_field(QPoly([-2, 0, 0, 1])).discriminant == -108


def test_integral_coordinates(k2):
    z = k2.from_integral([3, -4])
    assert z.integral_coords() == [3, -4]
    assert z.has_integral_coords() and z.is_algebraic_integer()
    assert not (z / 2).has_integral_coords()
