import pytest

from thuecm import NotCMError, QPoly, make_field
from thuecm.automorphism import complex_conjugation, is_cm_field


def test_conjugation_on_gaussian_field():
    K = make_field(QPoly([1, 0, 1]))
    c = complex_conjugation(K)
    assert c(K.gen) == -K.gen
    assert c.compose(c).is_identity()
    assert is_cm_field(K)


def test_conjugation_zeta8():
    K = make_field(QPoly([1, 0, 0, 0, 1]))
    c = complex_conjugation(K)
    z = K.gen
    assert c(z) == -z ** 3                      # conj(zeta) = zeta^-1 = -zeta^3
    for a, b in zip(c(z + 2 * z ** 2).embed(64), (z + 2 * z ** 2).embed(64)):
        assert a.overlaps(b.conjugate())


def test_non_cm_fields():
    assert not is_cm_field(make_field(QPoly([-2, 0, 1])))          # real
    assert not is_cm_field(make_field(QPoly([1, 1, 0, 0, 1])))     # totally imaginary, S4
    with pytest.raises(NotCMError):
        complex_conjugation(make_field(QPoly([-2, 0, 0, 1])))
