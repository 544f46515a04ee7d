"""Relative CM extensions L = K(alpha) of a totally real field K."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automorphism import Automorphism, complex_conjugation, is_cm_field
from .fields import FieldElem, FieldError, NotCMError, NumberField, is_totally_real
from .lattice import solve_rational
from .orders import maximal_order_basis
from .poly import QPoly, is_irreducible, is_squarefree, lagrange_interpolate, resultant

# Polynomials over a number field are plain lists of FieldElem, lowest degree first.
KPoly = list


def kpoly_trim(p: KPoly) -> KPoly:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def kpoly_eval(p: KPoly, x: FieldElem) -> FieldElem:
    acc = x.field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def kpoly_mul(a: KPoly, b: KPoly) -> KPoly:
    if not a or not b:
        return []
    field = a[0].field
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return kpoly_trim(out)


def kpoly_divmod(a: KPoly, b: KPoly) -> tuple[KPoly, KPoly]:
    b = kpoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = kpoly_trim(a)
    if len(rem) < len(b):
        return [], rem
    field = b[0].field
    inv_lc = b[-1].inverse()
    quot = [field.zero] * (len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        q = rem[k + len(b) - 1] * inv_lc
        quot[k] = q
        if not q.is_zero():
            for j, c in enumerate(b):
                rem[k + j] = rem[k + j] - q * c
    return kpoly_trim(quot), kpoly_trim(rem[:len(b) - 1])


def kpoly_gcd(a: KPoly, b: KPoly) -> KPoly:
    a, b = kpoly_trim(a), kpoly_trim(b)
    while b:
        a, b = b, kpoly_divmod(a, b)[1]
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def kpoly_monic(p: KPoly) -> KPoly:
    p = kpoly_trim(p)
    inv = p[-1].inverse()
    return [c * inv for c in p]


@dataclass
class RelativeCM:
    """Tower K <= L = K(alpha) with L a CM field.

    ``k_to_l`` is the image of K's generator in L; ``conj`` is complex
    conjugation on L; ``g`` is the monic minimal polynomial of alpha over K.
    """

    K: NumberField
    L: NumberField
    k_to_l: FieldElem
    alpha: FieldElem
    conj: Automorphism
    g: KPoly
    shift: int

    def __post_init__(self):
        powers = [self.L.one]
        for _ in range(1, self.K.degree):
            powers.append(powers[-1] * self.k_to_l)
        self._k_powers = powers
        # rows: power-basis coordinates of theta^j, j < [K:Q]
        self._embed_matrix = [[powers[j].coords[i] for j in range(self.K.degree)]
                              for i in range(self.L.degree)]

    @property
    def relative_degree(self) -> int:
        return self.L.degree // self.K.degree

    def to_L(self, z: FieldElem) -> FieldElem:
        if z.field is self.L:
            return z
        if z.field is not self.K:
            raise FieldError("element is not in the base field")
        acc = self.L.zero
        for c, pw in zip(z.coords, self._k_powers):
            if c:
                acc = acc + pw * c
        return acc

    def in_subfield(self, z: FieldElem) -> FieldElem | None:
        return in_subfield(z, self)


def in_subfield(z: FieldElem, rel: RelativeCM) -> FieldElem | None:
    """Preimage of ``z`` under K -> L, or None when z is not in K."""
    if z.field is rel.K:
        return z
    if rel.K.degree == 1:
        return rel.K(z.coords[0]) if z.is_rational() else None
    sol = solve_rational(rel._embed_matrix, list(z.coords))
    return None if sol is None else rel.K(sol)


def _norm_poly(K: NumberField, g: KPoly, k: int) -> QPoly:
    """N_{K/Q}(g(x - k*theta)) as a polynomial in x, by interpolation."""
    f = K.min_poly
    r = len(g) - 1
    n = K.degree * r
    xs = list(range(n + 1))
    ys = []
    for x0 in xs:
        # h(t) = sum_i g_i(t) (x0 - k t)^i  as a polynomial in t
        h = QPoly()
        lin = QPoly([x0, -k])
        pw = QPoly([1])
        for gi in g:
            h = h + gi.as_poly() * pw
            pw = pw * lin
        ys.append(resultant(f, h) if K.degree > 1 else h(K.gen.coords[0]))
    return lagrange_interpolate(xs, ys)


def compose_extension(K: NumberField, g: Sequence[FieldElem], max_shift: int = 50) -> RelativeCM:
    """Absolute field L = K(alpha) for a root alpha of ``g``, with conjugation.

    The generator of L is alpha + k*theta for the least k >= 0 whose norm
    polynomial is squarefree.  g is irreducible over K exactly when that
    squarefree norm is irreducible over Q.  Raises FieldError / NotCMError.
    """
    if not is_totally_real(K):
        raise FieldError("base field is not totally real")
    g = kpoly_monic([K(c) for c in g])
    if len(g) < 2:
        raise FieldError("g must be nonconstant")
    for k in range(max_shift + 1):
        R = _norm_poly(K, g, k)
        if is_squarefree(R):
            break
    else:
        raise FieldError("no squarefree primitive element found")
    if not is_irreducible(R):
        raise FieldError("g is reducible over K")
    if not R.is_integral():
        raise FieldError("g does not have algebraic-integer roots")
    raw = NumberField(R)
    theta, alpha = _tower_generators(K, g, k, raw)
    start = []
    ob = K.integral_basis()
    apow = raw.one
    for _ in range(len(g) - 1):
        for w in ob:
            start.append(list((_eval_in(w, theta) * apow).coords))
        apow = apow * alpha
    L = NumberField(R, maximal_order_basis(raw, start))
    theta, alpha = L(list(theta.coords)), L(list(alpha.coords))
    if not is_cm_field(L):
        raise NotCMError("K(alpha) is not a CM field")
    conj = complex_conjugation(L)
    if conj(theta) != theta:
        raise NotCMError("conjugation does not fix K")
    rel = RelativeCM(K, L, theta, alpha, conj, g, k)
    if not kpoly_eval([rel.to_L(c) for c in g], alpha).is_zero():
        raise ArithmeticError("alpha is not a root of g")
    return rel


def _eval_in(z: FieldElem, theta: FieldElem) -> FieldElem:
    acc = theta.field.zero
    for c in reversed(z.coords):
        acc = acc * theta + c
    return acc


def _tower_generators(K: NumberField, g: KPoly, k: int, L: NumberField) -> tuple[FieldElem, FieldElem]:
    """Images of theta and alpha in L = Q(gamma), gamma = alpha + k*theta.

    theta is the common root of f_K(t) and g(gamma - k t) in L.
    """
    gamma = L.gen
    if K.degree == 1:
        theta = L(K.gen.coords[0])
        return theta, gamma - theta * k
    fk = [L(c) for c in K.min_poly.coeffs]
    lin = [gamma, L(-k)]
    h: KPoly = []
    pw: KPoly = [L.one]
    for gi in g:
        term = [L(c) for c in gi.coords]
        h = _kpoly_add(h, kpoly_mul(term, pw))
        pw = kpoly_mul(pw, lin)
    d = kpoly_gcd(fk, h)
    if len(d) != 2:
        raise ArithmeticError("tower gcd is not linear")
    theta = -d[0]
    return theta, gamma - theta * k


def _kpoly_add(a: KPoly, b: KPoly) -> KPoly:
    if not a:
        return list(b)
    if not b:
        return list(a)
    field = (a or b)[0].field
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else field.zero) + (b[i] if i < len(b) else field.zero)
           for i in range(n)]
    return kpoly_trim(out)
