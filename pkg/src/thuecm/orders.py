"""Integral bases: verification and p-maximal enlargement (Round 2)."""
from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from typing import Sequence

import sympy

from .lattice import hnf, invert, kernel_mod_p
from .poly import det

log = logging.getLogger(__name__)


def _coords_in(basis_inv, elem) -> list[Fraction]:
    n = len(basis_inv)
    c = elem.coords
    return [sum((c[i] * basis_inv[i][j] for i in range(n) if c[i]), Fraction(0)) for j in range(n)]


def verify_integral_basis(field, basis: Sequence) -> bool:
    """Check that ``basis`` is a Z-basis of an order of ``field``.

    Conditions: d elements, linearly independent, 1 in the integer span,
    closed under multiplication, all algebraic integers, and the squared
    index over Z[theta] divides the power-basis discriminant.
    """
    n = field.degree
    if len(basis) != n:
        return False
    rows = [list(b.coords) for b in basis]
    d = det(rows)
    if d == 0:
        return False
    inv = invert(rows)
    if any(c.denominator != 1 for c in _coords_in(inv, field.one)):
        return False
    for b in basis:
        if not b.is_algebraic_integer():
            return False
    for i in range(n):
        for j in range(i, n):
            if any(c.denominator != 1 for c in _coords_in(inv, basis[i] * basis[j])):
                return False
    index = 1 / abs(d)
    if index.denominator != 1:
        return False
    disc = field.disc_power_basis
    return (disc / (index * index)).denominator == 1


def _structure_constants(field, basis_rows) -> list[list[list[int]]]:
    inv = invert(basis_rows)
    elems = [field(list(r)) for r in basis_rows]
    n = len(elems)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            cs = _coords_in(inv, elems[i] * elems[j])
            if any(c.denominator != 1 for c in cs):
                raise ArithmeticError("basis is not multiplicatively closed")
            table[i][j] = table[j][i] = [int(c) for c in cs]
    return table


def _mul_mod(u, v, table, p):
    n = len(u)
    out = [0] * n
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            f = ui * vj
            row = table[i][j]
            for k in range(n):
                if row[k]:
                    out[k] += f * row[k]
    return [x % p for x in out]


def _pow_mod(u, e, table, p, one):
    result, base = list(one), list(u)
    while e:
        if e & 1:
            result = _mul_mod(result, base, table, p)
        base = _mul_mod(base, base, table, p)
        e >>= 1
    return result


def _round2_step(field, basis_rows, p) -> list[list[Fraction]] | None:
    """One enlargement at p; None when the order is already p-maximal."""
    n = field.degree
    table = _structure_constants(field, basis_rows)
    inv = invert(basis_rows)
    one = [int(c) for c in _coords_in(inv, field.one)]
    q = p
    while q < n:
        q *= p
    frob = [_pow_mod([int(i == j) for j in range(n)], q, table, p, one) for i in range(n)]
    rad = kernel_mod_p(frob, p)
    gens = [list(v) for v in rad] + [[p * int(i == j) for j in range(n)] for i in range(n)]
    h = hnf(gens)
    hinv = invert(h)
    # x in O/pO with x * I_p contained in p * I_p
    big = []
    for a in range(n):
        row = []
        for hl in h:
            prod = [0] * n
            for k, hk in enumerate(hl):
                if hk:
                    for m, c in enumerate(table[a][k]):
                        prod[m] += hk * c
            ycoords = [sum((prod[i] * hinv[i][j] for i in range(n) if prod[i]), Fraction(0))
                       for j in range(n)]
            if any(c.denominator != 1 for c in ycoords):
                raise ArithmeticError("radical is not an ideal")
            row.extend(int(c) % p for c in ycoords)
        big.append(row)
    u = kernel_mod_p(big, p)
    if not u:
        return None
    gens = [list(v) for v in u] + [[p * int(i == j) for j in range(n)] for i in range(n)]
    h2 = hnf(gens)
    new_rows = []
    for r in h2:
        vec = [Fraction(0)] * n
        for k, c in enumerate(r):
            if c:
                for j in range(n):
                    vec[j] += Fraction(c, p) * basis_rows[k][j]
        new_rows.append(vec)
    return new_rows


def _primes_to_check(disc: Fraction) -> list[int]:
    d = abs(int(disc))
    return sorted(p for p, e in sympy.factorint(d).items() if e >= 2)


def canonical_basis(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Hermite-reduced basis whose i-th element has degree i and the first is 1."""
    n = len(rows)
    den = lcm(*(c.denominator for r in rows for c in r))
    ints = [[int(c * den) for c in reversed(r)] for r in rows]
    h = hnf(ints)
    out = [[Fraction(c, den) for c in reversed(r)] for r in reversed(h)]
    assert len(out) == n
    return out


def maximal_order_basis(field, start: Sequence[Sequence[Fraction]] | None = None) -> list[list[Fraction]]:
    """Integral basis of the maximal order, as power-basis coordinate rows.

    ``start`` (optional) spans an order to enlarge; defaults to Z[theta].
    """
    n = field.degree
    rows = [list(map(Fraction, r)) for r in (start or
            [[int(i == j) for j in range(n)] for i in range(n)])]
    if n == 1:
        return [[Fraction(1)]]
    d = det(rows)
    disc = field.disc_power_basis * d * d
    for p in _primes_to_check(disc):
        while True:
            bigger = _round2_step(field, rows, p)
            if bigger is None:
                break
            log.debug("enlarged order at p=%d", p)
            rows = bigger
    return canonical_basis(rows)


def is_maximal(field) -> bool:
    rows = [list(r) for r in field.basis]
    if field.degree == 1:
        return True
    for p in _primes_to_check(field.discriminant):
        if _round2_step(field, rows, p) is not None:
            return False
    return True
