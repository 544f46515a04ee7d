"""Integral solutions of F(X, Y) = b over a totally real field with a CM root.

Outline: every solution with xy != 0 gives rho = c(x - alpha y) / (x - alpha y),
a unit-circle element of L = K(alpha) whose field height divides |N_L(b)|.
The finitely many such rho determine the ratio x/y; the ratio and
F(x/y, 1) y^n = b then determine y.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import mpmath
import numpy as np
import sympy

from .enumeration import DEFAULT_BUDGET, _gram, roots_of_unity
from .fields import FieldElem, FieldError, NotCMError, NumberField, is_totally_real
from .forms import BinaryForm
from .heights import field_height
from .lattice import BudgetExceeded, lll_gram, short_vectors
from .relative import RelativeCM, compose_extension, kpoly_divmod, kpoly_trim

log = logging.getLogger(__name__)
iv = mpmath.iv


class CertificationError(FieldError):
    """The instance does not satisfy the hypotheses the solver relies on."""


@dataclass
class ThueInstance:
    K: NumberField
    F: BinaryForm
    b: FieldElem
    g: list  # coefficients of g over K, lowest degree first
    budget: int | None = DEFAULT_BUDGET
    strict_paper_mode: bool = False
    precision_bits: int = 64
    name: str = ""

    def __post_init__(self):
        self.b = self.K(self.b)
        self.g = [self.K(c) for c in self.g]


@dataclass
class SolutionSet:
    solutions: list
    complete: bool
    certificate: dict = dc_field(default_factory=dict)
    form: BinaryForm | None = None
    b: FieldElem | None = None

    def __post_init__(self):
        if self.form is not None:
            for x, y in self.solutions:
                if self.form(x, y) != self.b:
                    raise AssertionError(f"({x}, {y}) does not solve F = b")

    def coordinate_pairs(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(_int_coords(x), _int_coords(y)) for x, y in self.solutions]

    def __len__(self):
        return len(self.solutions)


def _int_coords(z: FieldElem) -> tuple[int, ...]:
    return tuple(int(c) for c in z.integral_coords())


def _sort_key(pair):
    x, y = pair
    return (_int_coords(y), _int_coords(x))


def _canonical(pairs) -> list:
    seen = {}
    for x, y in pairs:
        seen.setdefault((x.coords, y.coords), (x, y))
    return sorted(seen.values(), key=_sort_key)


# -- instance certification -------------------------------------------------

def certify_instance(inst: ThueInstance) -> RelativeCM:
    """Check the hypotheses: K totally real, b in O_K nonzero, g | F(X,1), K[x]/(g) CM.

    The returned tower is generated by a_0 alpha, a root of the monic
    reduction of F (when a_0 = 0 the variables are swapped first).
    """
    return _prepare(inst)[2]


def _prepare(inst: ThueInstance):
    K = inst.K
    if not is_totally_real(K):
        raise CertificationError("base field is not totally real")
    if inst.F.field is not K:
        raise CertificationError("form is defined over a different field")
    if inst.b.is_zero():
        raise CertificationError("right-hand side is zero")
    if not inst.b.has_integral_coords():
        raise CertificationError("right-hand side is not in O_K")
    g = kpoly_trim(inst.g)
    if len(g) < 3:
        raise CertificationError("g must have degree at least 2")
    _, rem = kpoly_divmod(inst.F.dehomogenized(), g)
    if rem:
        raise CertificationError("g does not divide F(X,1)")
    work, swapped = inst, False
    if inst.F.a0.is_zero():
        work, swapped = _swap_variables(inst), True
    try:
        rel = compose_extension(K, _scale_g(work.g, work.F.a0))
    except NotCMError as exc:
        raise CertificationError(f"K(alpha) is not a CM field: {exc}") from exc
    except FieldError as exc:
        raise CertificationError(str(exc)) from exc
    return work, swapped, rel


# -- reduction to F(X,1) monic ------------------------------------------------

def reduce_to_monic(form: BinaryForm, b: FieldElem):
    """(F1, b1, backmap) with F1(a0 x, y) = a0^(n-1) F(x, y) and F1(X,1) monic.

    backmap sends a solution (x', y) of F1 = b1 to (x'/a0, y), or to None
    when a0 does not divide x' in O_K.
    """
    a0 = form.a0
    if a0.is_zero():
        raise FieldError("leading coefficient a_0 is zero")
    K = form.field
    n = form.degree
    if a0 == K.one:
        return form, K(b), lambda x, y: (x, y)
    coeffs = [K.one] + [form.coeffs[i] * a0 ** (i - 1) for i in range(1, n + 1)]
    f1 = BinaryForm(K, tuple(coeffs))
    b1 = K(b) * a0 ** (n - 1)
    inv = a0.inverse()

    def backmap(x, y):
        x0 = x * inv
        return (x0, y) if x0.has_integral_coords() else None

    return f1, b1, backmap


def _scale_g(g: Sequence[FieldElem], a0: FieldElem) -> list[FieldElem]:
    """Monic polynomial whose roots are a0 times the roots of g."""
    g = kpoly_trim(g)
    inv_lc = g[-1].inverse()
    g = [c * inv_lc for c in g]
    r = len(g) - 1
    return [g[k] * a0 ** (r - k) for k in range(r + 1)]


def _swap_variables(inst: ThueInstance) -> ThueInstance:
    """F(Y, X) = b; the CM root alpha becomes 1/alpha."""
    form = BinaryForm(inst.K, tuple(reversed(inst.F.coeffs)))
    g = list(reversed(kpoly_trim(inst.g)))
    return ThueInstance(inst.K, form, inst.b, g, inst.budget, inst.strict_paper_mode,
                        inst.precision_bits, inst.name)


# -- Step 1: the unit-circle set -------------------------------------------------

def lambda_modulus(rel: RelativeCM, b: FieldElem, strict_paper_mode: bool = False) -> int:
    """|N_L(b)|, or its square in strict mode."""
    nl = abs(rel.to_L(b).norm())
    if nl.denominator != 1:
        raise FieldError("b is not an algebraic integer")
    nl = int(nl)
    return nl * nl if strict_paper_mode else nl


def _unit_circle_stratum(rel: RelativeCM, m: int, budget: int | None) -> list[FieldElem]:
    """All rho = mu/m with mu in O_L and mu c(mu) = m^2."""
    L = rel.L
    n = L.degree
    if m == 1:
        return roots_of_unity(L, budget)
    gram, exact = _gram(L)
    if not exact:
        raise FieldError("CM field without exact trace form")
    t = lll_gram(gram)
    reduced = [[sum(t[i][a] * gram[a][c] * t[j][c] for a in range(n) if t[i][a]
                    for c in range(n) if t[j][c]) for j in range(n)] for i in range(n)]
    # |sigma(mu)| = m for all sigma puts mu on the shell T2(mu) = n m^2
    target = L(m * m)
    out = []
    for y in short_vectors(reduced, Fraction(n * m * m), budget, shell=True):
        coords = [sum(y[i] * t[i][j] for i in range(n)) for j in range(n)]
        mu = L.from_integral(coords)
        if mu * rel.conj(mu) == target:
            out.append(mu * Fraction(1, m))
    return out


def _stratum_task(args):
    rel, m, budget = args
    try:
        return m, _unit_circle_stratum(rel, m, budget), None
    except BudgetExceeded as exc:
        return m, [], exc.visited


@dataclass
class LambdaResult:
    rhos: list
    modulus: int
    divisors: list
    strata: dict            # H_L(rho) -> number of rho in Lambda with that height
    overflow: list          # divisors whose enumeration hit the budget
    heights: dict = dc_field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.overflow


def enumerate_lambda(rel: RelativeCM, b: FieldElem, budget: int | None = DEFAULT_BUDGET,
                     strict_paper_mode: bool = False, jobs: int = 1,
                     modulus: int | None = None) -> LambdaResult:
    """rho in L minus K with all |sigma(rho)| = 1 and H_L(rho) dividing |N_L(b)|."""
    if modulus is None:
        modulus = lambda_modulus(rel, b, strict_paper_mode)
    divisors = sorted(int(q) for q in sympy.divisors(modulus))
    tasks = [(rel, m, budget) for m in divisors]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_stratum_task, tasks))
        # workers hand back elements of pickled copies of L
        results = [(m, [rel.L(list(r.coords)) for r in rhos], ov) for m, rhos, ov in results]
    else:
        results = [_stratum_task(t) for t in tasks]
    seen = {}
    heights = {}
    overflow = []
    for m, rhos, ov in sorted(results, key=lambda r: r[0]):
        if ov is not None:
            overflow.append(m)
            log.warning("unit-circle enumeration for divisor %d exceeded the budget", m)
        for rho in rhos:
            if rho.coords in seen:
                continue
            h = field_height(rho).exact_int
            if h is None:
                raise ArithmeticError(f"height of unit-circle element {rho} is not an exact integer")
            if modulus % h or rel.in_subfield(rho) is not None:
                continue
            seen[rho.coords] = rho
            heights[rho.coords] = h
    rhos = sorted(seen.values(), key=lambda r: (heights[r.coords], r.coords))
    strata = {m: sum(1 for r in rhos if heights[r.coords] == m) for m in divisors}
    return LambdaResult(rhos, modulus, divisors, strata, overflow,
                        {r.coords: heights[r.coords] for r in rhos})


# -- Step 2: candidate ratios x/y ------------------------------------------------

def xi_set(rel: RelativeCM, rhos: Sequence[FieldElem]):
    """(xi values in K, discarded xi in L minus K).

    xi = (c(alpha) - alpha rho) / (1 - rho), followed by (c(alpha) + alpha) / 2.
    """
    alpha = rel.alpha
    abar = rel.conj(alpha)
    one = rel.L.one
    kept, discarded = [], []
    keys = set()
    for rho in rhos:
        if rho == one:
            raise ValueError("rho = 1 cannot occur")
        xi = (abar - alpha * rho) / (one - rho)
        k = rel.in_subfield(xi)
        if k is None:
            discarded.append(xi)
        elif k.coords not in keys:
            keys.add(k.coords)
            kept.append(k)
    xi0 = rel.in_subfield((abar + alpha) * Fraction(1, 2))
    if xi0 is None:
        raise ArithmeticError("(c(alpha) + alpha)/2 is not in K")
    if xi0.coords not in keys:
        kept.append(xi0)
    return kept, discarded


# -- Step 3: n-th roots in O_K ------------------------------------------------------

def _real_interval(ball) -> mpmath.iv.mpf:
    from .balls import frac_interval
    lo = frac_interval(ball.re - ball.rad).a
    hi = frac_interval(ball.re + ball.rad).b
    return iv.mpf([lo, hi])


def nth_roots_in_ok(c0: FieldElem, n: int, K: NumberField | None = None,
                    start_prec: int = 64, max_prec: int = 4096) -> list[FieldElem]:
    """All y in O_K with y^n = c0, K totally real.

    Each real embedding fixes sigma(y) up to sign; the coordinates
    y_k = sum_sigma sigma(w_k*) sigma(y) are enclosed with interval
    arithmetic, so a sign pattern is discarded only when its enclosure
    excludes every integer vector.
    """
    K = K or c0.field
    c0 = K(c0)
    if c0.is_zero():
        raise ValueError("c0 must be nonzero")
    if n < 1:
        raise ValueError("n must be positive")
    if not c0.has_integral_coords():
        return []
    if K.degree == 1:
        return _rational_roots(c0, n, K)
    duals = K.trace_dual_basis
    prec = max(start_prec, 32)
    pending = None
    found_all = []
    while prec <= max_prec:
        saved = iv.prec
        iv.prec = prec
        try:
            found, undecided = _roots_at(c0, n, K, duals, prec, pending)
        finally:
            iv.prec = saved
        found_all.extend(found)
        if not undecided:
            return sorted(found_all, key=lambda z: _int_coords(z))
        pending = undecided
        prec *= 2
    raise ArithmeticError("n-th root search did not resolve; raise max_prec")


def _rational_roots(c0, n, K):
    q = c0.rational()
    r = sympy.integer_nthroot(abs(int(q)), n)
    if not r[1]:
        return []
    root = int(r[0])
    cands = {root, -root} if n % 2 == 0 else {root if q > 0 else -root}
    return sorted((K(v) for v in cands if Fraction(v) ** n == q), key=lambda z: z.coords)


def _roots_at(c0, n, K, duals, prec, patterns):
    vals = [_real_interval(b) for b in c0.embed(prec)]
    if any(v.a <= 0 <= v.b for v in vals):
        # sign of some embedding not yet resolved; c0 != 0, so more precision fixes it
        return [], patterns or [None]
    roots = []
    for v in vals:
        if v.b < 0:
            if n % 2 == 0:
                return [], []
            roots.append([-_iroot(-v, n)])
        else:
            r = _iroot(v, n)
            roots.append([r, -r] if n % 2 == 0 else [r])
    dual_vals = [[_real_interval(b) for b in w.embed(prec)] for w in duals]
    all_patterns = list(product(*[range(len(r)) for r in roots]))
    if patterns and patterns != [None]:
        all_patterns = patterns
    found, undecided = [], []
    for pat in all_patterns:
        sig = [roots[i][pat[i]] for i in range(len(roots))]
        coords = []
        ok = True
        ambiguous = False
        for w in dual_vals:
            acc = iv.mpf(0)
            for s, yv in zip(w, sig):
                acc = acc + s * yv
            lo, hi = int(mpmath.ceil(acc.a)), int(mpmath.floor(acc.b))
            if lo > hi:
                ok = False
                break
            if lo < hi:
                ambiguous = True
            coords.append(lo)
        if not ok:
            continue
        if ambiguous:
            undecided.append(pat)
            continue
        y = K.from_integral(coords)
        if y ** n == c0:
            found.append(y)
    return found, undecided


def _iroot(x, n):
    if n == 1:
        return x
    return iv.exp(iv.log(x) / n)


def solve_axn(a: FieldElem, b: FieldElem, n: int, K: NumberField | None = None,
              start_prec: int = 64) -> list[FieldElem]:
    """All z in O_K with a z^n = b."""
    K = K or a.field
    a, b = K(a), K(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("a and b must be nonzero")
    return nth_roots_in_ok(b / a, n, K, start_prec)


# -- Step 4 and the driver ------------------------------------------------------------

def solve_thue(inst: ThueInstance, jobs: int = 1, progress: Callable[[str], None] | None = None) -> SolutionSet:
    """Complete list of (x, y) in O_K^2 with F(x, y) = b."""
    say = progress or (lambda msg: log.info(msg))
    work, swapped, rel = _prepare(inst)
    K = work.K
    f1, b1, backmap = reduce_to_monic(work.F, work.b)
    say(f"L = Q[t]/({rel.L.min_poly}), degree {rel.L.degree}")
    lam = enumerate_lambda(rel, b1, work.budget, work.strict_paper_mode, jobs)
    say(f"|Lambda| = {len(lam.rhos)} over divisors {lam.divisors} of {lam.modulus}")
    xis, dropped = xi_set(rel, lam.rhos)
    n = f1.degree
    raw = []
    xi_log = []
    for xi in xis:
        v = f1(xi, K.one)
        entry = {"xi": _coord_str(xi), "F(xi,1)": _coord_str(v) if v.has_integral_coords() else str(v)}
        if v.is_zero():
            entry["y"] = "skipped: F(xi,1) = 0"
            xi_log.append(entry)
            continue
        ys = nth_roots_in_ok(b1 / v, n, K, work.precision_bits)
        entry["y"] = [_coord_str(y) for y in ys]
        xi_log.append(entry)
        for y in ys:
            x = xi * y
            if x.has_integral_coords() and f1(x, y) == b1:
                raw.append((x, y))
    # xy = 0
    an = f1.an
    prec = work.precision_bits
    zero_x = solve_axn(an, b1, n, K, prec) if not an.is_zero() else []
    zero_y = solve_axn(K.one, b1, n, K, prec)
    raw.extend((K.zero, y) for y in zero_x)
    raw.extend((x, K.zero) for x in zero_y)
    sols = []
    for x1, y in raw:
        back = backmap(x1, y)
        if back is None:
            continue
        x, y = back
        if swapped:
            x, y = y, x
        sols.append((x, y))
    sols = _canonical(sols)
    cert = {
        "L_min_poly": [str(c) for c in rel.L.min_poly.coeffs],
        "shift": rel.shift,
        "reduced_to_monic": f1 is not work.F,
        "swapped_variables": swapped,
        "lambda_modulus": lam.modulus,
        "strict_paper_mode": work.strict_paper_mode,
        "divisors_scanned": lam.divisors,
        "lambda_size": len(lam.rhos),
        "lambda_strata": {str(k): v for k, v in lam.strata.items()},
        "lambda": [_coord_str(r) for r in lam.rhos],
        "xi": xi_log,
        "xi_not_in_K": [str(z) for z in dropped],
        "budget_overflow_divisors": lam.overflow,
    }
    return SolutionSet(sols, lam.complete, cert, inst.F, inst.b)


def _coord_str(z: FieldElem) -> list[str]:
    return [str(c) for c in z.integral_coords()]


# -- brute-force oracle --------------------------------------------------------------

def brute_force(inst: ThueInstance, box: int) -> SolutionSet:
    """All solutions whose integral-basis coordinates lie in [-box, box].

    A float64 pass over the real embeddings discards pairs whose value is
    far from sigma(b); survivors are checked exactly.  The tolerance is many
    orders above the rounding error of the float evaluation.
    """
    if box < 0:
        raise ValueError("box must be nonnegative")
    K, form, b = inst.K, inst.F, inst.b
    d, n = K.degree, form.degree
    grid = np.array(list(product(range(-box, box + 1), repeat=d)), dtype=np.int64)
    basis_emb = np.array([[float(mpmath.mpf(v.real)) for v in w.approx(64)]
                          for w in K.integral_basis()])          # (d basis, d embeddings)
    emb = grid.astype(np.float64) @ basis_emb                   # (N, d embeddings)
    coef = np.array([[float(mpmath.mpf(v.real)) for v in a.approx(64)] for a in form.coeffs])
    target = np.array([float(mpmath.mpf(v.real)) for v in b.approx(64)])
    xpow = [np.ones_like(emb)]
    for _ in range(n):
        xpow.append(xpow[-1] * emb)
    absx = [np.abs(p) for p in xpow]
    found = []
    for yi in range(len(grid)):
        ye = emb[yi]
        val = np.zeros_like(emb)
        scale = np.zeros_like(emb)
        for i in range(n + 1):
            term = coef[i] * ye ** i
            val += term * xpow[n - i]
            scale += np.abs(term) * absx[n - i]
        ok = np.all(np.abs(val - target) <= 1e-7 * scale + 1e-7, axis=1)
        if not ok.any():
            continue
        y = K.from_integral([int(c) for c in grid[yi]])
        for xi in np.nonzero(ok)[0]:
            x = K.from_integral([int(c) for c in grid[xi]])
            if form(x, y) == b:
                found.append((x, y))
    return SolutionSet(_canonical(found), False, {"box": box, "grid_size": len(grid)}, form, b)
