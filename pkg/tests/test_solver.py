from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from thuecm import (BinaryForm, CertificationError, QPoly, ThueInstance, brute_force, certify_instance,
                    enumerate_lambda, make_field, nth_roots_in_ok, reduce_to_monic, roots_of_unity,
                    solve_axn, solve_thue, xi_set)
from thuecm.solver import lambda_modulus

import cases


@pytest.fixture(scope="module")
def Q():
    return make_field(QPoly([0, 1]))


def pairs(sols):
    return set(sols.coordinate_pairs())


def test_certify(rel3, rel4):
    assert rel3.L.degree == 4 and rel4.L.degree == 4
    G = make_field(QPoly([1, 0, 1]))
    bad = ThueInstance(G, BinaryForm.from_coeffs(G, [1, 0, 1]), G(1), [G(1), G(0), G(1)])
    with pytest.raises(CertificationError, match="totally real"):
        certify_instance(bad)


def test_certify_rejections(Q):
    F = BinaryForm.from_coeffs(Q, [1, 0, -2])
    with pytest.raises(CertificationError):
        certify_instance(ThueInstance(Q, F, Q(1), [Q(-2), Q(0), Q(1)]))          # real field
    F = BinaryForm.from_coeffs(Q, [1, 0, 1])
    with pytest.raises(CertificationError, match="divide"):
        certify_instance(ThueInstance(Q, F, Q(1), [Q(2), Q(0), Q(1)]))
    with pytest.raises(CertificationError):
        certify_instance(ThueInstance(Q, F, Q(Fraction(1, 2)), [Q(1), Q(0), Q(1)]))


def test_reduce_to_monic(Q, ex3):
    F, b, back = reduce_to_monic(ex3.F, ex3.b)
    assert F is ex3.F and back(ex3.K(1), ex3.K(0)) == (ex3.K(1), ex3.K(0))
    F2 = BinaryForm.from_coeffs(Q, [2, 0, 0, 1])
    f1, b1, back = reduce_to_monic(F2, Q(5))
    assert [c.rational() for c in f1.coeffs] == [1, 0, 0, 4]
    assert b1 == Q(20)
    assert back(Q(2), Q(1)) == (Q(1), Q(1))
    assert back(Q(3), Q(1)) is None


def test_reduce_to_monic_scales_roots(k2):
    s = k2.gen
    F = BinaryForm.from_coeffs(k2, [s, 1, 3])
    f1, _, _ = reduce_to_monic(F, k2(1))
    # x' = a0 x maps F(x, 1) = 0 to F1(x', 1) = 0: check on the quadratic formula numerically
    import cmath
    a, bb, c = (float(v.approx(30)[1].real) for v in F.coeffs)
    r = (-bb + cmath.sqrt(bb * bb - 4 * a * c)) / (2 * a)
    coef = [complex(v.approx(30)[1].real) for v in f1.coeffs]
    x1 = a * r
    assert abs(coef[0] * x1 ** 2 + coef[1] * x1 + coef[2]) < 1e-9


def test_lambda_example3(rel3, ex3):
    lam = enumerate_lambda(rel3, ex3.b)
    assert lam.modulus == 1 and lam.strata == {1: 6}
    L = rel3.L
    units = {z.coords for z in roots_of_unity(L)}
    assert {r.coords for r in lam.rhos} == units - {L.one.coords, (-L.one).coords}


def test_lambda_example4(rel4, ex4):
    lam = enumerate_lambda(rel4, ex4.b)
    assert lam.modulus == 4
    assert lam.strata == {1: 6, 2: 0, 4: 0}
    strict = enumerate_lambda(rel4, ex4.b, strict_paper_mode=True)
    assert strict.modulus == 16 and strict.strata == {1: 6, 2: 0, 4: 0, 8: 0, 16: 0}
    assert lambda_modulus(rel4, ex4.b, True) == 16


def test_lambda_jobs_deterministic(rel4, ex4):
    one = enumerate_lambda(rel4, ex4.b, jobs=1)
    two = enumerate_lambda(rel4, ex4.b, jobs=2)
    assert [r.coords for r in one.rhos] == [r.coords for r in two.rhos]
    assert one.strata == two.strata


def test_lambda_gaussian(Q):
    F = BinaryForm.from_coeffs(Q, [1, 0, 1])
    inst = ThueInstance(Q, F, Q(1), [Q(1), Q(0), Q(1)])
    rel = certify_instance(inst)
    lam = enumerate_lambda(rel, inst.b)
    i = rel.alpha
    assert {r.coords for r in lam.rhos} == {i.coords, (-i).coords}


def test_lambda_nontrivial_stratum(Q):
    # X^2 + Y^2 = 5 over Q: |N_L(5)| = 25, and (+-3 +- 4i)/5, (+-4 +- 3i)/5 have height 5
    F = BinaryForm.from_coeffs(Q, [1, 0, 1])
    inst = ThueInstance(Q, F, Q(5), [Q(1), Q(0), Q(1)])
    rel = certify_instance(inst)
    lam = enumerate_lambda(rel, inst.b)
    assert lam.strata[5] == 8
    sols = solve_thue(inst)
    assert len(sols) == 8 and sols.complete
    assert pairs(sols) == pairs(brute_force(inst, 3))


def test_xi_example3(rel3, ex3):
    lam = enumerate_lambda(rel3, ex3.b)
    kept, dropped = xi_set(rel3, lam.rhos)
    K = ex3.K
    s = K.gen
    want = {K(1), K(-1), 1 + s, -1 - s, 1 - s, s - 1, K(0)}
    assert {z.coords for z in kept} == {z.coords for z in want}
    assert not dropped


def test_xi_example4(rel4, ex4):
    lam = enumerate_lambda(rel4, ex4.b)
    kept, _ = xi_set(rel4, lam.rhos)
    K = ex4.K
    s = K.gen
    assert kept[-1] == K(0)
    xi = s - 1
    assert xi.coords in {z.coords for z in kept}
    v = ex4.F(xi, K.one)
    assert v == 82 - 58 * s == (6 - 4 * s) * (7 - 5 * s)
    assert all(bl.re < 0 for bl in (ex4.b / v).embed(64))
    assert nth_roots_in_ok(ex4.b / v, 4) == [] if (ex4.b / v).has_integral_coords() else True


def test_nth_roots(k2, Q):
    s = k2.gen
    assert {z.coords for z in nth_roots_in_ok(k2(1), 4)} == {k2(1).coords, k2(-1).coords}
    assert nth_roots_in_ok(k2(1) / (2 * (2 + s)), 4) == []
    got = nth_roots_in_ok(17 + 12 * s, 2)
    assert {z.coords for z in got} == {(3 + 2 * s).coords, (-3 - 2 * s).coords}
    assert nth_roots_in_ok((1 + s) ** 5, 5) == [1 + s]
    assert nth_roots_in_ok(k2(-8), 3) == [k2(-2)]
    assert nth_roots_in_ok(k2(-4), 2) == []
    assert nth_roots_in_ok(Q(-27), 3) == [Q(-3)]


def test_nth_roots_large_unit():
    K = cases.k_p(13)
    u = (K.gen + 2) ** 3
    assert nth_roots_in_ok(u ** 4, 4) == sorted({u, -u}, key=lambda z: z.integral_coords())


def test_solve_axn(ex4, Q):
    K = ex4.K
    assert {z.coords for z in solve_axn(ex4.F.an, ex4.b, 4)} == {K(1).coords, K(-1).coords}
    assert solve_axn(K(1), ex4.b, 4) == []
    assert solve_axn(Q(1), Q(1), 3) == [Q(1)]


def test_example_solutions(sol3, sol4, ex3):
    assert sol3.complete and sol4.complete
    assert pairs(sol3) == {((1, 0), (0, 0)), ((-1, 0), (0, 0)), ((0, 0), (1, 0)), ((0, 0), (-1, 0))}
    assert pairs(sol4) == {((0, 0), (1, 0)), ((0, 0), (-1, 0))}
    # canonical order: y coords, then x coords
    keys = [(y, x) for x, y in sol3.coordinate_pairs()]
    assert keys == sorted(keys)
    assert sol4.certificate["lambda_strata"] == {"1": 6, "2": 0, "4": 0}
    assert sol3.certificate["lambda_size"] == 6


def test_strict_mode_same_answer(sol4):
    strict = solve_thue(cases.example4(strict=True))
    assert pairs(strict) == pairs(sol4)
    assert strict.certificate["divisors_scanned"] == [1, 2, 4, 8, 16]


def test_budget_overflow_is_reported(ex4):
    inst = cases.example4()
    inst.budget = 1
    sols = solve_thue(inst)
    assert not sols.complete
    assert sols.certificate["budget_overflow_divisors"]
    assert pairs(sols) <= {((0, 0), (1, 0)), ((0, 0), (-1, 0))}


def test_brute_force_examples(ex3, Q):
    assert len(brute_force(ex3, 3)) == 4
    F = BinaryForm.from_coeffs(Q, [1, 0, 1])
    inst = ThueInstance(Q, F, Q(3), [Q(1), Q(0), Q(1)])
    assert len(brute_force(inst, 10)) == 0
    assert len(brute_force(ex3, 0)) == 0
    assert not brute_force(ex3, 1).complete


def test_non_monic_and_swapped(Q, k2):
    F = BinaryForm.from_coeffs(Q, [3, 0, 5])
    inst = ThueInstance(Q, F, Q(8), [Q(5), Q(0), Q(3)])
    sols = solve_thue(inst)
    assert sols.certificate["reduced_to_monic"]
    assert pairs(sols) == pairs(brute_force(inst, 5)) and len(sols) == 4
    # a_0 = 0: X^2 Y + Y^3 = 2, solved after swapping the variables
    F = BinaryForm.from_coeffs(Q, [0, 1, 0, 1])
    inst = ThueInstance(Q, F, Q(2), [Q(1), Q(0), Q(1)])
    sols = solve_thue(inst)
    assert sols.certificate["swapped_variables"]
    assert pairs(sols) == pairs(brute_force(inst, 6))
    s = k2.gen
    F = BinaryForm.from_coeffs(k2, [s, 0, s])
    inst = ThueInstance(k2, F, s, [k2(1), k2(0), k2(1)])
    sols = solve_thue(inst)
    assert len(sols) == 4 and pairs(sols) == pairs(brute_force(inst, 4))


@pytest.mark.parametrize("name", ["ex3", "ex4"])
def test_proof_replay(name, ex3, ex4, sol3, sol4):
    inst, sols = (ex3, sol3) if name == "ex3" else (ex4, sol4)
    assert all(cases.proof_replay(inst, sols).values())


def test_proof_replay_nontrivial_rho(Q):
    F = BinaryForm.from_coeffs(Q, [1, 0, 1])
    inst = ThueInstance(Q, F, Q(25), [Q(1), Q(0), Q(1)])
    sols = solve_thue(inst)
    assert any(not x.is_zero() and not y.is_zero() for x, y in sols.solutions)
    assert all(cases.proof_replay(inst, sols).values())


@st.composite
def rational_cm_instances(draw):
    a = draw(st.integers(-3, 3))
    c = draw(st.integers(a * a // 4 + 1, 6))       # a^2 < 4c: X^2 + aXY + cY^2 is definite
    e = draw(st.integers(-2, 2))
    b = draw(st.integers(1, 40)) * draw(st.sampled_from([1, -1]))
    return a, c, e, b


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(rational_cm_instances())
def test_random_rational_instances_match_oracle(params):
    a, c, e, b = params
    Q = make_field(QPoly([0, 1]))
    # (X^2 + a XY + c Y^2)(X + e Y)
    F = BinaryForm.from_coeffs(Q, [1, a + e, c + a * e, c * e]) if e else \
        BinaryForm.from_coeffs(Q, [1, a, c, 0])
    if F.an.is_zero():
        F = BinaryForm.from_coeffs(Q, [1, a, c])
    inst = ThueInstance(Q, F, Q(b), [Q(c), Q(a), Q(1)])
    sols = solve_thue(inst)
    assert sols.complete
    oracle = brute_force(inst, 45)
    inside = {p for p in pairs(sols) if all(abs(v) <= 45 for q in p for v in q)}
    assert pairs(oracle) == inside
