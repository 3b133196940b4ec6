from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from signrep.boolfun import from_table
from signrep.certificates import (RationalLowerBoundCert, degree_nonincreasing_map, floor_bound_check,
                                  half_shift_closed_forms, half_shift_product, halfspace_criterion_cert,
                                  halfspace_moment_coupling, implied_bound, infinite_product_bound_holds,
                                  maj_criterion_cert, maj_error_table, maj_near_linear_preset,
                                  maj_presets, maj_small_degree_preset, moment_difference,
                                  moment_matched_pair, mu_b_moments, newman_product_bound_holds,
                                  ratio_exp_bound_holds, sign_pattern_infeasible, sign_pattern_sets,
                                  verify_lower_bound_cert)
from signrep.errors import InvalidInput, ResourceLimit
from signrep.exact import Poly, UPoly
from signrep.rational import rational_error_bracket, sign_domain


# ---- closed-form inequalities, one-sided interval checks

@pytest.mark.parametrize("D,n", [(2, 1), (2, 5), (3, 4), (Fraction(5, 2), 7)])
def test_newman_product_inequality(D, n):
    assert newman_product_bound_holds(D, n)


@pytest.mark.parametrize("D", [2, 3, 5, Fraction(9, 4)])
def test_infinite_product_inequality(D):
    assert infinite_product_bound_holds(D)


@pytest.mark.parametrize("a", [Fraction(3, 2), 2, 3, 10])
def test_ratio_exp_inequality(a):
    assert ratio_exp_bound_holds(a)


@pytest.mark.parametrize("n,d", [(55, 1), (110, 2), (165, 3), (400, 2)])
def test_floors_inequality(n, d):
    r = floor_bound_check(n, d)
    assert r["holds"] and r["ratio"] > 0


@pytest.mark.parametrize("n", range(1, 9))
def test_half_shift_closed_forms_match_direct_evaluation(n):
    p = half_shift_product(n)
    for t in range(1, n + 2):
        assert half_shift_closed_forms(n, t) == (abs(p(t)), abs(p(-t)))


# ---- moment matching

def test_moment_pair_m1():
    P = moment_matched_pair(1)
    assert P.lambda0 == {-1: Fraction(1, 16), 0: Fraction(10, 16), 1: Fraction(5, 16)}
    assert sum(w * 2 * t for t, w in P.lambda0.items()) == Fraction(1, 2)
    assert sum(w * (2 * t + 1) for t, w in P.lambda1.items()) == Fraction(1, 2)
    assert moment_difference(1, 5) != 0


@pytest.mark.parametrize("m", range(1, 9))
def test_moment_equalities_direct(m):
    # independent oracle straight from the binomial weights
    for d in range(4 * m + 1):
        a = sum(comb(4 * m + 1, 2 * m + 2 * t) * (2 * t) ** d for t in range(-m, m + 1))
        b = sum(comb(4 * m + 1, 2 * m + 2 * t + 1) * (2 * t + 1) ** d for t in range(-m, m + 1))
        assert a == b
        assert moment_difference(m, d) == 0


def test_moment_cap():
    with pytest.raises(ResourceLimit):
        moment_matched_pair(13)


def test_mu_b_examples():
    assert mu_b_moments((0, 0, 0), 1, 0) == [1, 1, 1]
    assert mu_b_moments((0, 1), 1, 1) == [Fraction(1, 2), Fraction(1, 2)]
    m = mu_b_moments((1, 0), 1, 2)
    assert m[0] == m[1]


# ---- halfspace coupling and the induced map

@pytest.fixture(scope="module")
def coupling1():
    return halfspace_moment_coupling(1)


def test_coupling_n1(coupling1):
    C = coupling1
    assert C.z == [-2, -1, 1, 2]
    for xs, _ in C.joint:
        for c in range(4):
            assert xs[0][c] + 2 * xs[1][c] == C.z[c]
    for d1 in range(5):
        vals = {C.expectation(lambda x: x[0] ** d1, c) for c in range(4)}
        assert len(vals) == 1
    assert {C.expectation(lambda x: 1, c) for c in range(4)} == {1}


def test_coupling_n2_per_component():
    C = halfspace_moment_coupling(2)
    assert C.joint is None
    assert all(len(atoms) == 25 for atoms in C.components)


def test_degree_map_examples(coupling1):
    assert degree_nonincreasing_map(Poly.const(1, 2), 1, coupling1) == UPoly([1])
    x1, x2 = Poly.var(0, 2), Poly.var(1, 2)
    assert degree_nonincreasing_map(x1 + x2 * 2, 1, coupling1) == UPoly([0, 1])
    q = degree_nonincreasing_map(x1 * x1, 1, coupling1)
    assert q.degree() <= 2 and q == UPoly([Fraction(3, 2)])


small_polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                              st.fractions(min_value=-4, max_value=4, max_denominator=5),
                              max_size=4).map(lambda d: Poly(2, d))


@given(small_polys, small_polys, st.integers(-3, 3), st.integers(-3, 3))
def test_degree_map_is_linear(p, q, a, b):
    C = halfspace_moment_coupling(1)
    lhs = degree_nonincreasing_map(p * a + q * b, 1, C)
    rhs = degree_nonincreasing_map(p, 1, C) * a + degree_nonincreasing_map(q, 1, C) * b
    assert lhs == rhs


# ---- sign pattern and the halfspace certificate

def test_sign_pattern_sets_n1():
    A0 = sign_pattern_sets(1)[0]
    assert A0 == sorted([(3, -1), (1, 0), (-1, 1), (-3, 2)])
    # direct solve of x1 = 1 - 2 x2 with |x_j| <= 4
    assert A0 == sorted((1 - 2 * x2, x2) for x2 in range(-4, 5) if abs(1 - 2 * x2) <= 4)


def test_sign_pattern_n1_boundary():
    rec = sign_pattern_infeasible(1)
    assert rec.verified and rec.degree == 2
    assert rec.boundary_polynomial is not None
    with pytest.raises(ResourceLimit):
        sign_pattern_infeasible(3)


def test_halfspace_certificate_n1():
    cert = halfspace_criterion_cert(1)
    assert verify_lower_bound_cert(cert)
    assert cert.delta > 0 and cert.info["floor_holds"]
    assert sum(v * x[0] for x, v in cert.psi.items()) == 0
    pts = sorted(set(cert.S) | {tuple(-v for v in x) for x in cert.S})
    f = from_table(pts, [1 if x[0] + 2 * x[1] > 0 else -1 for x in pts])
    assert cert.implied_bound <= rational_error_bracket(f, 1).upper


def test_tampered_certificate_rejected():
    cert = halfspace_criterion_cert(1)
    psi = dict(cert.psi)
    x = cert.S[0]
    psi[x] += 1
    bad = RationalLowerBoundCert(cert.S, psi, cert.delta, cert.d, cert.implied_bound)
    assert not verify_lower_bound_cert(bad)
    assert not verify_lower_bound_cert(RationalLowerBoundCert([], {}, cert.delta, 1, cert.implied_bound))


# ---- majority criterion certificates

def test_implied_bound_saturates():
    assert implied_bound(1) == 1 and implied_bound(3) == 1
    assert implied_bound(Fraction(1, 3)) == Fraction(1, 2)


@pytest.mark.parametrize("n,d", [(4, 1), (4, 2), (6, 2), (8, 3), (9, 2)])
def test_presets_below_bisection_upper(n, d):
    certs = maj_presets(n, d)
    assert certs
    b = rational_error_bracket(sign_domain(n), d)
    for c in certs:
        assert verify_lower_bound_cert(c)
        assert c.implied_bound <= b.upper


def test_small_degree_floor():
    c = maj_small_degree_preset(16, 2)
    assert c.info["floor_holds"]


def test_criterion_rejects_bad_r():
    r = UPoly.from_roots([0, 2, -2])
    with pytest.raises(InvalidInput):
        maj_criterion_cert(3, 1, [1], r)        # r must vanish at +-3
    with pytest.raises(InvalidInput):
        maj_criterion_cert(3, 1, [1], UPoly([1]))


def test_near_linear_preset_shape():
    c = maj_near_linear_preset(8, 4)
    assert [x[0] for x in c.S] == [1, 2, 3, 4, 5]


def test_maj_table_small():
    rows = maj_error_table(4, [1, 2, 3, 4, 5])
    for r in rows:
        assert r.sandwich_holds()
        assert r.bracket.upper - r.bracket.lower <= Fraction(1, 64)
    assert (rows[3].bracket.lower, rows[3].bracket.upper) == (0, 0)
    two = maj_error_table(2, [2])[0]
    assert (two.bracket.lower, two.bracket.upper) == (0, 0)
