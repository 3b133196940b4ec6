import itertools
from fractions import Fraction

import pytest

from signrep.boolfun import BooleanFunction, compose, grid, make_named
from signrep.composition import (agreement_probability, and_reducible, brs_conjunction,
                                 combinatorial_profile, compose_witness_approx,
                                 compose_witness_threshold, robust_compose, two_to_k_amplify,
                                 verify_composed, verify_main_finite)
from signrep.degrees import APPROX, DualWitness, approx_error, threshold_degree
from signrep.errors import InvalidInput
from signrep.exact import Poly
from signrep.rational import (make_approximant, maj_linear_approximant, rational_error_bracket,
                              sign_domain)

CUBE = (-1, 1)


def cube_fn(k, rule):
    pts = tuple(grid([CUBE] * k))
    return BooleanFunction(pts, tuple(rule(x) for x in pts))


def test_profiles():
    assert combinatorial_profile(make_named("PARITY", [3])).certificate_complexity == 3
    assert combinatorial_profile(make_named("CONST", [3])).certificate_complexity == 0
    p = combinatorial_profile(make_named("OR", [3], domain="cube"))
    assert p.block_sensitivity == 3 and p.certificate_complexity == 3


def brute_bs(F, x):
    # oracle: try every family of disjoint sensitive blocks
    k = F.nvars
    v = F(x)
    flip = lambda m: tuple(-c if m >> i & 1 else c for i, c in enumerate(x))
    sens = [m for m in range(1, 1 << k) if F(flip(m)) != v]
    best = 0
    for r in range(1, k + 1):
        for fam in itertools.combinations(sens, r):
            if all(a & b == 0 for a, b in itertools.combinations(fam, 2)):
                best = max(best, r)
    return best


@pytest.mark.parametrize("fam,n", [("MAJ", 3), ("AND", 3), ("PARITY", 2), ("MAJ", 4)])
def test_bs_against_brute_force(fam, n):
    F = make_named(fam, [n])
    prof = combinatorial_profile(F)
    assert prof.block_sensitivity == max(brute_bs(F, x) for x in F.domain)


ALPHA_GRID = list(itertools.product((Fraction(0), Fraction(1, 4), Fraction(1, 2)), repeat=2))


@pytest.mark.parametrize("alphas", ALPHA_GRID)
def test_certificate_and_bs_probability_bounds(alphas):
    F = make_named("OR", [2], domain="cube")
    prof = combinatorial_profile(F)
    a = max(alphas)
    for x in F.domain:
        agree = agreement_probability(F, x, alphas)
        S = prof.per_point_certificates[x]
        prod = Fraction(1)
        for i in S:
            prod *= 1 - alphas[i]
        worst = min(
            (eval_prod(alphas, T) for T in itertools.combinations(range(2), len(S))), default=1)
        assert agree >= prod >= worst
        assert 1 - agree <= 2 * a * prof.block_sensitivity


def eval_prod(alphas, T):
    out = Fraction(1)
    for i in T:
        out *= 1 - alphas[i]
    return out


def test_and_reducible_examples():
    assert and_reducible(make_named("AND", [2]))[0]
    assert not and_reducible(make_named("PARITY", [2]))[0]
    ok, wit = and_reducible(make_named("MAJ", [3]))
    assert ok and set(wit) == {(0, 1), (0, 2), (1, 2)}


def _depends_on_all(vals, k):
    pts = list(itertools.product(CUBE, repeat=k))
    t = dict(zip(pts, vals))
    return all(any(t[x] != t[x[:i] + (-x[i],) + x[i + 1:]] for x in pts) for i in range(k))


def halfspace_tables(k):
    pts = list(itertools.product(CUBE, repeat=k))
    out = set()
    for w in itertools.product(range(-3, 4), repeat=k):
        for w0 in range(-10, 11):
            out.add(tuple(1 if 2 * (w0 + sum(a * b for a, b in zip(w, x))) + 1 > 0 else -1 for x in pts))
    return {t for t in out if _depends_on_all(t, k)}


def read_once_tables(k):
    pts = list(itertools.product(CUBE, repeat=k))

    def gen(vs):
        if len(vs) == 1:
            i = vs[0]
            return {tuple(x[i] for x in pts), tuple(-x[i] for x in pts)}
        out = set()
        first, rest = vs[0], vs[1:]
        for r in range(len(rest)):
            for extra in itertools.combinations(rest, r):
                A = (first,) + extra
                B = tuple(v for v in rest if v not in extra)
                for a in gen(A):
                    for b in gen(B):
                        out.add(tuple(-1 if (u == -1 and v == -1) else 1 for u, v in zip(a, b)))
                        out.add(tuple(-1 if (u == -1 or v == -1) else 1 for u, v in zip(a, b)))
        return out

    return gen(tuple(range(k)))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_and_reducible_on_halfspaces_and_read_once(k):
    pts = tuple(itertools.product(CUBE, repeat=k))
    tables = halfspace_tables(k) | read_once_tables(k)
    assert tables
    for t in tables:
        assert and_reducible(BooleanFunction(pts, t))[0]


def test_brs_examples():
    A = maj_linear_approximant(3)
    P = brs_conjunction([A, A])
    assert A.degree == 2 and P.degree() <= 2 * A.degree
    h = compose(make_named("AND", [2], domain="cube"), [make_named("MAJ", [3])] * 2)
    assert all(y * P(x) > 0 for x, y in h.items())
    assert brs_conjunction([A]) == A.num
    f = make_named("MAJ", [3])
    half = make_approximant(f, _maj3_poly(Fraction(1, 2)) , Poly.const(1, 3))
    assert half.verified_error == Fraction(1, 2)
    with pytest.raises(InvalidInput):
        brs_conjunction([half, half])
    with pytest.raises(InvalidInput):
        brs_conjunction([])


def test_two_to_k():
    A = maj_linear_approximant(3)
    P, B = two_to_k_amplify(A, 3)
    assert P.degree() <= 6 and B is A
    f = make_named("MAJ", [3])
    half = make_approximant(f, Poly(3, {(1, 0, 0): Fraction(1, 2), (0, 1, 0): Fraction(1, 2),
                                        (0, 0, 1): Fraction(1, 2)}), Poly.const(1, 3))
    with pytest.raises(InvalidInput):
        two_to_k_amplify(half, 2)
    with pytest.raises(InvalidInput):
        two_to_k_amplify(A, 1)
    good = make_approximant(f, _maj3_poly(Fraction(3, 5)), Poly.const(1, 3))
    assert good.verified_error == Fraction(2, 5)
    for booster in ("accuracy", "newman"):
        P, B = two_to_k_amplify(good, 3, booster=booster)
        assert B.verified_error < Fraction(1, 3)


def test_compose_witness_threshold_examples():
    par = make_named("PARITY", [2])
    rF = threshold_degree(par)
    w = compose_witness_threshold(par, par, rF.dual, rF.dual)
    assert w.claimed_orthogonality == 4 and verify_composed(w)
    assert len(w.function) == 16
    or2 = make_named("OR", [2], domain="cube")
    maj3 = make_named("MAJ", [3])
    w2 = compose_witness_threshold(or2, maj3, threshold_degree(or2).dual, threshold_degree(maj3).dual)
    assert len(w2.function) == 64 and verify_composed(w2)
    const = make_named("CONST", [2])
    with pytest.raises(InvalidInput):
        compose_witness_threshold(par, const, rF.dual, rF.dual)


def test_tampered_composed_witness_fails():
    par = make_named("PARITY", [2])
    rF = threshold_degree(par)
    w = compose_witness_threshold(par, par, rF.dual, rF.dual)
    x = next(iter(w.zeta))
    w.zeta[x] *= 2
    assert not verify_composed(w)


def test_approx_composition_matches_threshold_limit():
    par = make_named("PARITY", [2])
    rF = threshold_degree(par)
    a = compose_witness_threshold(par, par, rF.dual, rF.dual)
    b = compose_witness_approx(par, [par, par], rF.dual, [rF.dual, rF.dual])
    assert a.zeta == b.zeta


def test_approx_composition_and2_maj3():
    and2 = make_named("AND", [2])
    maj3 = make_named("MAJ", [3])
    _, _, Psi = approx_error(and2, 1)
    _, _, psi = approx_error(maj3, 0)
    w = compose_witness_approx(and2, [maj3, maj3], Psi, [psi, psi])
    assert w.info["C"] == 2 and verify_composed(w)
    assert w.correlation >= w.info["certificate_bound"]
    bad = DualWitness(APPROX, maj3.domain, (Fraction(1),) + (Fraction(0),) * 7, -1, Fraction(1), Fraction(-1))
    with pytest.raises(InvalidInput):
        compose_witness_approx(and2, [maj3, maj3], Psi, [bad, psi])


def _maj3_poly(scale):
    return Poly(3, {(1, 0, 0): scale / 2, (0, 1, 0): scale / 2, (0, 0, 1): scale / 2,
                    (1, 1, 1): -scale / 2})


def test_robust_compose_examples():
    or2 = make_named("OR", [2], domain="cube")
    P = Poly(2, {(1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2), (1, 1): Fraction(1, 2),
                 (0, 0): Fraction(-1, 2)})
    maj3 = make_named("MAJ", [3])
    r = robust_compose(or2, P, [maj3, maj3], [_maj3_poly(Fraction(2, 3))] * 2)
    assert r.delta == Fraction(1, 3) and r.outer_error == 0
    assert r.certificate_bound == Fraction(7, 8)
    assert r.error <= Fraction(7, 8)
    exact = robust_compose(or2, P * Fraction(9, 10), [maj3, maj3], [_maj3_poly(Fraction(1))] * 2)
    assert exact.error <= exact.outer_error == Fraction(1, 10)
    const = make_named("CONST", [2])
    c = robust_compose(const, Poly.const(1, 2), [maj3, maj3], [_maj3_poly(Fraction(2, 3))] * 2)
    assert c.error == 0


def test_main_finite_examples():
    maj3 = make_named("MAJ", [3])
    r = verify_main_finite(maj3, maj3)
    assert r.holds and r.d == 2
    with pytest.raises(InvalidInput):
        verify_main_finite(make_named("CONST", [2]), maj3)


def _maj_sign_cases():
    for n in (3, 5):
        for d in (1, 2, 3):
            yield n, d


@pytest.mark.slow
@pytest.mark.parametrize("n,d", list(_maj_sign_cases()))
def test_maj_vs_sign_brackets(n, d):
    prec = Fraction(1, 64)
    b = rational_error_bracket(make_named("MAJ", [n]), d, prec)
    lo = rational_error_bracket(sign_domain(n // 2), d, prec)
    # each bracket sits within prec of its true value, so the true inequalities
    # survive with slack prec on either side
    assert b.lower >= lo.lower - prec
    if d >= 2:
        up = rational_error_bracket(sign_domain((n + 1) // 2), d - 2, prec)
        assert b.upper <= up.upper + prec
