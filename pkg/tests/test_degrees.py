import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from signrep.boolfun import BooleanFunction, conjunction, grid, make_named
from signrep.degrees import (APPROX, GORDAN, approx_error, eps_approx_degree, gordan_witness,
                             sign_representation, symmetrize, symmetrize_by_averaging,
                             threshold_degree, verify_witness, weighted_approx_degree)
from signrep.exact import Poly

CUBE4 = grid([(-1, 1)] * 4)


def test_constant_has_degree_zero():
    f = make_named("CONST", [2])
    rep = threshold_degree(f)
    assert rep.value == 0 and rep.dual is None
    assert all(rep.primal(x) > 0 for x in f.domain)


def test_parity2_uniform_witness():
    f = make_named("PARITY", [2])
    rep = threshold_degree(f)
    assert rep.value == 2
    w = gordan_witness(f, 1)
    assert w.kind == GORDAN and set(w.weights) == {Fraction(1, 4)}


def test_or_and_or_has_degree_two():
    or2 = make_named("OR", [2], domain="cube")
    f = conjunction(or2, or2)
    assert threshold_degree(f).value == 2
    # the explicit quadratic: s_i = "x_{2i-1} or x_{2i}" sign-represented by degree 1
    w = gordan_witness(f, 1)
    assert w is not None and verify_witness(f, w)


def test_maj3_halfspace_and_its_conjunction():
    maj3 = make_named("MAJ", [3])
    assert gordan_witness(maj3, 1) is None
    g = conjunction(maj3, maj3)
    w = gordan_witness(g, 1)
    assert w is not None and verify_witness(g, w)
    assert sign_representation(g, 1)[0] is None


@given(st.lists(st.sampled_from(CUBE4), min_size=1, max_size=10, unique=True), st.data(), st.integers(0, 3))
def test_gordan_alternative_on_small_domains(pts, data, d):
    pts = sorted(pts)
    vals = data.draw(st.lists(st.sampled_from((-1, 1)), min_size=len(pts), max_size=len(pts)))
    f = BooleanFunction(tuple(pts), tuple(vals))
    p, _ = sign_representation(f, d)
    w = gordan_witness(f, d)
    assert (p is None) != (w is None)


def test_tampered_witness_rejected():
    f = make_named("PARITY", [2])
    w = gordan_witness(f, 1)
    w.weights = (Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0))
    assert not verify_witness(f, w)


def test_approx_error_examples():
    eps, p, _ = approx_error(make_named("MAJ", [1]), 1)
    assert eps == 0 and p == Poly.var(0, 1)
    eps, p, w = approx_error(make_named("PARITY", [2]), 1)
    assert eps == 1 and w.correlation == 1


def chebyshev_grid_oracle(f):
    # degree-1 polynomials a + b x1 + c x2 with coefficients on a quarter grid
    grid_vals = [Fraction(k, 4) for k in range(-12, 13)]
    best = None
    for a, b, c in itertools.product(grid_vals, repeat=3):
        e = max(abs(y - (a + b * x[0] + c * x[1])) for x, y in f.items())
        best = e if best is None else min(best, e)
    return best


def test_or2_bits_chebyshev_matches_grid_oracle():
    f = make_named("OR", [2])
    eps, _, w = approx_error(f, 1)
    assert eps == chebyshev_grid_oracle(f) == Fraction(1, 2)
    assert w.kind == APPROX and w.correlation == eps and w.l1_mass == 1


@pytest.mark.parametrize("fam,n", [("MAJ", 3), ("OR", 3), ("PARITY", 3), ("AND", 3)])
def test_approx_error_monotone_and_reaches_zero(fam, n):
    f = make_named(fam, [n])
    errs = [approx_error(f, d)[0] for d in range(n + 1)]
    assert all(a >= b for a, b in zip(errs, errs[1:]))
    assert errs[-1] == 0


@pytest.mark.parametrize("fam,n", [("MAJ", 3), ("OR", 3), ("PARITY", 3), ("AND", 2)])
def test_threshold_degree_versus_approx_error(fam, n):
    f = make_named(fam, [n])
    t = threshold_degree(f).value
    for d in range(n + 1):
        if d < t:
            assert gordan_witness(f, d) is not None
        else:
            assert approx_error(f, d)[0] < 1


def test_eps_degree_edge_cases():
    f = make_named("MAJ", [3])
    assert eps_approx_degree(f, 1).value == 0
    assert eps_approx_degree(f, 0).value == 3


def test_or_third_degree_is_nondecreasing():
    seq = [eps_approx_degree(make_named("OR", [n]), Fraction(1, 3)).value for n in range(1, 7)]
    assert seq == sorted(seq)
    assert seq[0] == 1


def test_weighted_degree():
    f = make_named("AND", [2])
    assert weighted_approx_degree(f, 0, (5, 1)).value == 6
    assert weighted_approx_degree(f, 1, (5, 1)).value == 0
    for eps in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
        assert weighted_approx_degree(f, eps, (1, 1)).value == eps_approx_degree(f, eps).value


def test_symmetrize_examples():
    x1, x2 = Poly.var(0, 2), Poly.var(1, 2)
    s = Poly.var(0, 1)
    assert symmetrize(x1, [[0, 1]]) == s * Fraction(1, 2)
    q = symmetrize(x1 * x2, [[0, 1]])
    assert [q((v,)) for v in (0, 1, 2)] == [0, 0, 1]
    assert symmetrize(Poly.const(7, 2), [[0, 1]]) == Poly.const(7, 1)


@given(st.dictionaries(st.tuples(*[st.integers(0, 1)] * 4),
                       st.fractions(min_value=-5, max_value=5, max_denominator=6), max_size=6),
       st.sampled_from([[[0, 1, 2, 3]], [[0, 1], [2, 3]], [[0], [1, 2, 3]]]))
def test_symmetrize_matches_direct_average(terms, blocks):
    phi = Poly(4, terms)
    q = symmetrize(phi, blocks)
    assert q.degree() <= phi.degree()
    for x in itertools.product((0, 1), repeat=4):
        sums = tuple(sum(x[i] for i in b) for b in blocks)
        assert q(sums) == symmetrize_by_averaging(phi, blocks, x)
