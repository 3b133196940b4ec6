import itertools

import pytest
from hypothesis import given, strategies as st

from signrep.boolfun import (BooleanFunction, all_functions, compose, conjunction, grid,
                             kp_transform, make_named, negate, reflect, subfunction, to_cube)
from signrep.errors import InvalidInput, ResourceLimit


def test_majority_values():
    f = make_named("MAJ", [3])
    assert f((-1, -1, 1)) == -1
    assert f((1, 1, -1)) == 1


@pytest.mark.parametrize("n", range(1, 10))
def test_majority_against_direct_sum(n):
    f = make_named("MAJ", [n])
    for x in itertools.product((-1, 1), repeat=n):
        assert f(x) == (1 if sum(x) > 0 else -1)


def test_or_on_bits():
    f = make_named("OR", [2])
    assert f((0, 0)) == 1 and f((1, 0)) == -1


def test_canonical_halfspace_all_false():
    f = make_named("CANONICAL-HALFSPACE", [2])
    assert f((1, 1, 1, 1)) == 1          # sign(1 + 2 + 2 + 4 + 4)
    assert f((-1, -1, -1, -1)) == -1


def test_domain_is_lexicographic():
    f = make_named("PARITY", [3])
    assert list(f.domain) == sorted(f.domain)
    assert len(set(f.domain)) == len(f.domain)


def test_compose_examples():
    and2 = make_named("AND", [2])
    maj1 = make_named("MAJ", [1])
    assert compose(and2, [maj1, maj1]).table() == and2.table()
    or2 = make_named("OR", [2], domain="cube")
    orb = make_named("OR", [2])
    h = compose(or2, [orb, orb])
    or4 = make_named("OR", [4])
    assert h.table() == or4.table()
    maj3 = make_named("MAJ", [3])
    g = compose(and2, [maj3, maj3])
    assert len(g) == 64 and g((-1,) * 6) == -1


@given(st.integers(1, 3), st.data())
def test_compose_with_identity_and_negation(k, data):
    F = BooleanFunction(tuple(grid([(-1, 1)] * k)),
                        tuple(data.draw(st.lists(st.sampled_from((-1, 1)), min_size=2 ** k, max_size=2 ** k))))
    ident = make_named("DICTATOR", [1])
    assert compose(F, [ident] * k).table() == F.table()
    maj3 = make_named("MAJ", [3])
    assert compose(negate(F), [maj3] * k).values == negate(compose(F, [maj3] * k)).values


def test_negate_and_reflect():
    maj3 = make_named("MAJ", [3])
    assert negate(maj3)((-1, -1, -1)) == 1
    assert negate(negate(maj3)).table() == maj3.table()
    r = reflect(make_named("OR", [2]))
    assert set(r.domain) == {(0, 0), (0, -1), (-1, 0), (-1, -1)}
    assert r((0, 0)) == 1 and r((-1, 0)) == -1


def test_subfunction_examples():
    and2 = make_named("AND", [2])
    # x2 pinned true: z2 = -1
    assert subfunction(and2, (-1, 1), (1, -1)).table() == {(-1,): -1, (1,): 1}
    or2 = make_named("OR", [2], domain="cube")
    # x2 pinned false: y2 = +1, z2 = +1
    assert subfunction(or2, (-1, 1), (1, 1)).table() == {(-1,): -1, (1,): 1}
    par = make_named("PARITY", [2])
    for y2, z2 in ((1, 1), (1, -1)):
        t = subfunction(par, (-1, y2), (1, z2)).table()
        assert t in ({(-1,): -1, (1,): 1}, {(-1,): 1, (1,): -1})


def test_kp_selector_semantics():
    x1 = make_named("DICTATOR", [1])
    kp = kp_transform(x1)
    for x, y in itertools.product((-1, 1), repeat=2):
        assert kp((x, y, -1)) == y
        assert kp((x, y, 1)) == x


def test_kp_and2_against_formula():
    import random
    rng = random.Random(7)
    kp = kp_transform(make_named("AND", [2]))
    true = lambda v: v == -1
    for _ in range(8):
        p = tuple(rng.choice((-1, 1)) for _ in range(6))
        x, y, z = p[0:2], p[2:4], p[4:6]
        w = [(not true(z[i]) and true(x[i])) or (true(z[i]) and true(y[i])) for i in range(2)]
        assert kp(p) == (-1 if all(w) else 1)


@given(st.data())
def test_kp_commutes_with_negation(data):
    vals = data.draw(st.lists(st.sampled_from((-1, 1)), min_size=4, max_size=4))
    f = BooleanFunction(tuple(grid([(-1, 1)] * 2)), tuple(vals))
    assert kp_transform(negate(f)).values == negate(kp_transform(f)).values


def test_all_functions_counts():
    assert sum(1 for _ in all_functions(2)) == 16
    assert sum(1 for _ in all_functions(1)) == 4


def test_conjunction_and_to_cube():
    orb = make_named("OR", [1])
    c = conjunction(orb, orb)
    assert c((1, 1)) == -1 and c((1, 0)) == 1
    assert to_cube(orb).table() == {(1,): 1, (-1,): -1}


def test_caps_and_bad_input():
    with pytest.raises(ResourceLimit):
        make_named("PARITY", [21])
    with pytest.raises(InvalidInput):
        make_named("NOPE", [2])
    with pytest.raises(InvalidInput):
        BooleanFunction(((1,), (2,)), (1, 0))
