"""Compositions: conjunction sign-representations, composed dual witnesses,
robust polynomial composition and the combinatorial measures they use."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .boolfun import (CUBE, DOMAIN_CAP, BooleanFunction, and_of, check_cap, compose,
                      conjunction, subfunction)
from .degrees import (GORDAN, GORDAN_SIGNED, DualWitness, exponent_caps,
                      monomial_basis, monomial_value, threshold_degree, verify_witness)
from .errors import InvalidInput, VerificationFailure
from .exact import Poly, rat
from .rational import RationalApproximant, accuracy_boost, error_boost, rational_error_bracket

COMBINATORIAL_CAP = 20


# ---------------------------------------------------------------- measures


@dataclass
class CombinatorialProfile:
    certificate_complexity: int
    block_sensitivity: int
    per_point_certificates: dict


def _cube_check(F: BooleanFunction) -> None:
    if len(F) != 2 ** F.nvars or any(c not in CUBE for x in F.domain for c in x):
        raise InvalidInput("need a total function on {-1,+1}^k")


def _flip(x, mask):
    return tuple(-v if mask >> i & 1 else v for i, v in enumerate(x))


def certificate_at(F: BooleanFunction, x) -> tuple:
    """Smallest S such that agreeing with x on S forces F(x)."""
    k = F.nvars
    t = F.table()
    v = t[tuple(x)]
    for size in range(k + 1):
        for S in itertools.combinations(range(k), size):
            free = [i for i in range(k) if i not in S]
            ok = True
            for m in range(1 << len(free)):
                y = list(x)
                for j, i in enumerate(free):
                    if m >> j & 1:
                        y[i] = -y[i]
                if t[tuple(y)] != v:
                    ok = False
                    break
            if ok:
                return S
    raise AssertionError("unreachable")


def block_sensitivity_at(F: BooleanFunction, x) -> int:
    k = F.nvars
    t = F.table()
    v = t[tuple(x)]
    sensitive = [m for m in range(1, 1 << k) if t[_flip(x, m)] != v]
    # only minimal sensitive blocks matter for a maximum disjoint family
    minimal = [m for m in sensitive if not any(s != m and s & m == s for s in sensitive)]
    best = 0

    def search(start, used, count):
        nonlocal best
        best = max(best, count)
        if count + (k - bin(used).count("1")) <= best:
            return
        for j in range(start, len(minimal)):
            if not minimal[j] & used:
                search(j + 1, used | minimal[j], count + 1)

    search(0, 0, 0)
    return best


def combinatorial_profile(F: BooleanFunction) -> CombinatorialProfile:
    _cube_check(F)
    if F.nvars > COMBINATORIAL_CAP:
        raise InvalidInput(f"k must be <= {COMBINATORIAL_CAP}")
    certs = {x: certificate_at(F, x) for x in F.domain}
    C = max(len(S) for S in certs.values())
    bs = max(block_sensitivity_at(F, x) for x in F.domain)
    if bs > C:
        raise VerificationFailure("block sensitivity exceeds certificate complexity")
    return CombinatorialProfile(C, bs, certs)


def agreement_probability(F: BooleanFunction, x, alphas) -> Fraction:
    """Pr_y[F(x) = F(x*y)] where y_i = -1 with probability alphas[i]."""
    t = F.table()
    v = t[tuple(x)]
    total = Fraction(0)
    for m in range(1 << F.nvars):
        pr = Fraction(1)
        for i, a in enumerate(alphas):
            pr *= rat(a) if m >> i & 1 else 1 - rat(a)
        if t[_flip(x, m)] == v:
            total += pr
    return total


# ---------------------------------------------------------------- BRS conjunction


def _embed_all(polys, dims):
    out, off = [], 0
    total = sum(dims)
    for p, n in zip(polys, dims):
        out.append(p.embed(total, off))
        off += n
    return out


def brs_conjunction(approximants: Sequence[RationalApproximant],
                    cap: int = DOMAIN_CAP, check: bool = True) -> Poly:
    """(k-1) prod q_i + sum_i p_i prod_{j != i} q_j, a sign representation of AND f_i."""
    k = len(approximants)
    if k == 0:
        raise InvalidInput("need at least one approximant")
    for A in approximants:
        if not A.denominator_positive:
            raise InvalidInput("denominators must be positive")
    if sum(A.verified_error for A in approximants) >= 1:
        raise InvalidInput("errors must sum to less than 1")
    dims = [A.f.nvars for A in approximants]
    ps = _embed_all([A.num for A in approximants], dims)
    qs = _embed_all([A.den for A in approximants], dims)
    total = sum(dims)
    prod_all = Poly.const(1, total)
    for q in qs:
        prod_all = prod_all * q
    out = prod_all * (k - 1)
    for i in range(k):
        term = ps[i]
        for j in range(k):
            if j != i:
                term = term * qs[j]
        out = out + term
    if check:
        target = and_of([A.f for A in approximants], cap)
        for x, y in target.items():
            if y * out(x) <= 0:
                raise VerificationFailure(f"conjunction sign fails at {x}")
    return out


# ---------------------------------------------------------------- composed witnesses


@dataclass
class ComposedWitness:
    zeta: dict
    claimed_orthogonality: int
    claimed_correlation_bound: Fraction
    l1_mass: Fraction
    correlation: Fraction
    function: BooleanFunction
    info: dict = field(default_factory=dict)


def _signed_outer(F: BooleanFunction, Psi: DualWitness) -> dict:
    w = dict(zip(Psi.points, Psi.weights))
    if Psi.kind == GORDAN:
        return {z: w[z] * F(z) for z in F.domain}
    if Psi.kind == GORDAN_SIGNED:
        l1 = sum(abs(v) for v in w.values())
        return {z: w[z] / l1 for z in F.domain}
    return {z: w.get(z, Fraction(0)) for z in F.domain}


def _fourier_support(Psi: dict, k: int) -> list:
    out = []
    for S in range(1 << k):
        c = sum(v * monomial_value(z, [(S >> i) & 1 for i in range(k)]) for z, v in Psi.items())
        if c:
            out.append(S)
    return out


def _claimed_orthogonality(Psi: dict, orders: Sequence[int]) -> int:
    """min over the Fourier support of Psi of sum_{i in S} orders[i]."""
    k = len(orders)
    supp = _fourier_support(Psi, k)
    if not supp:
        return 1 << 30
    return min(sum(orders[i] for i in range(k) if S >> i & 1) for S in supp)


def verify_composed(w: ComposedWitness) -> bool:
    """Independent check of l1 mass, orthogonality and correlation."""
    h = w.function
    weights = [w.zeta.get(x, Fraction(0)) for x in h.domain]
    l1 = sum(abs(v) for v in weights)
    corr = sum(v * y for v, y in zip(weights, h.values))
    if l1 != 1 or l1 != w.l1_mass or corr != w.correlation:
        return False
    if not corr > w.claimed_correlation_bound:
        return False
    caps = exponent_caps(h.coordinate_values())
    top = min(w.claimed_orthogonality - 1, sum(caps))
    for e in monomial_basis(caps, top):
        if sum(v * monomial_value(x, e) for v, x in zip(weights, h.domain) if v):
            return False
    return True


def compose_witness_threshold(F: BooleanFunction, f: BooleanFunction, Psi: DualWitness,
                              mu: DualWitness, eps=None) -> ComposedWitness:
    """zeta = 2^k Psi(..., f(x_i), ...) prod mu(x_i).

    Psi is a dual object for F on the cube; mu is a Gordan distribution for f
    orthogonal (against f) to degree mu.orthogonality_degree.  The result is
    orthogonal below D*d with D the orthogonality order of Psi and
    d = mu.orthogonality_degree + 1.
    """
    _cube_check(F)
    if f.is_constant():
        raise InvalidInput("inner function must be nonconstant")
    if mu.kind != GORDAN or not verify_witness(f, mu):
        raise InvalidInput("mu must be a verified Gordan distribution for f")
    if not verify_witness(F, Psi):
        raise InvalidInput("Psi failed its own check")
    k = F.nvars
    Ps = _signed_outer(F, Psi)
    if sum(abs(v) for v in Ps.values()) != 1:
        raise InvalidInput("Psi must have unit l1 mass")
    corr_outer = sum(v * F(z) for z, v in Ps.items())
    if eps is None:
        eps = corr_outer - Fraction(1, 2 ** 32)
    eps = rat(eps)
    if not corr_outer > eps:
        raise InvalidInput("Psi does not correlate above eps")
    m = mu.as_dict()
    if sum(m[x] * f(x) for x in f.domain) != 0:
        raise InvalidInput("mu must balance f")
    h = compose(F, [f] * k)
    zeta = {}
    scale = 2 ** k
    for combo in itertools.product(list(f.items()), repeat=k):
        x = tuple(c for xi, _ in combo for c in xi)
        z = tuple(v for _, v in combo)
        w = Fraction(scale) * Ps[z]
        for xi, _ in combo:
            w *= m[xi]
        if w:
            zeta[x] = w
    d = mu.orthogonality_degree + 1
    orth = _claimed_orthogonality(Ps, [d] * k)
    l1 = sum(abs(v) for v in zeta.values())
    corr = sum(v * h(x) for x, v in zeta.items())
    W = ComposedWitness(zeta, orth, eps, l1, corr, h,
                        {"outer_correlation": corr_outer, "inner_order": d})
    if not verify_composed(W):
        raise VerificationFailure("composed witness failed re-check")
    if corr != corr_outer:
        raise VerificationFailure("composed correlation differs from the outer one")
    if corr == 1 and any(v * h(x) < 0 for x, v in zeta.items()):
        raise VerificationFailure("correlation 1 but zeta disagrees in sign")
    return W


def compose_witness_approx(F: BooleanFunction, fs: Sequence[BooleanFunction], Psi: DualWitness,
                           psis: Sequence[DualWitness], eps=None) -> ComposedWitness:
    """zeta = 2^k Psi(..., sign psi_i(x_i), ...) prod |psi_i(x_i)|.

    With delta = max_i (1 - corr_i) the correlation is certified against
    both sum Psi F - 2 + 2(1-delta)^C(F) and sum Psi F - 4 delta bs(F).
    """
    _cube_check(F)
    k = F.nvars
    if len(fs) != k or len(psis) != k:
        raise InvalidInput("need one inner function and witness per input of F")
    Ps = _signed_outer(F, Psi)
    if sum(abs(v) for v in Ps.values()) != 1:
        raise InvalidInput("Psi must have unit l1 mass")
    maps, deltas, orders = [], [], []
    for f, psi in zip(fs, psis):
        if not verify_witness(f, psi):
            raise InvalidInput("inner witness failed its own check")
        p = {x: v for x, v in zip(psi.points, psi.weights)}
        if psi.kind == GORDAN:
            p = {x: v * f(x) for x, v in p.items()}
        if sum(abs(v) for v in p.values()) != 1:
            raise InvalidInput("inner witnesses need unit l1 mass")
        if sum(p.values()) != 0:
            raise InvalidInput("inner witness must be orthogonal to constants")
        corr = sum(v * f(x) for x, v in p.items())
        maps.append(p)
        deltas.append(1 - corr)
        orders.append(psi.orthogonality_degree + 1)
    delta = max(deltas)
    prof = combinatorial_profile(F)
    corr_outer = sum(v * F(z) for z, v in Ps.items())
    c_bound = corr_outer - 2 + 2 * (1 - delta) ** prof.certificate_complexity
    bs_bound = corr_outer - 4 * delta * prof.block_sensitivity
    h = compose(F, list(fs))
    zeta = {}
    scale = 2 ** k
    for combo in itertools.product(*[list(p.items()) for p in maps]):
        x = tuple(c for xi, _ in combo for c in xi)
        z = tuple(1 if v >= 0 else -1 for _, v in combo)
        w = Fraction(scale) * Ps[z]
        for _, v in combo:
            w *= abs(v)
        if w:
            zeta[x] = w
    l1 = sum(abs(v) for v in zeta.values())
    corr = sum(v * h(x) for x, v in zeta.items())
    if eps is None:
        eps = max(c_bound, bs_bound) - Fraction(1, 2 ** 32)
    W = ComposedWitness(zeta, _claimed_orthogonality(Ps, orders), rat(eps), l1, corr, h,
                        {"delta": delta, "certificate_bound": c_bound, "bs_bound": bs_bound,
                         "C": prof.certificate_complexity, "bs": prof.block_sensitivity,
                         "outer_correlation": corr_outer})
    if corr < c_bound or corr < bs_bound:
        raise VerificationFailure("composed correlation below the certified bound")
    if not verify_composed(W):
        raise VerificationFailure("composed witness failed re-check")
    return W


# ---------------------------------------------------------------- robust composition


@dataclass
class RobustComposition:
    poly: Poly
    error: Fraction
    outer_error: Fraction
    delta: Fraction
    certificate_bound: Fraction
    bs_bound: Fraction
    function: BooleanFunction


def _sup_error(f: BooleanFunction, p: Poly) -> Fraction:
    return max(abs(y - p(x)) for x, y in f.items())


def robust_compose(F: BooleanFunction, P: Poly, fs: Sequence[BooleanFunction],
                   ps: Sequence[Poly], cap: int = DOMAIN_CAP) -> RobustComposition:
    """Phi = P(..., p_i(x_i)/(1 + ||f_i - p_i||), ...) with its exact error."""
    _cube_check(F)
    k = F.nvars
    if len(fs) != k or len(ps) != k:
        raise InvalidInput("need one inner pair per input of F")
    if any(v > 1 for e in P.terms for v in e):
        raise InvalidInput("P must be multilinear")
    Delta = _sup_error(F, P)
    deltas = [_sup_error(f, p) for f, p in zip(fs, ps)]
    dims = [f.nvars for f in fs]
    scaled = [p / (1 + dl) for p, dl in zip(ps, deltas)]
    Phi = P.substitute(_embed_all(scaled, dims))
    size = 1
    for f in fs:
        size *= len(f)
    check_cap(size, cap)
    h = compose(F, list(fs), cap)
    err = _sup_error(h, Phi)
    delta = max(deltas) if deltas else Fraction(0)
    prof = combinatorial_profile(F)
    a = delta / (1 + delta)
    c_bound = Delta + 2 - 2 * (1 - a) ** prof.certificate_complexity
    bs_bound = Delta + 4 * delta * prof.block_sensitivity / (1 + delta)
    if err > min(c_bound, bs_bound):
        raise VerificationFailure(f"composed error {err} exceeds {min(c_bound, bs_bound)}")
    return RobustComposition(Phi, err, Delta, delta, c_bound, bs_bound, h)


# ---------------------------------------------------------------- AND-reducibility


def _two_variable_forms() -> set:
    """Tables of the eight AND/OR forms of two literals, on (a, b) in cube order."""
    pts = list(itertools.product(CUBE, repeat=2))
    forms = set()
    for sa, sb in itertools.product((1, -1), repeat=2):
        forms.add(tuple(-1 if (sa * a == -1 and sb * b == -1) else 1 for a, b in pts))
        forms.add(tuple(-1 if (sa * a == -1 or sb * b == -1) else 1 for a, b in pts))
    return forms


def and_reducible(F: BooleanFunction) -> tuple:
    """(bool, {(i, j): (y, z)}) searching every fixing of the other variables."""
    _cube_check(F)
    k = F.nvars
    if k > 16:
        raise InvalidInput("k must be <= 16")
    forms = _two_variable_forms()
    witnesses = {}
    for i, j in itertools.combinations(range(k), 2):
        others = [l for l in range(k) if l not in (i, j)]
        found = None
        for fix in itertools.product(CUBE, repeat=len(others)):
            y = [-1] * k
            z = [1] * k
            for l, v in zip(others, fix):
                if v == -1:
                    z[l] = -1
                else:
                    y[l] = 1
            g = subfunction(F, y, z)
            if g.values in forms:
                found = (tuple(y), tuple(z))
                break
        if found is None:
            return False, witnesses
        witnesses[(i, j)] = found
    return True, witnesses


# ---------------------------------------------------------------- amplification


def two_to_k_amplify(A2: RationalApproximant, k: int, booster: str = "accuracy",
                     cap: int = DOMAIN_CAP) -> tuple:
    """Boost A2 (error < 1/2) below 1/k and conjoin k copies.

    Returns (sign representation of the k-fold conjunction, boosted approximant).
    """
    if A2.verified_error >= Fraction(1, 2):
        raise InvalidInput("need an approximant with error < 1/2")
    if k < 2:
        raise InvalidInput("k >= 2")
    if not A2.denominator_positive:
        raise InvalidInput("need a positive denominator")
    B = A2
    target = Fraction(1, k)
    if booster == "accuracy":
        while B.verified_error >= target:
            B = accuracy_boost(B)
    elif booster == "newman":
        r = 1
        while B.verified_error >= target:
            r += 1
            B = error_boost(A2, r)
    else:
        raise InvalidInput(f"unknown booster {booster!r}")
    poly = brs_conjunction([B] * k, cap)
    return poly, B


@dataclass
class MainFiniteReport:
    d: int
    upper_f: Fraction
    upper_g: Fraction
    total: Fraction
    holds: bool


def verify_main_finite(f: BooleanFunction, g: BooleanFunction, precision=Fraction(1, 64)) -> MainFiniteReport:
    """d = degthr(f AND g); check upper R+(f,4d) + upper R+(g,2d) < 1."""
    for h in (f, g):
        if all(v == 1 for v in h.values):
            raise InvalidInput("functions must not be identically false")
    d = threshold_degree(conjunction(f, g)).value
    bf = rational_error_bracket(f, 4 * d, precision)
    bg = rational_error_bracket(g, 2 * d, precision)
    total = bf.upper + bg.upper
    rep = MainFiniteReport(d, bf.upper, bg.upper, total, total < 1)
    if not rep.holds:
        raise VerificationFailure(f"bracket uppers sum to {total} >= 1")
    return rep
