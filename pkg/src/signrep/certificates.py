"""Lower-bound certificates for rational approximation.

Moment-matched distributions and the halfspace coupling, the sign-pattern
LP, and root-placed criterion polynomials for the sign function on
{+-1, ..., +-n}.  Every certificate is re-verified exactly before it is
returned; closed-form floors involving exp and sqrt are checked one-sidedly
with interval arithmetic.
"""
from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import iv

from .boolfun import BooleanFunction, from_table
from .degrees import (exponent_caps, gordan_signed_from_farkas, monomial_basis,
                      monomial_value, sign_representation, verify_witness)
from .errors import InvalidInput, ResourceLimit, VerificationFailure
from .exact import (DEFAULT_BITS, Poly, UPoly, binomial, check_comb_identity,
                    dyadic_power, dyadic_root, fmt, iroot, rat)
from .lp import check_farkas
from .rational import (ErrorBracket, RationalApproximant,
                       maj_univariate_upper, newman_sign_approximant,
                       rational_error_bracket, sign_domain)

MOMENT_CAP = 12
COUPLING_ATOM_CAP = 1 << 16


# ---------------------------------------------------------------- interval floors


@contextmanager
def _precision(bits: int = 120):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _mpf_to_fraction(x) -> Fraction:
    m = mpmath.mpf(x)
    man, exp = int(m.man), int(m.exp)
    return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** -exp)


def _iv(x):
    x = rat(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def upper_of(expr) -> Fraction:
    """Exact rational upper endpoint of an mpmath interval."""
    return _mpf_to_fraction(expr.b)


def lower_of(expr) -> Fraction:
    return _mpf_to_fraction(expr.a)


def exp_upper(x) -> Fraction:
    with _precision():
        return upper_of(iv.exp(_iv(x)))


def exp_lower(x) -> Fraction:
    with _precision():
        return lower_of(iv.exp(_iv(x)))


def halfspace_floor_upper() -> Fraction:
    """Upper endpoint of exp(-9 sqrt 2)."""
    with _precision():
        return upper_of(iv.exp(-9 * iv.sqrt(2)))


def small_degree_floor_upper(Delta) -> Fraction:
    """Upper endpoint of exp(-18 / sqrt(Delta))."""
    with _precision():
        return upper_of(iv.exp(-18 / iv.sqrt(_iv(Delta))))


def ratio_exp_bound_holds(a) -> bool:
    """(a-1)/(a+1) > exp(-2.5/a), checked one-sidedly for rational a."""
    a = rat(a)
    return (a - 1) / (a + 1) > exp_upper(Fraction(-5, 2) / a)


def newman_product_bound_holds(Delta, n: int) -> bool:
    """prod_{i<=n} (D^i+1)/(D^i-1) > exp(2(D^n-1)/(D^n(D-1)))."""
    D = rat(Delta)
    if D <= 1:
        raise InvalidInput("Delta > 1")
    lhs = Fraction(1)
    for i in range(1, n + 1):
        lhs *= (D ** i + 1) / (D ** i - 1)
    return lhs > exp_upper(2 * (D ** n - 1) / (D ** n * (D - 1)))


def infinite_product_upper(Delta, K: int) -> tuple:
    """(partial product up to K, exponent bounding the tail) for prod (D^i+1)/(D^i-1)."""
    D = rat(Delta)
    part = Fraction(1)
    for i in range(1, K + 1):
        part *= (D ** i + 1) / (D ** i - 1)
    tail_exp = 2 * D / ((D ** (K + 1) - 1) * (D - 1))
    return part, tail_exp


def infinite_product_bound_holds(Delta, K: int = 40) -> bool:
    """prod_{i>=1} (D^i+1)/(D^i-1) < exp(4/(D-1)), with a rigorous tail."""
    D = rat(Delta)
    if D <= 1:
        raise InvalidInput("Delta > 1")
    part, tail_exp = infinite_product_upper(D, K)
    with _precision():
        total = _iv(part) * iv.exp(_iv(tail_exp))
        target = iv.exp(_iv(Fraction(4) / (D - 1)))
    return upper_of(total) < lower_of(target)


def half_shift_product(n: int) -> UPoly:
    """prod_{i=1}^n (t - i - 1/2)."""
    return UPoly.from_roots(Fraction(2 * i + 1, 2) for i in range(1, n + 1))


def half_shift_closed_forms(n: int, t: int) -> tuple:
    """Closed forms of |p(t)| and |p(-t)| for p = half_shift_product(n), 1 <= t <= n+1."""
    from math import factorial as F

    pt = Fraction(F(2 * t - 2) * F(2 * n - 2 * t + 2), 4 ** n * F(t - 1) * F(n - t + 1))
    pm = Fraction(F(t) * F(2 * n + 2 * t + 1), 4 ** n * F(2 * t + 1) * F(n + t))
    return pt, pm


def half_shift_max_ratio(n: int) -> Fraction:
    p = half_shift_product(n)
    return max(abs(p(-t) / p(t)) for t in range(1, n + 2))


def floor_bound_check(n: int, d: int, bits: int = DEFAULT_BITS) -> dict:
    """Compare the exact minimum ratio against exp(-4 ln(3d)/ln(n/d) - 8/(sqrt D - 1))."""
    if not 1 <= d or 55 * d > n:
        raise InvalidInput("need 1 <= d <= n/55")
    D = dyadic_power(Fraction(n, d), 1, d, bits, "down")
    sD = dyadic_root(D, 2, bits, "down")
    p = UPoly.from_roots(d * D ** i * sD for i in range(1, d))
    pts = [(d * D ** j).__floor__() for j in range(1, d + 1)]
    ratio = min(abs(p(t) / p(-t)) for t in pts)
    with _precision():
        Di = _iv(D)
        expo = -4 * iv.log(3 * d) / iv.log(iv.mpf(n) / d) - 8 / (iv.sqrt(Di) - 1)
        floor = upper_of(iv.exp(expo))
    return {"ratio": ratio, "floor_upper": floor, "holds": ratio > floor, "Delta": D}


# ---------------------------------------------------------------- moment matching


@dataclass
class MomentMatchedPair:
    m: int
    lambda0: dict
    lambda1: dict
    alphas: list


def moment_difference(m: int, d: int) -> Fraction:
    """E_{lambda0}[(2t)^d] - E_{lambda1}[(2t+1)^d], exactly."""
    s = Fraction(0)
    for t in range(-m, m + 1):
        s += binomial(4 * m + 1, 2 * m + 2 * t) * (2 * t) ** d
        s -= binomial(4 * m + 1, 2 * m + 2 * t + 1) * (2 * t + 1) ** d
    return s / 16 ** m


def moment_matched_pair(m: int) -> MomentMatchedPair:
    if not 1 <= m <= MOMENT_CAP:
        raise ResourceLimit(f"m must lie in 1..{MOMENT_CAP}")
    den = 16 ** m
    lam0 = {t: Fraction(binomial(4 * m + 1, 2 * m + 2 * t), den) for t in range(-m, m + 1)}
    lam1 = {t: Fraction(binomial(4 * m + 1, 2 * m + 2 * t + 1), den) for t in range(-m, m + 1)}
    if sum(lam0.values()) != 1 or sum(lam1.values()) != 1:
        raise VerificationFailure("moment-matched distributions do not sum to 1")
    alphas = []
    for d in range(4 * m + 1):
        a0 = sum(w * (2 * t) ** d for t, w in lam0.items())
        a1 = sum(w * (2 * t + 1) ** d for t, w in lam1.items())
        if a0 != a1:
            raise VerificationFailure(f"moments differ at d={d}")
        # the same identity read as an alternating binomial sum over 0..4m+1
        if not check_comb_identity(4 * m + 1, (UPoly([-2 * m, 1]) ** d).c):
            raise VerificationFailure(f"binomial identity fails at d={d}")
        alphas.append(a0)
    return MomentMatchedPair(m, lam0, lam1, alphas)


@dataclass
class ProductDistribution:
    """Independent coordinates; marginal[j] maps value -> probability."""
    marginals: list

    def atoms(self, cap: int = COUPLING_ATOM_CAP):
        size = 1
        for mg in self.marginals:
            size *= len(mg)
        if size > cap:
            raise ResourceLimit(f"{size} atoms exceed cap {cap}")
        for combo in itertools.product(*[sorted(mg.items()) for mg in self.marginals]):
            pr = Fraction(1)
            for _, w in combo:
                pr *= w
            yield tuple(v for v, _ in combo), pr


def mu_b(b: Sequence[int], m: int) -> ProductDistribution:
    """lambda_{b_1} x ... x lambda_{b_N} on {0, +-1, ..., +-m}^N."""
    if any(v not in (0, 1) for v in b):
        raise InvalidInput("b must be a 0/1 vector")
    P = moment_matched_pair(m)
    return ProductDistribution([dict(P.lambda1 if v else P.lambda0) for v in b])


def mu_b_moments(b: Sequence[int], m: int, d: int) -> list:
    """E[(2v + b)^d] componentwise, by enumeration of each marginal."""
    D = mu_b(b, m)
    return [sum(w * (2 * v + bj) ** d for v, w in mg.items()) for mg, bj in zip(D.marginals, b)]


# ---------------------------------------------------------------- halfspace coupling


def coupling_target(n: int) -> list:
    """z = (-2^n, ..., -1, 1, ..., 2^n)."""
    return [-(2 ** (n - c)) for c in range(n + 1)] + [2 ** c for c in range(n + 1)]


def _g(n: int, i: int, c: int) -> int:
    # component c (0-based) of e_{n+1+i} - e_{n+2-i}, indices 1-based in i
    return (c == n + i) - (c == n + 1 - i)


@dataclass
class HalfspaceCoupling:
    """Per-component laws of (x_1, ..., x_{n+1}); components are independent."""
    n: int
    z: list
    components: list  # component c -> list of (x tuple, probability)
    alphas: list
    joint: list | None = None

    def expectation(self, fn, c: int) -> Fraction:
        return sum((pr * fn(x) for x, pr in self.components[c]), Fraction(0))


def _component_chain(n: int, c: int, lam: tuple) -> list:
    """Run the generator on one component, branching over every draw."""
    states = [((), 0, Fraction(1))]  # (x so far, y_{i-1}, probability)
    for i in range(1, n + 1):
        nxt = []
        g = _g(n, i, c)
        for xs, y, pr in states:
            b = (y - g) % 2
            u = (b + y - g) // 2
            for v, w in sorted(lam[b].items()):
                if w:
                    nxt.append((xs + (2 * v + b,), v + u, pr * w))
        states = nxt
    out = []
    g = _g(n, n + 1, c)
    for xs, y, pr in states:
        out.append((xs + (-y + g,), pr))
    return out


def halfspace_moment_coupling(n: int, joint_cap: int = COUPLING_ATOM_CAP,
                              max_degree: int | None = None) -> HalfspaceCoupling:
    """Exact law of the coupling with sum 2^(i-1) x_i = z and matched moments.

    Each component evolves independently (mu_b is a product measure), so the
    law is stored per component; the full joint is also built when it fits
    under ``joint_cap``.
    """
    if n < 1:
        raise InvalidInput("n >= 1")
    P = moment_matched_pair(n)
    lam = (P.lambda0, P.lambda1)
    z = coupling_target(n)
    comps = [_component_chain(n, c, lam) for c in range(2 * n + 2)]
    bound = 3 * n + 1
    for c, atoms in enumerate(comps):
        if sum(pr for _, pr in atoms) != 1:
            raise VerificationFailure("component law does not sum to 1")
        for x, _ in atoms:
            if sum(2 ** i * xi for i, xi in enumerate(x)) != z[c]:
                raise VerificationFailure(f"support identity fails at component {c}: {x}")
            if any(abs(xi) > bound for xi in x):
                raise VerificationFailure(f"value outside +-{bound}: {x}")
    C = HalfspaceCoupling(n, z, comps, P.alphas)
    size = 1
    for atoms in comps:
        size *= len(atoms)
    if size <= joint_cap:
        C.joint = _joint(comps)
    top = 4 * n if max_degree is None else max_degree
    _check_span(C, top)
    return C


def _joint(comps) -> list:
    """Joint atoms: tuple of per-component vectors x_i, with probability."""
    out = []
    for combo in itertools.product(*comps):
        pr = Fraction(1)
        for _, w in combo:
            pr *= w
        k = len(combo[0][0])
        xs = tuple(tuple(cx[0][i] for cx in combo) for i in range(k))
        out.append((xs, pr))
    return out


def _check_span(C: HalfspaceCoupling, top: int) -> None:
    n = C.n
    for ds in itertools.product(range(top + 1), repeat=n):
        def mono(x, ds=ds):
            v = 1
            for xi, di in zip(x, ds):
                v *= xi ** di
            return v
        expect = Fraction(1)
        for di in ds:
            expect *= C.alphas[di]
        for c in range(2 * n + 2):
            if C.expectation(mono, c) != expect:
                raise VerificationFailure(f"span property fails for exponents {ds}")
        if C.joint is not None:
            for c in range(2 * n + 2):
                s = sum((pr * mono([xi[c] for xi in xs]) for xs, pr in C.joint), Fraction(0))
                if s != expect:
                    raise VerificationFailure(f"joint law disagrees for exponents {ds}")


def degree_nonincreasing_map(p: Poly, n: int, coupling: HalfspaceCoupling | None = None) -> UPoly:
    """q with E[p(x_1, ..., x_{n+1})] = q(z_c) in every component c.

    Computed symbolically by eliminating x_{n+1} through the support identity
    and replacing each moment by its common value, then checked against the
    exact per-component expectations.
    """
    if p.nvars != n + 1:
        raise InvalidInput(f"need a polynomial in {n + 1} variables")
    if p.degree() > 4 * n:
        raise InvalidInput(f"degree must be <= {4 * n}")
    C = coupling or halfspace_moment_coupling(n)
    # variables of the substituted polynomial: x_1..x_n, z
    nv = n + 1
    xs = [Poly.var(i, nv) for i in range(n)]
    zv = Poly.var(n, nv)
    last = zv * Fraction(1, 2 ** n) - sum((xs[i] * Fraction(2 ** i, 2 ** n) for i in range(n)), Poly(nv))
    sub = p.substitute(xs + [last])
    q = UPoly()
    for e, coef in sub.terms.items():
        w = coef
        for di in e[:n]:
            w *= C.alphas[di]
        q = q + UPoly.monomial(e[n], w)
    if q.degree() > p.degree():
        raise VerificationFailure("map increased the degree")
    for c in range(2 * n + 2):
        if C.expectation(lambda x: p(x), c) != q(C.z[c]):
            raise VerificationFailure(f"component {c} inconsistent with a single q")
    return q


# ---------------------------------------------------------------- sign pattern


@dataclass
class SignPatternRecord:
    n: int
    function: BooleanFunction
    degree: int
    farkas: list
    verified: bool
    boundary_polynomial: Poly | None = None

    @property
    def points(self):
        return self.function.domain


def sign_pattern_sets(n: int) -> list:
    """A_i = {x in {0,+-1..+-(3n+1)}^{n+1} : sum 2^(j-1) x_j = 2^i}, i = 0..n."""
    r = 3 * n + 1
    out = []
    for i in range(n + 1):
        Ai = []
        for head in itertools.product(range(-r, r + 1), repeat=n):
            rest = 2 ** i - sum(2 ** j * v for j, v in enumerate(head))
            if rest % (2 ** n) == 0 and abs(rest // 2 ** n) <= r:
                Ai.append(tuple(head) + (rest // 2 ** n,))
        out.append(sorted(Ai))
    return out


def sign_pattern_function(n: int) -> BooleanFunction:
    """g = (-1)^i on A_i and (-1)^(i+1) on -A_i."""
    pts = {}
    for i, Ai in enumerate(sign_pattern_sets(n)):
        for x in Ai:
            pts[x] = (-1) ** i
            pts[tuple(-v for v in x)] = (-1) ** (i + 1)
    dom = sorted(pts)
    return from_table(dom, [pts[x] for x in dom], f"PATTERN{n}")


def sign_pattern_infeasible(n: int, check_boundary: bool = True) -> SignPatternRecord:
    """Farkas certificate that no degree-2n polynomial realizes the pattern."""
    if not 1 <= n <= 2:
        raise ResourceLimit("sign pattern LP is supported for n in {1, 2}")
    g = sign_pattern_function(n)
    p, out = sign_representation(g, 2 * n)
    if p is not None:
        raise VerificationFailure(f"pattern is realizable at degree {2 * n}")
    from .degrees import sign_rep_lp
    lp = sign_rep_lp(g, monomial_basis(exponent_caps(g.coordinate_values()), 2 * n))
    ok = check_farkas(lp, out.farkas)
    if not ok:
        raise VerificationFailure("sign-pattern Farkas vector failed re-check")
    rec = SignPatternRecord(n, g, 2 * n, out.farkas, ok)
    if check_boundary:
        q, _ = sign_representation(g, 2 * n + 1)
        if q is None:
            raise VerificationFailure(f"pattern not realizable at degree {2 * n + 1}")
        rec.boundary_polynomial = q
    return rec


# ---------------------------------------------------------------- criterion certificates


@dataclass
class RationalLowerBoundCert:
    S: list
    psi: dict
    delta: Fraction
    d: int
    implied_bound: Fraction
    info: dict = field(default_factory=dict)


def implied_bound(delta) -> Fraction:
    delta = rat(delta)
    return min(Fraction(1), 2 * delta / (1 + delta))


def _neg(x):
    return tuple(-v for v in x)


def verify_lower_bound_cert(cert: RationalLowerBoundCert) -> bool:
    """Independent exact re-check of both defining conditions."""
    S = [tuple(x) for x in cert.S]
    if not S:
        return False
    Sset = set(S)
    if any(_neg(x) in Sset for x in S):
        return False
    support = Sset | {_neg(x) for x in S}
    psi = {tuple(k): rat(v) for k, v in cert.psi.items()}
    if any(v != 0 and x not in support for x, v in psi.items()):
        return False
    if cert.delta <= 0:
        return False
    for x in S:
        a, b = psi.get(x, 0), psi.get(_neg(x), 0)
        if a <= 0 or a < cert.delta * abs(b):
            return False
    pts = sorted(support)
    coord_values = [sorted({x[j] for x in pts}) for j in range(len(pts[0]))]
    for e in monomial_basis(exponent_caps(coord_values), cert.d):
        if sum(psi.get(x, 0) * monomial_value(x, e) for x in pts):
            return False
    return cert.implied_bound == implied_bound(cert.delta)


def _finish(S, psi, d, **info) -> RationalLowerBoundCert:
    if not S:
        raise VerificationFailure("empty support: psi vanishes on S")
    ratios = []
    for x in S:
        a, b = psi[x], psi[_neg(x)]
        if a <= 0:
            raise VerificationFailure(f"psi not positive at {x}")
        if b == 0:
            raise VerificationFailure(f"psi vanishes at {_neg(x)}")
        ratios.append(a / abs(b))
    delta = min(ratios)
    cert = RationalLowerBoundCert(list(S), psi, delta, d, implied_bound(delta), info)
    if not verify_lower_bound_cert(cert):
        raise VerificationFailure("criterion certificate failed re-check")
    return cert


def halfspace_criterion_cert(n: int, bits: int = DEFAULT_BITS,
                             record: SignPatternRecord | None = None) -> RationalLowerBoundCert:
    """Certificate for the grid halfspace at degree n, built from the
    sign-pattern Farkas vector."""
    rec = record or sign_pattern_infeasible(n, check_boundary=False)
    g = rec.function
    w = gordan_signed_from_farkas(g, rec.farkas[:len(g)], 2 * n)
    if not verify_witness(g, w):
        raise VerificationFailure("signed witness failed re-check")
    phi = dict(zip(g.domain, w.weights))
    if all(v == 0 for v in phi.values()):
        raise VerificationFailure("phi vanishes identically")
    s2 = dyadic_root(2, 2, bits, "down")

    def p(x):
        lin = sum(2 ** i * v for i, v in enumerate(x))
        out = Fraction(1)
        for j in range(n):
            out *= lin - 2 ** j * s2
        return out

    psi = {}
    for x in g.domain:
        psi[x] = (-1) ** n * (phi[x] - phi[_neg(x)]) * p(x)
    A = [x for Ai in sign_pattern_sets(n) for x in Ai]
    S = [x for x in A if psi[x] != 0]
    cert = _finish(S, psi, n, family="GRID-HALFSPACE", n=n, sqrt2=s2)
    cert.info["floor_upper"] = halfspace_floor_upper()
    cert.info["floor_holds"] = cert.delta > cert.info["floor_upper"]
    return cert


def maj_criterion_cert(n: int, d: int, S: Sequence[int], r: UPoly, **info) -> RationalLowerBoundCert:
    """psi(t) = (-1)^t C(2n, n+t) r(t) on {-n..n}; bound on R+(d, S u -S)."""
    if not 0 <= d <= 2 * n - 1:
        raise InvalidInput("need 0 <= d <= 2n-1")
    S = sorted(set(int(t) for t in S))
    if not S or S[0] < 1 or S[-1] > n:
        raise InvalidInput("S must be a nonempty subset of 1..n")
    if r.degree() > 2 * n - d - 1:
        raise InvalidInput(f"deg r = {r.degree()} exceeds {2 * n - d - 1}")
    support = set(S) | {-t for t in S}
    for t in range(-n, n + 1):
        v = r(t)
        if t in support and v == 0:
            raise InvalidInput(f"r vanishes at {t} in S u -S")
        if t not in support and v != 0:
            raise InvalidInput(f"r does not vanish at {t}")
    # orthogonality through the alternating binomial identity: for u of degree
    # <= d, r*u has degree <= 2n-1 and sum (-1)^j C(2n,j) (ru)(j-n) = 0
    for j in range(d + 1):
        ru = r * UPoly.monomial(j)
        shifted = ru.shift(-n)
        if not check_comb_identity(2 * n, shifted.c):
            raise VerificationFailure("binomial identity failed")
    psi = {(t,): Fraction((-1) ** (t % 2) * binomial(2 * n, n + t)) * r(t)
           for t in range(-n, n + 1) if t in support}
    return _finish([(t,) for t in S], psi, d, n=n, **info)


def maj_small_degree_preset(n: int, d: int, bits: int = DEFAULT_BITS) -> RationalLowerBoundCert:
    """Geometric set S = {1, D, ..., D^d}, D = floor(n^(1/d)) >= 2."""
    if d < 1:
        raise InvalidInput("d >= 1")
    D = iroot(n, d)
    if D < 2:
        raise InvalidInput("floor(n^(1/d)) must be >= 2")
    S = [D ** i for i in range(d + 1)]
    sD = dyadic_root(D, 2, bits, "down")
    excl = [i for i in range(-n, n + 1) if abs(i) not in S or i == 0]
    r = UPoly.from_roots([D ** i * sD for i in range(d)] + excl, lead=(-1) ** n)
    cert = maj_criterion_cert(n, d, S, r, preset="small-degree", Delta=D)
    cert.info["floor_upper"] = small_degree_floor_upper(D)
    cert.info["floor_holds"] = cert.delta > cert.info["floor_upper"]
    return cert


def maj_high_degree_preset(n: int, d: int, bits: int = DEFAULT_BITS) -> RationalLowerBoundCert:
    """S = {1..k} u {floor(d D^i)}, D = (n/d)^(1/d), for log n < d < n/55."""
    if not 1 <= d or 55 * d >= n:
        raise InvalidInput("need d < n/55")
    # k = ceil(d / log2(n/d)): least k with (n/d)^k >= 2^d
    k = 1
    while Fraction(n, d) ** k < 2 ** d:
        k += 1
    D = dyadic_power(Fraction(n, d), 1, d, bits, "down")
    sD = dyadic_root(D, 2, bits, "down")
    S2 = [(d * D ** i).__floor__() for i in range(1, d + 1)]
    S = sorted(set(range(1, k + 1)) | set(S2))
    roots = [Fraction(2 * i + 1, 2) for i in range(1, k + 1)]
    roots += [d * D ** i * sD for i in range(1, d)]
    roots += [i for i in range(-n, n + 1) if abs(i) not in S or i == 0]
    r = UPoly.from_roots(roots, lead=(-1) ** n)
    return maj_criterion_cert(n, d, S, r, preset="high-degree", k=k, Delta=D)


def maj_near_linear_preset(n: int, d: int) -> RationalLowerBoundCert:
    """r = (-1)^n t prod_{i<=d} (t-i-1/2) prod_{i=d+2}^n (t^2-i^2), S = {1..d+1}."""
    if not 1 <= d <= n - 1:
        raise InvalidInput("need 1 <= d <= n-1")
    r = UPoly([0, (-1) ** n]) * half_shift_product(d)
    for i in range(d + 2, n + 1):
        r = r * UPoly([-i * i, 0, 1])
    return maj_criterion_cert(n, d, range(1, d + 1 + 1), r, preset="near-linear")


def maj_presets(n: int, d: int) -> list:
    """All applicable preset certificates (bounds on R+(d, {+-1..+-n}))."""
    out = []
    if d >= 1 and iroot(n, d) >= 2:
        out.append(maj_small_degree_preset(n, d))
    if 1 <= d and 55 * d < n:
        try:
            out.append(maj_high_degree_preset(n, d))
        except (InvalidInput, VerificationFailure):
            pass
    if 1 <= d <= n - 1 and 55 * d >= n:
        out.append(maj_near_linear_preset(n, d))
    return out


# ---------------------------------------------------------------- majority table


@dataclass
class MajTableRow:
    n: int
    d: int
    criterion_lower: Fraction
    criterion_method: str
    bracket: ErrorBracket
    construction_upper: Fraction
    construction_method: str

    def sandwich_holds(self) -> bool:
        b = self.bracket
        return self.criterion_lower <= b.lower <= b.upper <= self.construction_upper


def maj_construction(n: int, d: int) -> RationalApproximant:
    """Best verified construction of degree <= d for sign on {+-1..+-n}."""
    if d >= n:
        return maj_univariate_upper(n, n)
    cands = [newman_sign_approximant(n, d)] if d >= 1 else []
    if d >= 2:
        cands.append(maj_univariate_upper(n, d))
    if not cands:
        from .rational import trivial_approximant
        return trivial_approximant(sign_domain(n))
    cands = [A for A in cands if A.denominator_positive and A.degree <= d]
    return min(cands, key=lambda A: A.verified_error)


def maj_error_table(n: int, d_list: Sequence[int], precision=Fraction(1, 64)) -> list:
    if not 1 <= n <= 32:
        raise ResourceLimit("n must lie in 1..32")
    f = sign_domain(n)
    rows = []
    for d in d_list:
        if d >= n:
            A = maj_univariate_upper(n, n)
            if A.verified_error != 0:
                raise VerificationFailure("interpolant not exact")
            b = ErrorBracket(d, Fraction(0), Fraction(0), None, A, [])
            rows.append(MajTableRow(n, d, Fraction(0), "trivial", b, Fraction(0), "interpolant"))
            continue
        certs = maj_presets(n, d)
        if certs:
            best = max(certs, key=lambda c: c.implied_bound)
            lower, lmethod = best.implied_bound, best.info.get("preset", "criterion")
            seed = (lower, best)
        else:
            lower, lmethod, seed = Fraction(0), "none", None
        A = maj_construction(n, d)
        b = rational_error_bracket(f, d, precision, lower_seed=seed, upper_seed=A)
        row = MajTableRow(n, d, lower, lmethod, b, A.verified_error, A.info.get("method", "?"))
        if not row.sandwich_holds():
            raise VerificationFailure(f"bracket sandwich fails at n={n}, d={d}")
        rows.append(row)
    return rows


TABLE_HEADER = "n,d,criterion_lower,lower,upper,construction_upper,lower_method,upper_method"


def table_csv(rows: Sequence[MajTableRow]) -> str:
    lines = [TABLE_HEADER]
    for r in rows:
        lines.append(",".join([str(r.n), str(r.d), fmt(r.criterion_lower), fmt(r.bracket.lower),
                               fmt(r.bracket.upper), fmt(r.construction_upper),
                               r.criterion_method, r.construction_method]))
    return "\n".join(lines) + "\n"
