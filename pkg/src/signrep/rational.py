"""Rational approximation of sign functions: explicit constructions and an
LP-certified bracket for the best positive-denominator error."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .boolfun import CUBE, BooleanFunction, make_named
from .degrees import design_matrix, exponent_caps, monomial_basis, poly_from
from .errors import InvalidInput, VerificationFailure
from .exact import (DEFAULT_BITS, Poly, UPoly, URational, cube_multilinear,
                    dyadic_power, dyadic_root, lagrange_1d, rat)
from .lp import LinearProgram, Optimal, check_farkas, solve

SLACK_TOLERANCE = Fraction(1, 2 ** 40)


class SurrogatePrecision(VerificationFailure):
    """A dyadic surrogate was too coarse to certify a claimed bound."""


# ---------------------------------------------------------------- containers


@dataclass
class RationalApproximant:
    f: BooleanFunction
    num: Poly
    den: Poly
    verified_error: Fraction
    denominator_positive: bool
    info: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return max(self.num.degree(), self.den.degree(), 0)

    def __call__(self, x):
        return self.num(x) / self.den(x)


def make_approximant(f: BooleanFunction, num: Poly, den: Poly, **info) -> RationalApproximant:
    """Evaluate num/den on every point of f's domain and record the exact error."""
    err = Fraction(0)
    pos = True
    for x, y in f.items():
        q = den(x)
        if q == 0:
            raise VerificationFailure(f"denominator vanishes at {x}")
        if q < 0:
            pos = False
        e = abs(y - num(x) / q)
        if e > err:
            err = e
    return RationalApproximant(f, num, den, err, pos, dict(info))


def approximant_from_values(f, num: Poly, den: Poly, nv, dv, **info) -> RationalApproximant:
    """Same as make_approximant but with precomputed point values."""
    err = Fraction(0)
    pos = True
    for y, a, b in zip(f.values, nv, dv):
        if b == 0:
            raise VerificationFailure("denominator vanishes")
        pos = pos and b > 0
        err = max(err, abs(y - a / b))
    return RationalApproximant(f, num, den, err, pos, dict(info))


def square_denominator(A: RationalApproximant) -> RationalApproximant:
    """p/q -> pq/q^2: same values, positive denominator, twice the degree."""
    return make_approximant(A.f, A.num * A.den, A.den * A.den, **A.info)


def upoly_to_poly(u: UPoly, nvars: int = 1, var: int = 0) -> Poly:
    return u(Poly.var(var, nvars))


def univariate_approximant(f: BooleanFunction, R: URational, **info) -> RationalApproximant:
    return make_approximant(f, upoly_to_poly(R.num), upoly_to_poly(R.den), **info)


def constant_approximant(f: BooleanFunction) -> RationalApproximant:
    v = f.values[0]
    if not f.is_constant():
        raise InvalidInput("not constant")
    return make_approximant(f, Poly.const(v, f.nvars), Poly.const(1, f.nvars))


# ---------------------------------------------------------------- LP bracket


@dataclass
class FarkasRecord:
    eps: Fraction
    farkas: list
    verified: bool


@dataclass
class ErrorBracket:
    d: int
    lower: Fraction
    upper: Fraction
    lower_certificate: object
    upper_certificate: RationalApproximant
    probes: list = field(default_factory=list)


def bracket_lp(f: BooleanFunction, d: int, eps) -> tuple:
    eps = rat(eps)
    caps = exponent_caps(f.coordinate_values())
    basis = monomial_basis(caps, d)
    M = design_matrix(f.domain, basis)
    nb = len(basis)
    A, rel, b = [], [], []
    for row, y in zip(M, f.values):
        fp = [y * m for m in row]
        A.append(fp + [-(1 - eps) * m for m in row])
        rel.append(">=")
        b.append(0)
        A.append([-v for v in fp] + [(1 + eps) * m for m in row])
        rel.append(">=")
        b.append(0)
        A.append([0] * nb + list(row))
        rel.append(">=")
        b.append(1)
    return LinearProgram(A, rel, b), basis


def rational_feasibility(f: BooleanFunction, d: int, eps):
    """Approximant with error <= eps and q >= 1, or a Farkas record."""
    lp, basis = bracket_lp(f, d, eps)
    out = solve(lp)
    nb = len(basis)
    if isinstance(out, Optimal):
        p = poly_from(basis, out.x[:nb], f.nvars)
        q = poly_from(basis, out.x[nb:], f.nvars)
        A = make_approximant(f, p, q, method="lp")
        if A.verified_error > rat(eps) or not A.denominator_positive:
            raise VerificationFailure("LP approximant failed re-check")
        return A
    ok = check_farkas(lp, out.farkas)
    if not ok:
        raise VerificationFailure("bracket Farkas record failed re-check")
    return FarkasRecord(rat(eps), out.farkas, ok)


def trivial_approximant(f: BooleanFunction) -> RationalApproximant:
    return make_approximant(f, Poly(f.nvars), Poly.const(1, f.nvars), method="zero")


def _dyadic_step(width: Fraction) -> Fraction:
    """Largest 2^-k not exceeding width."""
    k = 0
    while Fraction(1, 2 ** k) > width:
        k += 1
    return Fraction(1, 2 ** k)


def _ceil_to(x: Fraction, step: Fraction) -> Fraction:
    return -((-x) // step) * step


def rational_error_bracket(f: BooleanFunction, d: int, precision=Fraction(1, 64),
                           lower_seed=None, upper_seed: RationalApproximant | None = None) -> ErrorBracket:
    """Certified [lower, upper] for the best positive-denominator degree-d error.

    ``lower_seed`` is an optional (value, certificate) pair; it is accepted
    only after the LP comes back infeasible at a short dyadic level at or
    above it (within precision/4), which then becomes the lower end.
    ``upper_seed`` is an optional verified approximant of degree <= d.
    """
    if d < 0:
        raise InvalidInput("d >= 0")
    precision = rat(precision)
    if precision <= 0:
        raise InvalidInput("precision > 0")
    probes = []
    if upper_seed is not None:
        if upper_seed.degree > d or not upper_seed.denominator_positive:
            raise InvalidInput("upper seed must be a positive-denominator approximant of degree <= d")
        hi, hi_cert = upper_seed.verified_error, upper_seed
    else:
        hi, hi_cert = Fraction(1), trivial_approximant(f)
    lo, lo_cert = Fraction(0), None
    if lower_seed is not None:
        lo, lo_cert = rat(lower_seed[0]), lower_seed[1]
    # probe just above the lower end first; a short dyadic keeps the LP cheap
    if hi < lo:
        raise VerificationFailure("upper certificate below lower certificate")
    step = _dyadic_step(precision / 4)
    at = min(_ceil_to(lo, step), hi) if lo else lo
    r = rational_feasibility(f, d, at)
    probes.append((at, isinstance(r, RationalApproximant)))
    if isinstance(r, RationalApproximant):
        if r.verified_error < lo:
            raise VerificationFailure(f"approximant with error {r.verified_error} below certified lower bound {lo}")
        return ErrorBracket(d, lo, r.verified_error, lo_cert, r, probes)
    lo_cert = (lo_cert, r) if lo_cert is not None else r
    lo = at
    while hi - lo > precision:
        # a dyadic point in the middle half of [lo, hi]
        mid = _ceil_to((lo + hi) / 2, _dyadic_step((hi - lo) / 4))
        r = rational_feasibility(f, d, mid)
        probes.append((mid, isinstance(r, RationalApproximant)))
        if isinstance(r, RationalApproximant):
            hi, hi_cert = r.verified_error, r
            if hi < lo:
                raise VerificationFailure("feasible error below certified lower bound")
        else:
            lo, lo_cert = mid, r
    return ErrorBracket(d, lo, hi, lo_cert, hi_cert, probes)


# ---------------------------------------------------------------- Newman


def newman(N, k: int, bits: int = DEFAULT_BITS) -> URational:
    """S(t) = N^(-1/2k) (p(t) - p(-t)) / (p(t) + p(-t)), p(t) = prod (t + a^(2i-1)),
    a = N^(1/2k) replaced by a dyadic value from below."""
    N = rat(N)
    if N <= 1 or k < 1:
        raise InvalidInput("need N > 1 and k >= 1")
    a = dyadic_root(N, 2 * k, bits, "down")
    p = UPoly.from_roots(-a ** (2 * i - 1) for i in range(1, k + 1))
    pm = p.reflect()
    R = URational((p - pm) * (1 / a), p + pm, [(-N, -1), (1, N)])
    R.surrogate = a  # type: ignore[attr-defined]
    return R


def _upper_root_inverse(N, k, bits):
    """Dyadic upper bound for N^(-1/k)."""
    return dyadic_power(N, -1, k, bits, "up")


def power_bound_holds(err, N, k) -> bool:
    """Exact test of err <= 1 - N^(-1/k), i.e. N (1 - err)^k >= 1."""
    err = rat(err)
    if err > 1:
        return False
    return rat(N) * (1 - err) ** k >= 1


def power_bound_slack(err, N, k, bits=2 * DEFAULT_BITS) -> Fraction:
    if power_bound_holds(err, N, k):
        return Fraction(0)
    return rat(err) - (1 - _upper_root_inverse(N, k, bits))


def newman_certificate(N, k: int, bits: int = DEFAULT_BITS, grid_points=None,
                       tolerance=SLACK_TOLERANCE) -> dict:
    """Check S on the integer grid of [1,N] and [-N,-1] against 1 - N^(-1/k)."""
    N = rat(N)
    S = newman(N, k, bits)
    if grid_points is None:
        top = N.numerator // N.denominator
        grid_points = [t for t in range(-top, top + 1) if t]
    worst, worst_t = Fraction(0), None
    for t in grid_points:
        dv = S.den(t)
        if dv <= 0:
            raise VerificationFailure(f"denominator not positive at t={t}")
        e = abs((1 if t > 0 else -1) - S.num(t) / dv)
        if e > worst:
            worst, worst_t = e, t
    slack = power_bound_slack(worst, N, k)
    if slack > tolerance:
        raise SurrogatePrecision(f"error {worst} at t={worst_t} exceeds bound by {slack}")
    return {"S": S, "error": worst, "worst_t": worst_t, "slack": slack,
            "exact_bound_holds": slack == 0, "grid_size": len(grid_points)}


def newman_balance_gap(N, k: int, t, bits: int = DEFAULT_BITS) -> Fraction:
    """p(t)(a-1) - (a+1)|p(-t)| with the surrogate a; >= 0 means balanced."""
    a = dyadic_root(N, 2 * k, bits, "down")
    p = UPoly.from_roots(-a ** (2 * i - 1) for i in range(1, k + 1))
    return p(t) * (a - 1) - (a + 1) * abs(p(-t))


# ---------------------------------------------------------------- boosting


def _compose_univariate(S: URational, A: RationalApproximant, scale) -> tuple:
    """S(A / scale) as (num, den) Polys: homogenize by (scale*q)^deg S."""
    k = max(S.num.degree(), S.den.degree())
    a, b = A.num, A.den * rat(scale)
    nv = A.f.nvars
    apow = [Poly.const(1, nv)]
    bpow = [Poly.const(1, nv)]
    for _ in range(k):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    def hom(u: UPoly):
        out = Poly(nv)
        for i, c in enumerate(u.c):
            if c:
                out = out + apow[i] * bpow[k - i] * c
        return out
    return hom(S.num), hom(S.den)


def error_boost(A: RationalApproximant, k: int, bits: int = DEFAULT_BITS,
                tolerance=SLACK_TOLERANCE) -> RationalApproximant:
    """S(A/(1-eps)) with S from newman at N=(1+eps)/(1-eps); error bound
    1 - ((1-eps)/(1+eps))^(1/k)."""
    eps = A.verified_error
    if eps >= 1:
        raise InvalidInput("error must be < 1")
    if k < 1:
        raise InvalidInput("k >= 1")
    if eps == 0:
        return A
    N = (1 + eps) / (1 - eps)
    S = newman(N, k, bits)
    num, den = _compose_univariate(S, A, 1 - eps)
    # the homogenised denominator carries sign(q)^k; fix so it is positive
    B = make_approximant(A.f, num, den, method="error_boost", k=k, base_error=eps)
    if not B.denominator_positive:
        # input denominator changed sign somewhere; (scale q)^k carries it
        B = square_denominator(B)
    slack = power_bound_slack(B.verified_error, N, k)
    if slack > tolerance:
        raise SurrogatePrecision(f"boosted error exceeds bound by {slack}")
    B.info["slack"] = slack
    return B


def accuracy_boost(A: RationalApproximant, bits: int = DEFAULT_BITS,
                   tolerance=SLACK_TOLERANCE) -> RationalApproximant:
    """S(A) with S(t) = (4s/(1+s)) t / (t^2 + s^2), s = sqrt(1-eps^2).

    The error bound (eps/(1+s))^2 = (1-s)/(1+s) is checked exactly without
    the surrogate (only the prefactor 4s/(1+s) uses it).
    """
    eps = A.verified_error
    if eps >= 1:
        raise InvalidInput("error must be < 1")
    if eps == 0:
        return A
    s2 = 1 - eps * eps
    s = dyadic_root(s2, 2, bits, "down")
    c = 4 * s / (1 + s)
    p, q = A.num, A.den
    num = p * q * c
    den = p * p + q * q * s2
    B = make_approximant(A.f, num, den, method="accuracy_boost", base_error=eps)
    e = B.verified_error
    # e <= (1-s)/(1+s)  <=>  s <= (1-e)/(1+e)  <=>  s^2 <= ((1-e)/(1+e))^2
    holds = e <= 1 and s2 <= ((1 - e) / (1 + e)) ** 2
    slack = Fraction(0)
    if not holds:
        s_hi = dyadic_root(s2, 2, 2 * bits, "up")
        slack = e - (1 - s_hi) / (1 + s_hi)
        if slack > tolerance:
            raise SurrogatePrecision(f"boosted error exceeds bound by {slack}")
    B.info["slack"] = slack
    B.info["bound_holds_exactly"] = holds
    return B


def accuracy_bound(eps) -> Fraction:
    """s^2 = 1 - eps^2, the exact square of the constant used by accuracy_boost."""
    eps = rat(eps)
    return 1 - eps * eps


# ---------------------------------------------------------------- OR


def or_family_approximant(n: int, M) -> RationalApproximant:
    """(1 - M sum x)/(1 + M sum x) on {0,1}^n."""
    M = rat(M)
    if M <= 0:
        raise InvalidInput("M > 0")
    f = make_named("OR", [n])
    s = sum((Poly.var(i, n) for i in range(n)), Poly(n))
    return make_approximant(f, 1 - s * M, 1 + s * M, method="or", M=M)


# ---------------------------------------------------------------- automaton


DIGITS = (-2, -1, 0, 1, 2)
PLUS, MINUS = "+", "-"


def dfa_run(z: Sequence[int]) -> int:
    """Read z_n, ..., z_1 then a trailing 0; return sign(1 + sum 2^i z_i).

    Nonterminal states hold the undetermined prefix value W in {-1, 0, 1}
    (in units of the next digit's weight times two); a step moves to 2W + c
    and becomes terminal once |2W + c| >= 2, since the digits still to come
    can no longer change the sign.
    """
    state = 0
    for c in list(reversed(list(z))) + [0]:
        if state in (PLUS, MINUS):
            continue
        w = 2 * state + c
        if w >= 2:
            state = PLUS
        elif w <= -2:
            state = MINUS
        else:
            state = w
    if state == MINUS:
        return -1
    return 1  # PLUS, or value exactly 0


def _state_from_history(a: int, b: int):
    """The undetermined state implied by the last two symbols, or None."""
    r = (2 * a + b) % 4
    return {0: 0, 1: 1, 3: -1}.get(r)


def dfa_alpha(a: int, b: int, c: int) -> int:
    """Contribution emitted when c is read after a, b: +-1 on entering a
    terminal state, 0 otherwise."""
    v = _state_from_history(a, b)
    if v is None:
        return 0
    w = 2 * v + c
    if w >= 2:
        return 1
    if w <= -2:
        return -1
    return 0


def _tensor_interpolant(fn) -> Poly:
    """Interpolate fn on {-2..2}^3 by a polynomial of per-variable degree <= 4."""
    basis = []
    for v in DIGITS:
        basis.append(lagrange_1d(DIGITS, [1 if u == v else 0 for u in DIGITS]))
    out = Poly(3)
    for a, b, c in itertools.product(range(5), repeat=3):
        val = fn(DIGITS[a], DIGITS[b], DIGITS[c])
        if val:
            term = (upoly_to_poly(basis[a], 3, 0) * upoly_to_poly(basis[b], 3, 1)
                    * upoly_to_poly(basis[c], 3, 2))
            out = out + term * val
    return out


_ALPHA_CACHE: dict = {}


def alpha_polynomials():
    if not _ALPHA_CACHE:
        ap = _tensor_interpolant(dfa_alpha)
        aa = _tensor_interpolant(lambda a, b, c: abs(dfa_alpha(a, b, c)))
        for a, b, c in itertools.product(DIGITS, repeat=3):
            if ap((a, b, c)) != dfa_alpha(a, b, c) or aa((a, b, c)) != abs(dfa_alpha(a, b, c)):
                raise VerificationFailure("alpha interpolation mismatch")
        _ALPHA_CACHE["alpha"] = ap
        _ALPHA_CACHE["abs"] = aa
    return _ALPHA_CACHE["alpha"], _ALPHA_CACHE["abs"]


DFA_M_THRESHOLD = Fraction(2)


def _stream_terms(n):
    """Index triples (i+2, i+1, i) for i = 0..n; index 0 and > n mean the digit 0."""
    return [(i + 2, i + 1, i) for i in range(n + 1)]


def dfa_numden(n: int, M) -> tuple:
    """Numerator and denominator polynomials of A_M in z_1..z_n."""
    M = rat(M)
    ap, aa = alpha_polynomials()
    zero = Poly(n)
    Z = lambda j: Poly.var(j - 1, n) if 1 <= j <= n else zero
    num = Poly.const(1, n)
    den = Poly.const(1, n)
    for i, (j2, j1, j0) in enumerate(_stream_terms(n)):
        args = [Z(j2), Z(j1), Z(j0)]
        w = M ** (i + 1)
        num = num + ap.substitute(args) * w
        den = den + aa.substitute(args) * w
    return num, den


def dfa_values(z: Sequence[int], M) -> tuple:
    """(numerator, denominator) of A_M at z from the alpha table."""
    n = len(z)
    zz = lambda j: z[j - 1] if 1 <= j <= n else 0
    num = den = Fraction(1)
    Mp = rat(M)
    for (j2, j1, j0) in _stream_terms(n):
        a = dfa_alpha(zz(j2), zz(j1), zz(j0))
        num += Mp * a
        den += Mp * abs(a)
        Mp *= M
    return num, den


def dfa_halfspace_approximant(n: int, M, direct_eval_limit: int = 4) -> RationalApproximant:
    """A_M on {0,+-1,+-2}^n approximating sign(1 + sum 2^i z_i).

    The polynomials are evaluated directly for n <= direct_eval_limit; above
    that the per-term values of the (verified) alpha interpolants are used.
    """
    M = rat(M)
    if M < DFA_M_THRESHOLD:
        raise InvalidInput(f"M must be at least {DFA_M_THRESHOLD} for certified signs")
    f = make_named("DIGIT-HALFSPACE", [n])
    num, den = dfa_numden(n, M)
    if n <= direct_eval_limit:
        A = make_approximant(f, num, den, method="dfa", M=M)
    else:
        nv, dv = zip(*(dfa_values(z, M) for z in f.domain))
        A = approximant_from_values(f, num, den, nv, dv, method="dfa", M=M)
    for x, y in f.items():
        if dfa_run(x) != y:
            raise VerificationFailure(f"automaton disagrees with target at {x}")
    bad = [x for x, y in f.items() if (A.num(x) if n <= direct_eval_limit else dfa_values(x, M)[0]) * y <= 0]
    if bad:
        raise VerificationFailure(f"sign failure at {bad[0]}")
    return A


# ---------------------------------------------------------------- canonical halfspace


def _ceil_log2(k: int) -> int:
    return (k - 1).bit_length()


def signed_digits(s: int, width: int) -> list:
    """z_1..z_width in {-1,0,1} with s = sum 2^(m-1) z_m (sign times binary)."""
    if abs(s) >= 2 ** width:
        raise InvalidInput("value does not fit")
    sg = 1 if s >= 0 else -1
    return [sg * ((abs(s) >> m) & 1) for m in range(width)]


def halfspace_digit_stream(x: Sequence[int], n: int, k: int) -> list:
    """w_1..w_P in {0,+-1,+-2} with sum_ij 2^i x_ij = sum_p 2^p w_p."""
    D = _ceil_log2(k)
    L = -(-n // D)
    P = (L + 1) * D
    w = [0] * (P + 1)
    for l in range(L):
        s = 0
        for t in range(1, D + 1):
            i = l * D + t
            if i <= n:
                s += 2 ** (t - 1) * sum(x[(i - 1) * k + j] for j in range(k))
        for m, z in enumerate(signed_digits(s, 2 * D), start=1):
            # weight 2^(lD + m - 1) in the halved sum -> stream index lD + m
            w[l * D + m] += z
    return w[1:]


def cube_multilinear_interpolant(values: dict, n: int) -> Poly:
    """Unique multilinear polynomial on {-1,+1}^n with the given values."""
    pts = list(itertools.product(CUBE, repeat=n))
    coeff = {}
    for S in itertools.product((0, 1), repeat=n):
        tot = Fraction(0)
        for x in pts:
            chi = 1
            for xi, si in zip(x, S):
                if si:
                    chi *= xi
            tot += values[x] * chi
        if tot:
            coeff[S] = tot / 2 ** n
    return Poly(n, coeff)


def canonical_halfspace_zero_error(n: int, k: int, M) -> RationalApproximant:
    """Sign-correct approximant of sign(1 + sum 2^i x_ij) with error -> 0 as M grows."""
    M = rat(M)
    f = make_named("CANONICAL-HALFSPACE", [n, k])
    nk = n * k
    if k == 1:
        return make_approximant(f, Poly.var(n - 1, nk), Poly.const(1, nk), method="top-variable")
    if M < DFA_M_THRESHOLD:
        raise InvalidInput(f"M must be at least {DFA_M_THRESHOLD}")
    D = _ceil_log2(k)
    nv, dv = {}, {}
    for x in f.domain:
        w = halfspace_digit_stream(x, n, k)
        if any(abs(c) > 2 for c in w):
            raise VerificationFailure("stream digit out of range")
        if 1 + sum(2 ** (p + 1) * c for p, c in enumerate(w)) != 1 + sum(
                2 ** (idx // k + 1) * v for idx, v in enumerate(x)):
            raise VerificationFailure("digit regrouping changed the sum")
        nv[x], dv[x] = dfa_values(w, M)
    num = cube_multilinear_interpolant(nv, nk)
    den = cube_multilinear_interpolant(dv, nk)
    bound = 64 * k * D + 1
    A = approximant_from_values(f, num, den, [nv[x] for x in f.domain], [dv[x] for x in f.domain],
                                method="regrouped-dfa", M=M, degree_bound=bound)
    if A.degree > bound:
        raise VerificationFailure(f"degree {A.degree} exceeds {bound}")
    if any(nv[x] * y <= 0 for x, y in f.items()):
        raise VerificationFailure("sign failure")
    return A


# ---------------------------------------------------------------- majority


def sign_domain(n: int) -> BooleanFunction:
    return make_named("SIGN", [n])


def maj_exact_interpolant(n: int) -> URational:
    p = UPoly.from_roots(-i for i in range(1, n + 1))
    pm = p.reflect()
    return URational(p - pm, p + pm, [(1, n), (-n, -1)])


def maj_linear_approximant(n: int) -> RationalApproximant:
    """Exact approximant of MAJ_n (n odd) as a rational function of t = sum x_i.

    p(t) = prod_{j odd <= n} (t + j); (p(t) - p(-t)) / (p(t) + p(-t)) has
    degree (n+1)/2 and equals sign t on the odd values of t.
    """
    if n < 1 or n % 2 == 0:
        raise InvalidInput("n must be odd")
    p = UPoly.from_roots(-j for j in range(1, n + 1, 2))
    pm = p.reflect()
    t = sum((Poly.var(i, n) for i in range(n)), Poly(n))
    num = cube_multilinear((p - pm)(t))
    den = cube_multilinear((p + pm)(t))
    A = make_approximant(make_named("MAJ", [n]), num, den, method="linear-form")
    if A.verified_error != 0 or not A.denominator_positive:
        raise VerificationFailure("linear-form interpolant not exact")
    return A


def maj_univariate_upper(n: int, d: int, bits: int = DEFAULT_BITS) -> RationalApproximant:
    """Approximant of sign t on {+-1..+-n} of degree 2*floor(d/2) (d >= n: exact)."""
    f = sign_domain(n)
    if d >= n:
        A = univariate_approximant(f, maj_exact_interpolant(n), method="interpolant")
        if A.verified_error != 0:
            raise VerificationFailure("interpolant not exact")
        return A
    k = d // 2
    if k < 1:
        raise InvalidInput("need d >= 2")
    Delta = dyadic_power(Fraction(n, k), 1, k, bits, "down")
    p = UPoly.from_roots([-i for i in range(1, k + 1)] + [-k * Delta ** i for i in range(1, k + 1)])
    pm = p.reflect()
    ratios = [p(t) / abs(pm(t)) for t in range(1, n + 1) if pm(t) != 0]
    if not ratios:
        c = Fraction(1)
        Aval = None
    else:
        Aval = min(ratios)
        c = (Aval * Aval - 1) / (Aval * Aval + 1)
    R = URational((p - pm) * c, p + pm)
    out = univariate_approximant(f, R, method="balanced-product", A=Aval, Delta=Delta)
    if Aval is not None and Aval > 1 and out.verified_error > 2 * Aval / (Aval * Aval + 1):
        raise VerificationFailure("error exceeds 2A/(A^2+1)")
    return out


def newman_sign_approximant(n: int, k: int, bits: int = DEFAULT_BITS) -> RationalApproximant:
    cert = newman_certificate(n, k, bits)
    A = univariate_approximant(sign_domain(n), cert["S"], method="newman", k=k,
                               slack=cert["slack"])
    return A


def maj_from_univariate(A: RationalApproximant, n: int, slack=Fraction(1, 2 ** 20)) -> RationalApproximant:
    """MAJ_n approximant from an approximant of sign on {+-1..+-ceil(n/2)}.

    A_delta(t) = (t^2 p - delta)/(t^2 q + delta) at t = #(+1 inputs) - floor(n/2).
    """
    slack = rat(slack)
    h = -(-n // 2)
    pts = [t for t in range(-h, h + 1) if t]
    if A.f.nvars != 1 or set(x[0] for x in A.f.domain) != set(pts):
        raise InvalidInput(f"need an approximant on +-1..+-{h}")
    if not A.denominator_positive:
        raise InvalidInput("need a positive denominator")
    p, q = A.num, A.den
    m = min(q((t,)) ** 2 / abs(p((t,)) + q((t,))) for t in pts if p((t,)) + q((t,)) != 0) \
        if any(p((t,)) + q((t,)) != 0 for t in pts) else Fraction(1)
    delta = slack * m
    f = make_named("MAJ", [n])
    xs = [Poly.var(i, n) for i in range(n)]
    tpoly = sum(((x + 1) * Fraction(1, 2) for x in xs), Poly(n)) - (n // 2)
    T = Poly.var(0, 1)
    num1 = T * T * p - delta
    den1 = T * T * q + delta
    for _ in range(30):
        num = cube_multilinear(num1.substitute([tpoly]))
        den = cube_multilinear(den1.substitute([tpoly]))
        B = make_approximant(f, num, den, method="maj-from-sign", delta=delta)
        if B.verified_error <= A.verified_error + slack and B.denominator_positive:
            return B
        delta /= 2
        num1 = T * T * p - delta
        den1 = T * T * q + delta
    raise VerificationFailure("could not choose delta for the requested slack")


def univariate_from_maj(B: RationalApproximant) -> RationalApproximant:
    """Symmetrize a MAJ_n approximant and restrict to t in {+-1..+-floor(n/2)}."""
    from .degrees import symmetrize

    n = B.f.nvars
    if n < 2:
        raise InvalidInput("need n >= 2")
    # x_i = 2 b_i - 1 with b_i in {0,1}
    bvars = [Poly.var(i, n) * 2 - 1 for i in range(n)]
    pb = B.num.substitute(bvars)
    qb = B.den.substitute(bvars)
    ps = symmetrize(pb, [list(range(n))])
    qs = symmetrize(qb, [list(range(n))])
    h = n // 2
    shift = Poly.var(0, 1) + (n - h)  # s = t + ceil(n/2)
    num = ps.substitute([shift])
    den = qs.substitute([shift])
    return make_approximant(sign_domain(h), num, den, method="symmetrized")
