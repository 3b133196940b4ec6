"""Threshold degree, approximate degree and their LP dual witnesses."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .boolfun import BooleanFunction
from .errors import InvalidInput, VerificationFailure
from .exact import Poly, rat
from .lp import LinearProgram, Optimal, check_farkas, solve

GORDAN = "GordanDistribution"
GORDAN_SIGNED = "GordanSigned"
APPROX = "ApproxDual"


# ---------------------------------------------------------------- monomials


def exponent_caps(coord_values: Sequence[Sequence]) -> list:
    return [len(set(vs)) - 1 for vs in coord_values]


def monomial_basis(caps: Sequence[int], d: int, cost=None) -> list:
    """Exponent vectors with e_i <= caps[i] and cost(e) <= d.

    Default cost is the total degree.  Ordered by (cost, exponent tuple).
    """
    if d < 0:
        return []
    cost = cost or sum
    out = []

    def rec(i, prefix, used):
        if i == len(caps):
            e = tuple(prefix)
            if cost(e) <= d:
                out.append(e)
            return
        for k in range(min(caps[i], d - used) + 1):
            prefix.append(k)
            rec(i + 1, prefix, used + k)
            prefix.pop()

    rec(0, [], 0)
    out.sort(key=lambda e: (cost(e), e))
    return out


def max_degree(f: BooleanFunction) -> int:
    return sum(exponent_caps(f.coordinate_values()))


def monomial_value(x, e):
    v = 1
    for xi, k in zip(x, e):
        if k:
            v *= xi ** k
    return v


def design_matrix(points, basis) -> list:
    return [[monomial_value(x, e) for e in basis] for x in points]


def poly_from(basis, coeffs, nvars) -> Poly:
    return Poly(nvars, {e: c for e, c in zip(basis, coeffs) if c})


# ---------------------------------------------------------------- witnesses


@dataclass
class DualWitness:
    kind: str
    points: tuple
    weights: tuple
    orthogonality_degree: int
    l1_mass: Fraction
    correlation: Fraction
    caps: tuple = ()

    def as_dict(self) -> dict:
        return dict(zip(self.points, self.weights))


@dataclass
class DegreeReport:
    value: int
    primal: object
    dual: DualWitness | None
    extra: dict = field(default_factory=dict)


def _witness(kind, f, weights, d) -> DualWitness:
    weights = tuple(rat(w) for w in weights)
    l1 = sum(abs(w) for w in weights)
    corr = sum(w * v for w, v in zip(weights, f.values))
    return DualWitness(kind, f.domain, weights, d, l1, corr,
                       tuple(exponent_caps(f.coordinate_values())))


def verify_witness(f: BooleanFunction, w: DualWitness) -> bool:
    """Independent exact re-check of a dual witness against f."""
    if tuple(w.points) != tuple(f.domain):
        wmap = w.as_dict()
        if set(wmap) - set(f.domain):
            return False
        weights = [rat(wmap.get(x, 0)) for x in f.domain]
    else:
        weights = [rat(v) for v in w.weights]
    caps = exponent_caps(f.coordinate_values())
    basis = monomial_basis(caps, w.orthogonality_degree)
    l1 = sum(abs(v) for v in weights)
    corr = sum(v * y for v, y in zip(weights, f.values))
    if l1 != w.l1_mass or corr != w.correlation:
        return False
    if w.kind == GORDAN:
        if any(v < 0 for v in weights) or sum(weights) != 1:
            return False
        signed = [v * y for v, y in zip(weights, f.values)]
    elif w.kind == GORDAN_SIGNED:
        if any(v * y < 0 for v, y in zip(weights, f.values)) or l1 == 0:
            return False
        signed = weights
    elif w.kind == APPROX:
        if l1 not in (0, 1):
            return False
        signed = weights
    else:
        return False
    for e in basis:
        if sum(s * monomial_value(x, e) for s, x in zip(signed, f.domain) if s):
            return False
    return True


# ---------------------------------------------------------------- threshold degree


def sign_rep_lp(f: BooleanFunction, basis) -> LinearProgram:
    A = [[y * m for m in row] for y, row in zip(f.values, design_matrix(f.domain, basis))]
    return LinearProgram(A, [">="] * len(A), [1] * len(A))


def sign_representation(f: BooleanFunction, d: int):
    """(Poly or None, LP outcome) for degree-d sign representation."""
    caps = exponent_caps(f.coordinate_values())
    basis = monomial_basis(caps, d)
    lp = sign_rep_lp(f, basis)
    out = solve(lp)
    if isinstance(out, Optimal):
        p = poly_from(basis, out.x, f.nvars)
        if not all(y * p(x) > 0 for x, y in f.items()):
            raise VerificationFailure("sign representation failed re-check")
        return p, out
    if not check_farkas(lp, out.farkas):
        raise VerificationFailure("Farkas certificate failed re-check")
    return None, out


def threshold_degree(f: BooleanFunction) -> DegreeReport:
    """Least d with a degree-d sign representation, scanning upward.

    The Gordan witness at d-1 comes from the Farkas vector of the last
    infeasible level: y >= 0 with sum_x y_x f(x) m(x) = 0.
    """
    last_farkas = None
    top = max_degree(f)
    for d in range(top + 1):
        p, out = sign_representation(f, d)
        if p is not None:
            dual = None
            if d > 0:
                y = last_farkas
                tot = sum(y)
                dual = _witness(GORDAN, f, [v / tot for v in y], d - 1)
                if not verify_witness(f, dual):
                    raise VerificationFailure("Gordan witness failed re-check")
            return DegreeReport(d, p, dual)
        last_farkas = out.farkas
    raise VerificationFailure("no sign representation at interpolation degree")


def gordan_witness(f: BooleanFunction, d: int) -> DualWitness | None:
    """A distribution mu with sum mu f m = 0 for all deg m <= d, or None.

    Solved directly as its own LP (independent of the primal route).
    """
    if d < 0:
        raise InvalidInput("d >= 0")
    caps = exponent_caps(f.coordinate_values())
    basis = monomial_basis(caps, d)
    N = len(f)
    M = design_matrix(f.domain, basis)
    A = [[f.values[i] * M[i][j] for i in range(N)] for j in range(len(basis))]
    A.append([1] * N)
    rel = ["="] * len(A)
    b = [0] * len(basis) + [1]
    out = solve(LinearProgram(A, rel, b, lower=[0] * N))
    if not isinstance(out, Optimal):
        return None
    w = _witness(GORDAN, f, out.x, d)
    if not verify_witness(f, w):
        raise VerificationFailure("Gordan witness failed re-check")
    return w


def gordan_signed_from_farkas(f: BooleanFunction, y: Sequence, d: int) -> DualWitness:
    """psi = y * f from a Farkas vector of the degree-d sign LP."""
    tot = sum(abs(v) for v in y)
    phi = [rat(v) * s / tot for v, s in zip(y, f.values)]
    w = _witness(GORDAN_SIGNED, f, phi, d)
    if not verify_witness(f, w):
        raise VerificationFailure("signed Gordan witness failed re-check")
    return w


# ---------------------------------------------------------------- approximate degree


def _chebyshev(f: BooleanFunction, basis):
    """min eps s.t. |f - p| <= eps; returns (eps, coeffs)."""
    M = design_matrix(f.domain, basis)
    nb = len(basis)
    A, rel, b = [], [], []
    for row, y in zip(M, f.values):
        A.append(list(row) + [1])   # p + eps >= f
        rel.append(">=")
        b.append(y)
        A.append([-m for m in row] + [1])  # -p + eps >= -f
        rel.append(">=")
        b.append(-y)
    c = [0] * nb + [1]
    lower = [None] * nb + [0]
    out = solve(LinearProgram(A, rel, b, c=c, lower=lower))
    assert isinstance(out, Optimal)
    return out.x[-1], out.x[:nb]


def _chebyshev_dual(f: BooleanFunction, basis):
    """max sum psi f over sum|psi| <= 1, psi orthogonal to the basis."""
    M = design_matrix(f.domain, basis)
    N = len(f)
    A = []
    for j in range(len(basis)):
        col = [M[i][j] for i in range(N)]
        A.append(col + [-v for v in col])
    A.append([1] * (2 * N))
    rel = ["="] * len(basis) + ["<="]
    b = [0] * len(basis) + [1]
    c = list(f.values) + [-v for v in f.values]
    out = solve(LinearProgram(A, rel, b, c=c, sense="max", lower=[0] * (2 * N)))
    assert isinstance(out, Optimal)
    psi = [out.x[i] - out.x[N + i] for i in range(N)]
    return out.value, psi


def approx_error(f: BooleanFunction, d: int):
    """(eps*, p*, psi*) for the best degree-d uniform approximation.

    Primal and dual are solved as separate programs; their optimal values
    must agree exactly.
    """
    if d < 0:
        raise InvalidInput("d >= 0")
    caps = exponent_caps(f.coordinate_values())
    basis = monomial_basis(caps, d)
    return _approx_on_basis(f, basis, d)


def _approx_on_basis(f, basis, d):
    eps, coeffs = _chebyshev(f, basis)
    p = poly_from(basis, coeffs, f.nvars)
    if max(abs(y - p(x)) for x, y in f.items()) != eps:
        raise VerificationFailure("primal error re-check failed")
    val, psi = _chebyshev_dual(f, basis)
    if val != eps:
        raise VerificationFailure(f"duality gap: primal {eps} dual {val}")
    l1 = sum(abs(v) for v in psi)
    if l1:
        psi = [v / l1 for v in psi]
    w = _witness(APPROX, f, psi, d)
    if w.correlation != eps:
        raise VerificationFailure("normalised dual lost optimality")
    if basis == monomial_basis(exponent_caps(f.coordinate_values()), d) and not verify_witness(f, w):
        raise VerificationFailure("approximation dual failed re-check")
    return eps, p, w


def eps_approx_degree(f: BooleanFunction, eps) -> DegreeReport:
    eps = rat(eps)
    if eps < 0:
        raise InvalidInput("eps >= 0")
    if eps >= 1:
        return DegreeReport(0, Poly(f.nvars), None)
    prev = None
    for d in range(max_degree(f) + 1):
        e, p, w = approx_error(f, d)
        if e <= eps:
            return DegreeReport(d, p, prev, {"error": e})
        prev = w
    raise VerificationFailure("interpolation degree did not reach the target")


def weighted_approx_degree(F: BooleanFunction, eps, v: Sequence[int]) -> DegreeReport:
    """Least D such that monomials of weighted cost <= D approximate F within eps."""
    eps = rat(eps)
    k = F.nvars
    if len(v) != k or any(x < 0 for x in v):
        raise InvalidInput("need one nonnegative weight per variable")
    if eps >= 1:
        return DegreeReport(0, Poly(k), None)
    caps = exponent_caps(F.coordinate_values())
    if any(c > 1 for c in caps):
        raise InvalidInput("weighted degree is defined on the cube")
    costs = sorted({sum(v[i] for i in range(k) if S[i]) for S in itertools.product((0, 1), repeat=k)})
    cost = lambda e: sum(v[i] for i in range(k) if e[i])
    full = [tuple(S) for S in itertools.product((0, 1), repeat=k)]
    for D in costs:
        basis = sorted((e for e in full if cost(e) <= D), key=lambda e: (cost(e), e))
        e, p, _ = _approx_on_basis(F, basis, D)
        if e <= eps:
            return DegreeReport(D, p, None, {"error": e})
    raise VerificationFailure("full support did not reach the target")


# ---------------------------------------------------------------- symmetrization


def _falling(s: Poly, r: int) -> Poly:
    out = Poly.const(1, s.nvars)
    for j in range(r):
        out = out * (s - j)
    return out


def symmetrize(phi: Poly, blocks: Sequence[Sequence[int]]) -> Poly:
    """Block-symmetric average of phi on {0,1} inputs, as a polynomial in the
    block sums.  Each block monomial of r distinct variables averages to
    C(s, r) / C(n_b, r)."""
    k = len(blocks)
    cover = sorted(i for b in blocks for i in b)
    if cover != list(range(phi.nvars)):
        raise InvalidInput("blocks must partition the variables")
    where = {}
    for bi, b in enumerate(blocks):
        for i in b:
            where[i] = bi
    svars = [Poly.var(i, k) for i in range(k)]
    out = Poly(k)
    for e, a in phi.terms.items():
        r = [0] * k
        for i, ki in enumerate(e):
            if ki:
                r[where[i]] += 1  # x^k = x on {0,1}
        term = Poly.const(a, k)
        for bi in range(k):
            if r[bi]:
                term = term * _falling(svars[bi], r[bi]) * Fraction(1, comb(len(blocks[bi]), r[bi]) * _fact(r[bi]))
        out = out + term
    return out


def _fact(r):
    out = 1
    for j in range(2, r + 1):
        out *= j
    return out


def symmetrize_by_averaging(phi: Poly, blocks: Sequence[Sequence[int]], x) -> Fraction:
    """Direct average of phi over block-wise permutations of the input x."""
    total = Fraction(0)
    count = 0
    perms = [list(itertools.permutations(b)) for b in blocks]
    for choice in itertools.product(*perms):
        y = list(x)
        for b, pb in zip(blocks, choice):
            for src, dst in zip(b, pb):
                y[dst] = x[src]
        total += phi(y)
        count += 1
    return total / count
