"""Threshold density: exact search on tiny cubes and the Krause-Pudlak bound."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .boolfun import CUBE, BooleanFunction, kp_transform
from .degrees import DualWitness, threshold_degree
from .errors import InvalidInput, ResourceLimit, VerificationFailure
from .lp import LinearProgram, Optimal, check_farkas, solve

DENSITY_MAX_VARS = 4


@dataclass
class DensityReport:
    value: int
    support_witness: tuple          # monomials as variable-index tuples
    coefficients: tuple
    method: str
    info: dict = field(default_factory=dict)


def _mask_to_vars(mask: int, n: int) -> tuple:
    return tuple(i for i in range(n) if mask >> i & 1)


def _chi(x, mask: int) -> int:
    v = 1
    i = 0
    while mask:
        if mask & 1:
            v *= x[i]
        mask >>= 1
        i += 1
    return v


def _require_cube(f: BooleanFunction) -> None:
    if len(f) != 2 ** f.nvars or any(c not in CUBE for x in f.domain for c in x):
        raise InvalidInput("density needs a total function on {-1,+1}^n")


def support_lp(f: BooleanFunction, masks: Sequence[int]) -> LinearProgram:
    A = [[y * _chi(x, m) for m in masks] for x, y in f.items()]
    return LinearProgram(A, [">="] * len(A), [1] * len(A))


def verify_support(f: BooleanFunction, masks: Sequence[int], coeffs: Sequence) -> bool:
    """Exact sign check of sum coeffs[j] chi_{masks[j]} against f."""
    for x, y in f.items():
        s = sum(Fraction(c) * _chi(x, m) for c, m in zip(coeffs, masks))
        if y * s <= 0:
            return False
    return True


def _stabilizer(f: BooleanFunction) -> list:
    n = f.nvars
    t = f.table()
    out = []
    for perm in itertools.permutations(range(n)):
        if all(t[tuple(x[perm[i]] for i in range(n))] == y for x, y in f.items()):
            out.append(perm)
    return out


def _permute_mask(mask: int, perm) -> int:
    out = 0
    for i, p in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << p
    return out


def density_exact(f: BooleanFunction) -> DensityReport:
    """Least number of monomials in a sign representation of f.

    Supports are searched by increasing size.  Each infeasible support yields
    a Farkas vector y; any support avoiding {T : sum_x y_x f(x) chi_T(x) != 0}
    is infeasible for the same reason and is skipped.  Supports are also
    reduced modulo variable permutations that fix f.
    """
    _require_cube(f)
    n = f.nvars
    if n > DENSITY_MAX_VARS:
        raise ResourceLimit(f"density search supports n <= {DENSITY_MAX_VARS}")
    masks = list(range(1 << n))
    group = _stabilizer(f)
    cuts = []  # sets of monomials a feasible support must meet
    lps = 0
    for k in range(1, len(masks) + 1):
        for S in itertools.combinations(masks, k):
            if any(not (cut & set(S)) for cut in cuts):
                continue
            if any(tuple(sorted(_permute_mask(m, g) for m in S)) < S for g in group):
                continue
            lp = support_lp(f, S)
            out = solve(lp)
            lps += 1
            if isinstance(out, Optimal):
                if not verify_support(f, S, out.x):
                    raise VerificationFailure("density witness failed re-check")
                return DensityReport(k, tuple(_mask_to_vars(m, n) for m in S), tuple(out.x),
                                     "support-search", {"lp_calls": lps, "stabilizer": len(group)})
            if not check_farkas(lp, out.farkas):
                raise VerificationFailure("density Farkas vector failed re-check")
            y = out.farkas
            cut = {m for m in masks
                   if sum(yi * v * _chi(x, m) for yi, (x, v) in zip(y, f.items()) if yi)}
            cuts.append(cut)
    raise VerificationFailure("no support represents f")


def brute_force_density(f: BooleanFunction, weights=range(-3, 4)) -> int:
    """Smallest support among integer weight vectors in a small box."""
    _require_cube(f)
    n = f.nvars
    masks = list(range(1 << n))
    best = None
    for w in itertools.product(weights, repeat=len(masks)):
        k = sum(1 for v in w if v)
        if best is not None and k >= best:
            continue
        if verify_support(f, masks, w):
            best = k
    if best is None:
        raise VerificationFailure("no representation with the given weights")
    return best


@dataclass
class DensityBound:
    value: int
    function: BooleanFunction
    degthr: int
    witness: DualWitness | None
    method: str


def _apply_parities(w, parities) -> tuple:
    out = []
    for sgn, idx in parities:
        v = sgn
        for i in idx:
            v *= w[i]
        out.append(v)
    return tuple(out)


def density_lower_from_kp(f: BooleanFunction, target: BooleanFunction | None = None,
                          parities: Sequence | None = None) -> DensityBound:
    """2^degthr(f) as a lower bound on dns(f^KP).

    When ``target`` and ``parities`` are given, with parities a list of
    (sign, variable indices) such that f^KP(w) = target(chi_1(w), ...), the
    bound is transferred to target (dns(target) >= dns(f^KP)).
    """
    _require_cube(f)
    rep = threshold_degree(f)
    bound = 2 ** rep.value
    kp = kp_transform(f)
    if target is None:
        return DensityBound(bound, kp, rep.value, rep.dual, "krause-pudlak")
    if parities is None or len(parities) != target.nvars:
        raise InvalidInput("need one parity per input of the target")
    t = target.table()
    for w, v in kp.items():
        if t.get(_apply_parities(w, parities)) != v:
            raise VerificationFailure(f"parity substitution does not reproduce f^KP at {w}")
    return DensityBound(bound, target, rep.value, rep.dual, "krause-pudlak+parity")
