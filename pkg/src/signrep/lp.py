"""Exact two-phase simplex with Bland's rule and Farkas certificates.

Arithmetic is exact throughout (gmpy2 rationals internally, Fractions at the
interface).  Infeasibility is always returned together with a multiplier
vector that can be checked by :func:`check_farkas` without trusting the
solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .errors import InvalidInput, ResourceLimit
from .exact import rat

PIVOT_CAP = 10 ** 7

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not accepted")
    return mpq(x)


def _f(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class LinearProgram:
    A: list
    rel: list
    b: list
    c: list | None = None
    sense: str = "min"
    lower: list | None = None
    upper: list | None = None

    def __post_init__(self):
        m = len(self.A)
        if len(self.rel) != m or len(self.b) != m:
            raise InvalidInput("A, rel and b must have the same length")
        n = self.nvars
        for row in self.A:
            if len(row) != n:
                raise InvalidInput("ragged constraint matrix")
        for r in self.rel:
            if r not in ("<=", ">=", "="):
                raise InvalidInput(f"bad relation {r!r}")
        if self.sense not in ("min", "max"):
            raise InvalidInput("sense must be min or max")
        if self.c is not None and len(self.c) != n:
            raise InvalidInput("objective length mismatch")
        for bound in (self.lower, self.upper):
            if bound is not None and len(bound) != n:
                raise InvalidInput("bound length mismatch")

    @property
    def nvars(self) -> int:
        if self.A:
            return len(self.A[0])
        for v in (self.c, self.lower, self.upper):
            if v is not None:
                return len(v)
        return 0

    def constraint_system(self):
        """All constraints as (coeffs, rel, rhs) with rel in {'>=', '='}.

        Order: the rows, then upper bounds, then lower bounds.  A Farkas
        vector returned by :func:`solve` indexes into this list.
        """
        n = self.nvars
        out = []
        for row, r, rhs in zip(self.A, self.rel, self.b):
            row = [rat(a) for a in row]
            rhs = rat(rhs)
            if r == "<=":
                out.append(([-a for a in row], ">=", -rhs))
            else:
                out.append((row, r, rhs))
        if self.upper is not None:
            for j, u in enumerate(self.upper):
                if u is not None:
                    e = [Fraction(0)] * n
                    e[j] = Fraction(-1)
                    out.append((e, ">=", -rat(u)))
        if self.lower is not None:
            for j, lo in enumerate(self.lower):
                if lo is not None:
                    e = [Fraction(0)] * n
                    e[j] = Fraction(1)
                    out.append((e, ">=", rat(lo)))
        return out


@dataclass
class Optimal:
    x: list
    value: Fraction | None
    pivots: int = 0
    status: str = field(default="optimal", init=False)


@dataclass
class Infeasible:
    farkas: list
    pivots: int = 0
    status: str = field(default="infeasible", init=False)


@dataclass
class Unbounded:
    ray: list
    pivots: int = 0
    status: str = field(default="unbounded", init=False)


def check_farkas(lp: LinearProgram, y: Sequence) -> bool:
    """y certifies infeasibility: y >= 0 on inequalities, y^T A = 0, y^T b > 0."""
    system = lp.constraint_system()
    if len(y) != len(system):
        return False
    n = lp.nvars
    agg = [Fraction(0)] * n
    rhs = Fraction(0)
    for yi, (row, r, bi) in zip(y, system):
        yi = rat(yi)
        if r == ">=" and yi < 0:
            return False
        if yi:
            for j, a in enumerate(row):
                if a:
                    agg[j] += yi * a
            rhs += yi * bi
    return all(a == 0 for a in agg) and rhs > 0


def check_feasible(lp: LinearProgram, x: Sequence) -> bool:
    for row, r, rhs in lp.constraint_system():
        s = sum(rat(a) * rat(v) for a, v in zip(row, x))
        if r == "=" and s != rhs:
            return False
        if r == ">=" and s < rhs:
            return False
    return True


class _Tableau:
    def __init__(self, rows, rhs, ncols, pivot_cap):
        self.T = rows  # list of lists of mpq
        self.rhs = rhs
        self.ncols = ncols
        self.basis = [None] * len(rows)
        self.pivots = 0
        self.cap = pivot_cap

    def pivot(self, r, c, zrows):
        self.pivots += 1
        if self.pivots > self.cap:
            raise ResourceLimit(f"simplex exceeded {self.cap} pivots")
        T = self.T
        prow = T[r]
        piv = prow[c]
        if piv != _ONE:
            inv = _ONE / piv
            for j in range(self.ncols):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if prow[j]]
        pr = self.rhs[r]
        for i, row in enumerate(T):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
                    self.rhs[i] -= f * pr
        for z in zrows:
            f = z[0][c]
            if f:
                zz = z[0]
                for j in nz:
                    zz[j] -= f * prow[j]
                z[1] -= f * pr
        self.basis[r] = c

    def run(self, z, allowed):
        """Bland's rule on reduced-cost row z = [list, -value]."""
        T = self.T
        while True:
            zr = z[0]
            c = None
            for j in range(self.ncols):
                if allowed[j] and zr[j] < 0:
                    c = j
                    break
            if c is None:
                return None
            best = None
            for i, row in enumerate(T):
                a = row[c]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return c  # unbounded direction
            self.pivot(best[1], c, [z])


def solve(lp: LinearProgram, max_pivots: int = PIVOT_CAP):
    """Solve exactly.  Returns Optimal, Infeasible or Unbounded.

    A program without objective is a feasibility problem; Optimal.value is
    then None.
    """
    n = lp.nvars
    lower = lp.lower or [None] * n
    upper = lp.upper or [None] * n

    rows = [[_q(rat(a)) for a in row] for row in lp.A]
    rels = list(lp.rel)
    b = [_q(rat(v)) for v in lp.b]
    for j, u in enumerate(upper):
        if u is not None:
            e = [_ZERO] * n
            e[j] = _ONE
            rows.append(e)
            rels.append("<=")
            b.append(_q(rat(u)))
    m = len(rows)

    # column map for structural variables
    colmap = []  # per original var: list of (std col, coefficient)
    ncol = 0
    for j in range(n):
        if lower[j] is not None:
            colmap.append([(ncol, _ONE)])
            ncol += 1
        else:
            colmap.append([(ncol, _ONE), (ncol + 1, -_ONE)])
            ncol += 2
    lo_shift = [(_q(rat(lower[j])) if lower[j] is not None else _ZERO) for j in range(n)]
    for i in range(m):
        s = sum((rows[i][j] * lo_shift[j] for j in range(n) if lo_shift[j]), _ZERO)
        b[i] -= s

    slack_col = [None] * m
    for i in range(m):
        if rels[i] != "=":
            slack_col[i] = ncol
            ncol += 1
    art_col = [None] * m
    row_sign = [1] * m
    T = []
    for i in range(m):
        row = [_ZERO] * ncol
        for j in range(n):
            a = rows[i][j]
            if a:
                for col, s in colmap[j]:
                    row[col] = a * s
        if slack_col[i] is not None:
            row[slack_col[i]] = _ONE if rels[i] == "<=" else -_ONE
        if b[i] < 0:
            row = [-a for a in row]
            b[i] = -b[i]
            row_sign[i] = -1
        T.append(row)
    # initial basis: a +1 slack if available, otherwise an artificial
    init_col = [None] * m
    nart = 0
    for i in range(m):
        sc = slack_col[i]
        if sc is not None and T[i][sc] == _ONE:
            init_col[i] = sc
        else:
            art_col[i] = ncol + nart
            nart += 1
    total = ncol + nart
    for i in range(m):
        T[i].extend([_ZERO] * nart)
        if art_col[i] is not None:
            T[i][art_col[i]] = _ONE
            init_col[i] = art_col[i]

    tab = _Tableau(T, b, total, max_pivots)
    tab.basis = list(init_col)
    is_art = [False] * total
    for i in range(m):
        if art_col[i] is not None:
            is_art[art_col[i]] = True

    # phase 1
    cost1 = [_ONE if is_art[j] else _ZERO for j in range(total)]
    z1 = [list(cost1), _ZERO]
    for i in range(m):
        if is_art[tab.basis[i]]:
            row = T[i]
            for j in range(total):
                if row[j]:
                    z1[0][j] -= row[j]
            z1[1] -= b[i]
    if nart:
        tab.run(z1, [True] * total)
    w = -z1[1]
    if w > 0:
        y_std = [cost1[init_col[i]] - z1[0][init_col[i]] for i in range(m)]
        mult = []
        for i in range(m):
            yo = y_std[i] * row_sign[i]
            mult.append(-yo if rels[i] == "<=" else yo)
        for j in range(n):
            if lower[j] is not None:
                col = colmap[j][0][0]
                # bound multiplier = -(y^T a_j) over std rows
                s = sum((y_std[i] * T_orig for i, T_orig in _column(lp, rows, row_sign, colmap, j, m)), _ZERO)
                mult.append(-s)
        # reorder: rows + upper rows are already first; lower-bound rows last
        return Infeasible([_f(v) for v in mult], tab.pivots)

    # drive artificials out of the basis where possible
    for i in range(m):
        if is_art[tab.basis[i]]:
            for j in range(ncol):
                if T[i][j]:
                    tab.pivot(i, j, [])
                    break
    allowed = [not is_art[j] for j in range(total)]

    if lp.c is None:
        x = _extract(tab, n, colmap, lo_shift, total)
        return Optimal([_f(v) for v in x], None, tab.pivots)

    sgn = 1 if lp.sense == "min" else -1
    cost2 = [_ZERO] * total
    for j in range(n):
        cj = _q(rat(lp.c[j])) * sgn
        for col, s in colmap[j]:
            cost2[col] = cj * s
    zr = list(cost2)
    zv = _ZERO
    for i in range(m):
        cb = cost2[tab.basis[i]]
        if cb:
            row = T[i]
            for j in range(total):
                if row[j]:
                    zr[j] -= cb * row[j]
            zv -= cb * b[i]
    z2 = [zr, zv]
    unb = tab.run(z2, allowed)
    if unb is not None:
        d = [_ZERO] * total
        d[unb] = _ONE
        for i in range(m):
            d[tab.basis[i]] = -T[i][unb]
        ray = []
        for j in range(n):
            ray.append(sum((d[col] * s for col, s in colmap[j]), _ZERO))
        return Unbounded([_f(v) for v in ray], tab.pivots)
    x = _extract(tab, n, colmap, lo_shift, total)
    value = sum((_q(rat(lp.c[j])) * x[j] for j in range(n)), _ZERO)
    return Optimal([_f(v) for v in x], _f(value), tab.pivots)


def _column(lp, rows, row_sign, colmap, j, m):
    """Std-form column of a lower-bounded structural variable (pre-pivot)."""
    for i in range(m):
        a = rows[i][j]
        if a:
            yield i, a * row_sign[i]


def _extract(tab, n, colmap, lo_shift, total):
    val = [_ZERO] * total
    for i, c in enumerate(tab.basis):
        val[c] = tab.rhs[i]
    x = []
    for j in range(n):
        x.append(lo_shift[j] + sum((val[col] * s for col, s in colmap[j]), _ZERO))
    return x


def feasible_point(A, rel, b, **kw):
    """Convenience: solve a pure feasibility system."""
    return solve(LinearProgram(A, rel, b, **kw))
