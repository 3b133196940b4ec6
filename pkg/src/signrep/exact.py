"""Exact rational arithmetic helpers and polynomial containers.

Everything here works over ``fractions.Fraction``.  Irrational constants
(square roots, fractional powers) are replaced by dyadic rationals of a
chosen precision via :func:`dyadic_root`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

Rat = Fraction

DEFAULT_BITS = 64


def rat(x) -> Fraction:
    """Parse ints, Fractions and 'num/den' strings.  Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted on exact paths")
    # gmpy2.mpq and friends
    return Fraction(int(x.numerator), int(x.denominator))


def fmt(x: Fraction) -> str:
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def check_comb_identity(n: int, coeffs: Sequence) -> bool:
    """Check sum_i C(n,i)(-1)^i p(i) = 0 for p with the given coefficients.

    Only meaningful when deg p < n; returns the exact truth of the identity.
    """
    p = UPoly(coeffs)
    if p.degree() >= n:
        raise ValueError("identity needs deg p < n")
    total = sum(binomial(n, i) * (-1) ** i * p(i) for i in range(n + 1))
    return total == 0


# ---------------------------------------------------------------- roots


def iroot(a: int, k: int) -> int:
    """floor(a ** (1/k)) for a >= 0."""
    if a < 0:
        raise ValueError("negative radicand")
    if a < 2:
        return a
    x = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + a // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > a:
        x -= 1
    while (x + 1) ** k <= a:
        x += 1
    return x


def dyadic_root(x, k: int, bits: int = DEFAULT_BITS, direction: str = "down") -> Fraction:
    """Dyadic surrogate m / 2**bits for x**(1/k), x >= 0.

    ``direction='down'`` gives the largest such value not exceeding the true
    root, ``'up'`` the smallest not below it.  Exact roots come back exactly
    whenever they are representable.
    """
    x = rat(x)
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    scale = 1 << (bits * k)
    num = x.numerator * scale
    m = iroot(num // x.denominator, k)
    exact = m ** k * x.denominator == num
    if direction == "up" and not exact:
        m += 1
    elif direction not in ("up", "down"):
        raise ValueError(direction)
    return Fraction(m, 1 << bits)


def dyadic_power(x, p: int, q: int, bits: int = DEFAULT_BITS, direction: str = "down") -> Fraction:
    """Surrogate for x**(p/q) (p may be negative)."""
    x = rat(x)
    if p >= 0:
        return dyadic_root(x ** p, q, bits, direction)
    flip = "up" if direction == "down" else "down"
    return 1 / dyadic_root(x ** (-p), q, bits, flip)


# ---------------------------------------------------------------- univariate


class UPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rat(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-rat(r), 1])
        return p

    @classmethod
    def monomial(cls, d: int, a=1) -> "UPoly":
        return cls([0] * d + [a])

    def degree(self) -> int:
        return len(self.c) - 1  # zero polynomial -> -1

    def is_zero(self) -> bool:
        return not self.c

    def __call__(self, t):
        acc = Fraction(0) if not isinstance(t, Poly) else Poly.const(0, t.nvars)
        for a in reversed(self.c):
            acc = acc * t + a
        return acc

    def __add__(self, other):
        other = _as_upoly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + [Fraction(0)] * (n - len(self.c))
        b = other.c + [Fraction(0)] * (n - len(other.c))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-a for a in self.c)

    def __sub__(self, other):
        return self + (-_as_upoly(other))

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        other = _as_upoly(other)
        if not self.c or not other.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = UPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            return self.c == _as_upoly(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self.c))

    def compose(self, inner: "UPoly") -> "UPoly":
        acc = UPoly()
        for a in reversed(self.c):
            acc = acc * inner + a
        return acc

    def reflect(self) -> "UPoly":
        """p(-t)."""
        return UPoly(a if i % 2 == 0 else -a for i, a in enumerate(self.c))

    def shift(self, s) -> "UPoly":
        """p(t + s)."""
        return self.compose(UPoly([s, 1]))

    def __repr__(self):
        return f"UPoly({[fmt(a) for a in self.c]})"


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly([x])
    raise TypeError(f"cannot use {type(x).__name__} as UPoly")


def lagrange_1d(xs: Sequence, ys: Sequence) -> UPoly:
    """Interpolating polynomial of degree < len(xs)."""
    xs = [rat(x) for x in xs]
    out = UPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = UPoly([1])
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UPoly([-xj, 1])
                den *= xi - xj
        out = out + basis * (rat(yi) / den)
    return out


@dataclass
class URational:
    """Univariate rational function num/den with the interval set where den > 0
    is claimed, given as a list of closed (lo, hi) pairs."""

    num: UPoly
    den: UPoly
    positivity_domain: list = field(default_factory=list)

    def __call__(self, t):
        d = self.den(t)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes")
        return self.num(t) / d

    def degree(self) -> int:
        return max(self.num.degree(), self.den.degree())


# ---------------------------------------------------------------- multivariate


Monomial = tuple  # exponent tuple


class Poly:
    """Sparse multivariate polynomial: exponent tuple -> Fraction."""

    __slots__ = ("nvars", "terms", "_scaled")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        self._scaled = None
        self.terms: dict = {}
        if terms:
            for e, a in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                a = rat(a)
                if a:
                    self.terms[e] = self.terms.get(e, Fraction(0)) + a
                    if not self.terms[e]:
                        del self.terms[e]

    @classmethod
    def const(cls, a, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: a})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def mono(cls, e: Sequence[int], a=1) -> "Poly":
        return cls(len(e), {tuple(e): a})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def _integer_form(self):
        # (common denominator, [(exponents, integer coefficient)]) for fast evaluation
        if self._scaled is None:
            den = 1
            for a in self.terms.values():
                den = den * a.denominator // gcd(den, a.denominator)
            items = [(tuple((i, k) for i, k in enumerate(e) if k), int(a * den))
                     for e, a in self.terms.items()]
            self._scaled = (den, items)
        return self._scaled

    def __call__(self, point: Sequence):
        if all(type(x) is int for x in point):
            den, items = self._integer_form()
            total = 0
            for e, a in items:
                for i, k in e:
                    a *= point[i] ** k
                total += a
            return Fraction(total, den)
        total = Fraction(0)
        for e, a in self.terms.items():
            v = a
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, a in other.terms.items():
            s = out.get(e, 0) + a
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -a for e, a in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.nvars)
            p = Poly(self.nvars)
            p.terms = {e: a * other for e, a in self.terms.items()}
            return p
        other = self._coerce(other)
        out: dict = {}
        for e1, a1 in self.terms.items():
            for e2, a2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + a1 * a2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, a):
        return self * (1 / rat(a))

    def __pow__(self, k: int):
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mon = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"{fmt(self.terms[e])}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)

    def embed(self, nvars: int, offset: int) -> "Poly":
        """Reinterpret as a polynomial in variables offset..offset+self.nvars-1."""
        p = Poly(nvars)
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - offset - self.nvars)
        p.terms = {pad_l + e + pad_r: a for e, a in self.terms.items()}
        return p

    def substitute(self, values: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable i by values[i] (all Polys in one ring)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        m = values[0].nvars
        cache: dict = {}
        out = Poly(m)
        for e, a in self.terms.items():
            term = Poly.const(a, m)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def reduce_on(self, value_sets: Sequence[Iterable]) -> "Poly":
        """Reduce per-variable exponents below the number of values the
        variable takes, without changing values on the product grid.

        Uses the vanishing polynomial prod_v (x - v) of each coordinate.
        """
        out = Poly(self.nvars)
        vanish = []
        for vs in value_sets:
            vs = sorted(set(rat(v) for v in vs))
            vanish.append(UPoly.from_roots(vs).c)  # monic of degree len(vs)
        work = dict(self.terms)
        while work:
            e, a = work.popitem()
            for i, k in enumerate(e):
                m = len(vanish[i]) - 1
                if k >= m:
                    # x^k = x^(k-m) * (x^m - vanish) ; x^m == -sum_{j<m} c_j x^j
                    for j, cj in enumerate(vanish[i][:-1]):
                        if cj:
                            e2 = list(e)
                            e2[i] = k - m + j
                            e2 = tuple(e2)
                            work[e2] = work.get(e2, 0) - a * cj
                            if not work[e2]:
                                del work[e2]
                    break
            else:
                s = out.terms.get(e, 0) + a
                if s:
                    out.terms[e] = s
                else:
                    out.terms.pop(e, None)
        return out


def cube_multilinear(p: Poly) -> Poly:
    """x_i^2 = 1 reduction for the {-1,+1} cube."""
    out: dict = {}
    for e, a in p.terms.items():
        e2 = tuple(k & 1 for k in e)
        out[e2] = out.get(e2, 0) + a
    return Poly(p.nvars, out)


def univariate_to_poly(u: UPoly, linear: Poly) -> Poly:
    """u(linear) as a multivariate polynomial."""
    return u(linear)


def eval_poly(p: Poly, x: Sequence):
    if len(x) != p.nvars:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {p.nvars} variables")
    return p(x)
