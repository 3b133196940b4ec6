"""Finite sign functions f: X -> {-1, +1}.

Convention: -1 is "true", +1 is "false".  Cube families live on {-1,+1}^n
unless stated; the bit-domain families (OR, ODD-MAX-BIT) live on {0,1}^n
with bit 1 meaning true.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InvalidInput, ResourceLimit
from .exact import rat, sign

DOMAIN_CAP = 1 << 20
HARD_CAP = 1 << 24

CUBE = (-1, 1)
BITS = (0, 1)


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, int):
        return v
    return rat(v)


@dataclass(frozen=True)
class BooleanFunction:
    domain: tuple  # tuple of points (tuples)
    values: tuple  # parallel tuple of +-1
    name: str = "f"

    def __post_init__(self):
        if len(self.domain) != len(self.values):
            raise InvalidInput("domain/value length mismatch")
        if not self.domain:
            raise InvalidInput("empty domain")
        n = len(self.domain[0])
        if any(len(x) != n for x in self.domain):
            raise InvalidInput("points of unequal dimension")
        if any(v not in (-1, 1) for v in self.values):
            raise InvalidInput("values must be +-1")

    @property
    def nvars(self) -> int:
        return len(self.domain[0])

    def __len__(self):
        return len(self.domain)

    def table(self) -> dict:
        t = getattr(self, "_table", None)
        if t is None:
            t = dict(zip(self.domain, self.values))
            object.__setattr__(self, "_table", t)
        return t

    def __call__(self, x) -> int:
        return self.table()[tuple(x)]

    def coordinate_values(self) -> list:
        """Distinct values taken by each coordinate over the domain."""
        return [sorted(set(x[i] for x in self.domain)) for i in range(self.nvars)]

    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    def negate(self) -> "BooleanFunction":
        return BooleanFunction(self.domain, tuple(-v for v in self.values), f"-{self.name}")

    def items(self):
        return zip(self.domain, self.values)


def check_cap(size: int, cap: int = DOMAIN_CAP) -> None:
    if cap > HARD_CAP:
        raise InvalidInput(f"domain cap may not exceed {HARD_CAP}")
    if size > cap:
        raise ResourceLimit(f"domain of size {size} exceeds cap {cap}")


def grid(values_per_coord: Sequence[Sequence], cap: int = DOMAIN_CAP) -> list:
    size = 1
    for vs in values_per_coord:
        size *= len(vs)
    check_cap(size, cap)
    return [tuple(p) for p in itertools.product(*values_per_coord)]


def from_rule(points, rule: Callable, name: str = "f") -> BooleanFunction:
    pts = [tuple(_norm(c) for c in p) for p in points]
    vals = []
    for p in pts:
        v = rule(p)
        if v not in (-1, 1):
            raise InvalidInput(f"rule returned {v!r} at {p}")
        vals.append(int(v))
    return BooleanFunction(tuple(pts), tuple(vals), name)


def from_table(points, values, name: str = "f") -> BooleanFunction:
    pts = tuple(tuple(_norm(c) for c in p) for p in points)
    if len(set(pts)) != len(pts):
        raise InvalidInput("duplicate points")
    return BooleanFunction(pts, tuple(int(v) for v in values), name)


def _strict_sign(s, where) -> int:
    s = sign(s)
    if s == 0:
        raise InvalidInput(f"sign undefined at {where}")
    return s


# ---------------------------------------------------------------- families


def _maj(x):
    return 1 if sum(x) > 0 else -1


def _halfspace_rule(x):
    # sign(1 + sum_i 2^i x_i), i from 1
    return _strict_sign(1 + sum(2 ** (i + 1) * xi for i, xi in enumerate(x)), x)


def make_named(family: str, params: Sequence[int] = (), domain: str | None = None,
               cap: int = DOMAIN_CAP) -> BooleanFunction:
    fam = family.upper().replace("_", "-")
    params = [int(p) for p in params]

    def need(k):
        if len(params) < k:
            raise InvalidInput(f"{family} needs {k} parameter(s)")

    def bits_or_cube(default):
        d = domain or default
        if d not in ("cube", "bits"):
            raise InvalidInput(f"unknown domain {d!r}")
        return d

    if fam == "MAJ":
        need(1)
        n = params[0]
        if n < 1:
            raise InvalidInput("n >= 1")
        return from_rule(grid([CUBE] * n, cap), _maj, f"MAJ{n}")
    if fam in ("OR", "AND", "PARITY"):
        need(1)
        n = params[0]
        if n < 1:
            raise InvalidInput("n >= 1")
        d = bits_or_cube("bits" if fam == "OR" else "cube")
        vals = BITS if d == "bits" else CUBE
        true = 1 if d == "bits" else -1

        if fam == "OR":
            rule = lambda x: -1 if any(v == true for v in x) else 1
        elif fam == "AND":
            rule = lambda x: -1 if all(v == true for v in x) else 1
        else:
            rule = lambda x: -1 if sum(v == true for v in x) % 2 else 1
        suffix = "" if (d == "bits") == (fam == "OR") else f"[{d}]"
        return from_rule(grid([vals] * n, cap), rule, f"{fam}{n}{suffix}")
    if fam == "CANONICAL-HALFSPACE":
        # sign(1 + sum_{i<=n, j<=k} 2^i x_ij) on {-1,+1}^{nk}; variable (i,j)
        # sits at index (i-1)*k + (j-1)
        need(1)
        n = params[0]
        k = params[1] if len(params) > 1 else n
        def rule(x):
            return _strict_sign(1 + sum(2 ** (idx // k + 1) * v for idx, v in enumerate(x)), x)
        return from_rule(grid([CUBE] * (n * k), cap), rule, f"HS{n}x{k}")
    if fam == "ODD-MAX-BIT":
        need(1)
        n = params[0]
        rule = lambda x: _strict_sign(1 + sum((-2) ** (i + 1) * v for i, v in enumerate(x)), x)
        return from_rule(grid([BITS] * n, cap), rule, f"OMB{n}")
    if fam == "AND-OR-TREE":
        need(1)
        n = params[0]
        def rule(x):
            # OR over rows of AND over columns
            return -1 if any(all(x[i * n + j] == -1 for j in range(n)) for i in range(n)) else 1
        return from_rule(grid([CUBE] * (n * n), cap), rule, f"ANDOR{n}")
    if fam == "MINSKY-PAPERT":
        need(1)
        m = params[0]
        w = 4 * m * m
        def rule(x):
            return -1 if any(all(x[i * w + j] == -1 for j in range(w)) for i in range(m)) else 1
        return from_rule(grid([CUBE] * (m * w), cap), rule, f"MP{m}")
    if fam == "GRID-HALFSPACE":
        # sign(1 + sum_{i=1}^{n+1} 2^i x_i) on {0,+-1..+-(3n+1)}^{n+1}
        need(1)
        n = params[0]
        r = 3 * n + 1
        vals = list(range(-r, r + 1))
        return from_rule(grid([vals] * (n + 1), cap), _halfspace_rule, f"GHS{n}")
    if fam == "DIGIT-HALFSPACE":
        # sign(1 + sum_{i=1}^n 2^i z_i) on {0,+-1,+-2}^n
        need(1)
        n = params[0]
        return from_rule(grid([(-2, -1, 0, 1, 2)] * n, cap), _halfspace_rule, f"DHS{n}")
    if fam == "SIGN":
        # sign t on {+-1, ..., +-n}
        need(1)
        n = params[0]
        pts = [(t,) for t in range(-n, n + 1) if t]
        return from_rule(pts, lambda x: 1 if x[0] > 0 else -1, f"SIGN{n}")
    if fam == "DICTATOR":
        need(1)
        n = params[0]
        i = params[1] if len(params) > 1 else 0
        return from_rule(grid([CUBE] * n, cap), lambda x: x[i], f"X{i + 1}of{n}")
    if fam == "CONST":
        need(1)
        n = params[0]
        v = params[1] if len(params) > 1 else 1
        return from_rule(grid([CUBE] * n, cap), lambda x: v, f"CONST{n}")
    raise InvalidInput(f"unknown family {family!r}")


FAMILIES = ("MAJ", "OR", "AND", "PARITY", "CANONICAL-HALFSPACE", "ODD-MAX-BIT",
            "AND-OR-TREE", "MINSKY-PAPERT", "GRID-HALFSPACE", "DIGIT-HALFSPACE",
            "SIGN", "DICTATOR", "CONST")


def to_cube(f: BooleanFunction) -> BooleanFunction:
    """Move a {0,1}^n function to {-1,+1}^n via b -> 1 - 2b (bit 1 -> -1)."""
    pts = [tuple(1 - 2 * b for b in x) for x in f.domain]
    return BooleanFunction(tuple(pts), f.values, f.name)


def all_functions(n: int, vals=CUBE):
    pts = grid([vals] * n)
    for bits in itertools.product((-1, 1), repeat=len(pts)):
        yield BooleanFunction(tuple(pts), bits, "f" + "".join("1" if b < 0 else "0" for b in bits))


# ---------------------------------------------------------------- combinators


def compose(F: BooleanFunction, inner: Sequence[BooleanFunction],
            cap: int = DOMAIN_CAP) -> BooleanFunction:
    """F(f_1(x_1), ..., f_k(x_k)) on X_1 x ... x X_k; F on {-1,+1}^k."""
    k = F.nvars
    if len(inner) != k:
        raise InvalidInput(f"outer function takes {k} inputs, got {len(inner)}")
    if any(c not in CUBE for x in F.domain for c in x):
        raise InvalidInput("outer function must live on {-1,+1}^k")
    size = 1
    for g in inner:
        size *= len(g)
    check_cap(size, cap)
    Ft = F.table()
    pts, vals = [], []
    for combo in itertools.product(*[list(g.items()) for g in inner]):
        pts.append(tuple(c for x, _ in combo for c in x))
        vals.append(Ft[tuple(v for _, v in combo)])
    names = ",".join(g.name for g in inner)
    return BooleanFunction(tuple(pts), tuple(vals), f"{F.name}({names})")


def conjunction(f: BooleanFunction, g: BooleanFunction, cap: int = DOMAIN_CAP) -> BooleanFunction:
    """(f AND g)(x, y) on X x Y."""
    check_cap(len(f) * len(g), cap)
    pts, vals = [], []
    for x, a in f.items():
        for y, b in g.items():
            pts.append(x + y)
            vals.append(-1 if a == -1 and b == -1 else 1)
    return BooleanFunction(tuple(pts), tuple(vals), f"({f.name})&({g.name})")


def and_of(fs: Sequence[BooleanFunction], cap: int = DOMAIN_CAP) -> BooleanFunction:
    out = fs[0]
    for g in fs[1:]:
        out = conjunction(out, g, cap)
    return out


def negate_inputs(f: BooleanFunction) -> BooleanFunction:
    """x -> f(-x); requires the domain to be closed under negation."""
    t = f.table()
    try:
        vals = tuple(t[tuple(-c for c in x)] for x in f.domain)
    except KeyError:
        raise InvalidInput("domain not symmetric") from None
    return BooleanFunction(f.domain, vals, f"{f.name}(-x)")


def restrict(f: BooleanFunction, mask) -> BooleanFunction:
    """Restrict to the points for which mask(x) holds."""
    pairs = [(x, v) for x, v in f.items() if mask(x)]
    if not pairs:
        raise InvalidInput("restriction is empty")
    return BooleanFunction(tuple(p for p, _ in pairs), tuple(v for _, v in pairs), f.name)


def kp_transform(f: BooleanFunction) -> BooleanFunction:
    """f^KP(x, y, z) = f(w) with w_i = x_i if z_i = +1 else y_i, on ({-1,+1}^n)^3."""
    n = f.nvars
    t = f.table()
    if any(c not in CUBE for x in f.domain for c in x):
        raise InvalidInput("kp_transform needs a {-1,+1}^n function")
    if len(f) != 2 ** n:
        raise InvalidInput("kp_transform needs a total function on the cube")
    check_cap(8 ** n)
    pts, vals = [], []
    for p in itertools.product(CUBE, repeat=3 * n):
        x, y, z = p[:n], p[n:2 * n], p[2 * n:]
        w = tuple(x[i] if z[i] == 1 else y[i] for i in range(n))
        pts.append(p)
        vals.append(t[w])
    return BooleanFunction(tuple(pts), tuple(vals), f"KP({f.name})")


def depends_on(f: BooleanFunction, i: int) -> bool:
    t = f.table()
    for x, v in f.items():
        for c in f.coordinate_values()[i]:
            y = x[:i] + (c,) + x[i + 1:]
            if y in t and t[y] != v:
                return True
    return False


def negate(f: BooleanFunction) -> BooleanFunction:
    return f.negate()


def reflect(f: BooleanFunction) -> BooleanFunction:
    """g(x) = f(-x) on the domain -X."""
    pts = tuple(tuple(-c for c in x) for x in f.domain)
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    return BooleanFunction(tuple(pts[i] for i in order), tuple(f.values[i] for i in order),
                           f"{f.name}(-x)")


def subfunction(f: BooleanFunction, y: Sequence[int], z: Sequence[int]) -> BooleanFunction:
    """Restriction h(..., (x_i AND y_i) OR z_i, ...) of a cube function.

    With -1 = true: z_i = -1 pins input i to true, y_i = +1 (and z_i = +1)
    pins it to false, and y_i = -1, z_i = +1 leaves x_i free.  The result
    lives on the cube over the free variables, in their original order.
    """
    k = f.nvars
    if len(y) != k or len(z) != k:
        raise InvalidInput("patterns must have one entry per variable")
    t = f.table()
    free = [i for i in range(k) if z[i] == 1 and y[i] == -1]
    pts, vals = [], []
    for xs in itertools.product(CUBE, repeat=len(free)):
        full = []
        it = iter(xs)
        for i in range(k):
            if z[i] == -1:
                full.append(-1)
            elif y[i] == 1:
                full.append(1)
            else:
                full.append(next(it))
        pts.append(xs)
        vals.append(t[tuple(full)])
    return BooleanFunction(tuple(pts), tuple(vals), f"{f.name}|")
