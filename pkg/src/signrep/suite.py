"""Named experiment bundles.  ``acceptance`` runs the fifteen acceptance checks.

Each check returns (passed, detail).  Details are built from exact values
and counts only, so two runs print identical bytes.
"""
from __future__ import annotations

import hashlib
import random
from fractions import Fraction

from .boolfun import all_functions, compose, from_table, kp_transform, make_named
from .certificates import (halfspace_criterion_cert, halfspace_moment_coupling,
                           maj_error_table, moment_difference, sign_pattern_infeasible,
                           verify_lower_bound_cert)
from .composition import (brs_conjunction, compose_witness_threshold, verify_composed,
                          verify_main_finite)
from .degrees import approx_error, gordan_witness, sign_representation, threshold_degree, verify_witness
from .density import brute_force_density, density_exact, density_lower_from_kp
from .errors import SignrepError
from .exact import check_comb_identity, fmt
from .rational import (DFA_M_THRESHOLD, dfa_halfspace_approximant, maj_from_univariate,
                       maj_linear_approximant, maj_univariate_upper, newman_certificate,
                       newman_sign_approximant, rational_error_bracket, sign_domain)

SEED = 20240601


def approx(x) -> str:
    return f"~{float(x):.6g}"


def c01_duality():
    cases = bad = 0
    for n in (2, 3):
        for f in all_functions(n):
            for d in (0, 1, 2):
                p, _ = sign_representation(f, d)
                w = gordan_witness(f, d)
                cases += 1
                if (p is None) == (w is None):
                    bad += 1
    return bad == 0, f"{cases} cases, {cases - bad} with exactly one alternative"


def _approx_instances():
    fams = [("MAJ", n) for n in (1, 3, 5)] + [("OR", n) for n in range(1, 6)] \
        + [("PARITY", n) for n in range(1, 5)] + [("AND", n) for n in (2, 3)]
    for fam, n in fams:
        f = make_named(fam, [n])
        for d in range(n + 1):
            yield f, d


def c02_strong_duality():
    count = gaps = 0
    for f, d in _approx_instances():
        eps, p, w = approx_error(f, d)
        count += 1
        if w.correlation != eps or max(abs(y - p(x)) for x, y in f.items()) != eps \
                or not verify_witness(f, w):
            gaps += 1
    return count >= 50 and gaps == 0, f"{count} instances, {gaps} with a gap"


def c03_identities():
    rng = random.Random(SEED)
    draws = 0
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 12)
        deg = rng.randint(0, n - 1)
        coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(deg + 1)]
        draws += 1
        if not check_comb_identity(n, coeffs):
            bad += 1
    pairs = 0
    for m in range(1, 9):
        for d in range(4 * m + 1):
            pairs += 1
            if moment_difference(m, d) != 0:
                bad += 1
    return bad == 0, f"{draws} random polynomials and {pairs} (m,d) pairs, {bad} nonzero"


def c04_newman():
    parts = []
    ok = True
    for N, k in ((4, 1), (9, 2), (100, 3), (10 ** 4, 5)):
        c = newman_certificate(N, k)
        good = c["slack"] <= Fraction(1, 2 ** 40)
        ok = ok and good
        parts.append(f"({N},{k}) err {approx(c['error'])} slack {fmt(c['slack'])}")
    return ok, "; ".join(parts)


def c05_interpolant():
    bad = []
    for n in range(1, 17):
        A = maj_univariate_upper(n, n)
        b = rational_error_bracket(sign_domain(n), n, upper_seed=A)
        if (b.lower, b.upper) != (0, 0):
            bad.append(n)
    return not bad, "brackets [0,0] for n=1..16" if not bad else f"nonzero at n={bad}"


def c06_sign_pattern():
    rec = sign_pattern_infeasible(1, check_boundary=True)
    ok = rec.verified and rec.boundary_polynomial is not None
    return ok, (f"{len(rec.points)} points, degree 2 infeasible (Farkas verified), "
                f"degree 3 feasible")


def c07_coupling():
    C = halfspace_moment_coupling(1, max_degree=4)
    atoms = len(C.joint) if C.joint is not None else 0
    bad = 0
    for xs, _ in C.joint:
        # xs[i] is the vector x_{i+1} across the components of z
        for c, zc in enumerate(C.z):
            if sum(2 ** i * x[c] for i, x in enumerate(xs)) != zc or any(abs(x[c]) > 4 for x in xs):
                bad += 1
    return bad == 0 and atoms > 0, f"{atoms} joint atoms, support identity on all, span checked for d1 <= 4"


def c08_halfspace_cert():
    cert = halfspace_criterion_cert(1)
    ok = verify_lower_bound_cert(cert)
    pts = sorted(set(cert.S) | {tuple(-v for v in x) for x in cert.S})
    f = from_table(pts, [1 if sum(2 ** i * v for i, v in enumerate(x)) > 0 else -1 for x in pts], "HS-S")
    b = rational_error_bracket(f, 1)
    ok = ok and cert.implied_bound <= b.upper
    return ok, (f"|S|={len(cert.S)} delta {approx(cert.delta)} implied {approx(cert.implied_bound)} "
                f"<= bisection upper {approx(b.upper)}")


def c09_maj_table():
    parts = []
    ok = True
    for n in (8, 16):
        rows = maj_error_table(n, range(1, 7))
        for r in rows:
            b = r.bracket
            good = r.sandwich_holds() and b.upper - b.lower <= Fraction(1, 64)
            ok = ok and good
            parts.append(f"n={n} d={r.d} [{approx(b.lower)},{approx(b.upper)}]")
    return ok, "; ".join(parts)


def c10_brs():
    A3 = maj_linear_approximant(3)
    P3 = brs_conjunction([A3, A3])
    U = newman_sign_approximant(3, 2)
    A5 = maj_from_univariate(U, 5)
    ok = 2 * A5.verified_error < 1
    P5 = brs_conjunction([A5, A5])
    return ok, (f"MAJ3 pair degree {P3.degree()} on 64 points; MAJ5 pair error sum "
                f"{approx(2 * A5.verified_error)} degree {P5.degree()} on 1024 points")


def c11_main_finite():
    maj3 = make_named("MAJ", [3])
    or2 = make_named("OR", [2])
    parts = []
    ok = True
    for (a, b), name in (((maj3, maj3), "MAJ3,MAJ3"), ((or2, or2), "OR2,OR2"), ((maj3, or2), "MAJ3,OR2")):
        r = verify_main_finite(a, b)
        ok = ok and r.holds
        parts.append(f"({name}) d={r.d} sum {fmt(r.total)}")
    return ok, "; ".join(parts)


def c12_direct_product():
    parts = []
    ok = True
    for Fn, fn, expect in ((("PARITY", 2), ("PARITY", 2), 4), (("OR", 2), ("MAJ", 3), 2),
                           (("AND", 2), ("PARITY", 2), 2)):
        F = make_named(Fn[0], [Fn[1]], domain="cube")
        f = make_named(fn[0], [fn[1]])
        rF, rf = threshold_degree(F), threshold_degree(f)
        h = compose(F, [f] * F.nvars)
        rh = threshold_degree(h)
        w = compose_witness_threshold(F, f, rF.dual, rf.dual)
        good = rh.value >= rF.value * rf.value and rh.value >= expect and verify_composed(w) \
            and w.claimed_orthogonality >= rF.value * rf.value
        ok = ok and good
        parts.append(f"{F.name}o{f.name}: {rh.value} >= {rF.value}*{rf.value}, zeta order {w.claimed_orthogonality}")
    return ok, "; ".join(parts)


def c13_dfa():
    ok = True
    degs = []
    for n in range(1, 8):
        A = dfa_halfspace_approximant(n, DFA_M_THRESHOLD)
        d = max(A.num.degree(), A.den.degree())
        degs.append(d)
        ok = ok and d <= 64
    return ok, f"M={fmt(DFA_M_THRESHOLD)} sign-correct for n=1..7, degrees {degs}"


def c14_density():
    bad = 0
    for f in all_functions(2):
        if density_exact(f).value != brute_force_density(f):
            bad += 1
    x1 = make_named("DICTATOR", [1])
    k = density_exact(kp_transform(x1)).value
    lb = density_lower_from_kp(x1).value
    ok = bad == 0 and k >= 2 and k >= lb
    return ok, f"16 functions, {bad} mismatches; dns(x1^KP)={k} >= {lb}"


ACCEPTANCE = [
    (1, "duality", c01_duality),
    (2, "strong duality", c02_strong_duality),
    (3, "binomial identities", c03_identities),
    (4, "newman bound", c04_newman),
    (5, "exact interpolant", c05_interpolant),
    (6, "sign pattern", c06_sign_pattern),
    (7, "coupling", c07_coupling),
    (8, "halfspace certificate", c08_halfspace_cert),
    (9, "majority sandwich", c09_maj_table),
    (10, "brs conjunction", c10_brs),
    (11, "main finite", c11_main_finite),
    (12, "direct product", c12_direct_product),
    (13, "dfa halfspace", c13_dfa),
    (14, "density", c14_density),
]


def run_check(fn):
    try:
        return fn()
    except SignrepError as e:
        return False, f"{type(e).__name__}: {e}"


def acceptance_lines(only=None):
    """Yield one line per check; the last line is a digest of the others."""
    h = hashlib.sha256()
    for num, name, fn in ACCEPTANCE:
        if only and num not in only:
            continue
        ok, detail = run_check(fn)
        line = f"criterion {num:02d} {'PASS' if ok else 'FAIL'} {name}: {detail}"
        h.update(line.encode() + b"\n")
        yield ok, line
    yield True, f"criterion 15 DIGEST determinism: sha256 {h.hexdigest()}"


SUITES = {"acceptance": acceptance_lines}
