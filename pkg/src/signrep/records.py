"""JSON records for certificates.  Numbers are "num/den" strings.

Every record carries a "schema" field; :func:`check_record` rebuilds the
objects from the record alone and re-runs the exact checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .boolfun import BooleanFunction, compose, make_named
from .certificates import RationalLowerBoundCert, verify_lower_bound_cert
from .composition import ComposedWitness, verify_composed
from .degrees import DualWitness, verify_witness
from .density import verify_support
from .errors import InvalidInput
from .exact import Poly, fmt, rat
from .rational import make_approximant

SCHEMA_PREFIX = "signrep."
VERSION = 1


@dataclass(frozen=True)
class FunctionSpec:
    family: str
    params: tuple
    domain: str | None = None

    def build(self) -> BooleanFunction:
        return make_named(self.family, self.params, self.domain)

    def to_json(self) -> dict:
        return {"family": self.family, "params": list(self.params), "domain": self.domain}

    @classmethod
    def from_json(cls, d) -> "FunctionSpec":
        return cls(str(d["family"]).upper(), tuple(int(p) for p in d["params"]), d.get("domain"))


def schema(name: str) -> str:
    return f"{SCHEMA_PREFIX}{name}/{VERSION}"


def _pt(x):
    return [int(v) for v in x]


def poly_to_json(p: Poly) -> dict:
    return {"nvars": p.nvars,
            "terms": [[list(e), fmt(a)] for e, a in sorted(p.terms.items())]}


def poly_from_json(d) -> Poly:
    return Poly(int(d["nvars"]), {tuple(e): rat(a) for e, a in d["terms"]})


def witness_record(spec: FunctionSpec, w: DualWitness) -> dict:
    return {"schema": schema("dual-witness"), "function": spec.to_json(), "kind": w.kind,
            "orthogonality_degree": w.orthogonality_degree,
            "l1_mass": fmt(w.l1_mass), "correlation": fmt(w.correlation),
            "weights": [[_pt(x), fmt(v)] for x, v in zip(w.points, w.weights) if v]}


def sign_rep_record(spec: FunctionSpec, p: Poly) -> dict:
    return {"schema": schema("sign-representation"), "function": spec.to_json(),
            "polynomial": poly_to_json(p)}


def approximant_record(spec: FunctionSpec, A) -> dict:
    return {"schema": schema("approximant"), "function": spec.to_json(),
            "numerator": poly_to_json(A.num), "denominator": poly_to_json(A.den),
            "error": fmt(A.verified_error)}


def lower_bound_record(cert: RationalLowerBoundCert) -> dict:
    return {"schema": schema("lower-bound"), "d": cert.d, "S": [_pt(x) for x in cert.S],
            "psi": [[_pt(x), fmt(v)] for x, v in sorted(cert.psi.items()) if v],
            "delta": fmt(cert.delta), "implied_bound": fmt(cert.implied_bound)}


def composed_record(outer: FunctionSpec, inner: FunctionSpec, w: ComposedWitness) -> dict:
    return {"schema": schema("composed-witness"), "outer": outer.to_json(), "inner": inner.to_json(),
            "claimed_orthogonality": w.claimed_orthogonality,
            "claimed_correlation_bound": fmt(w.claimed_correlation_bound),
            "l1_mass": fmt(w.l1_mass), "correlation": fmt(w.correlation),
            "zeta": [[_pt(x), fmt(v)] for x, v in sorted(w.zeta.items())]}


def density_record(spec: FunctionSpec, rep) -> dict:
    return {"schema": schema("density"), "function": spec.to_json(), "value": rep.value,
            "support": [list(m) for m in rep.support_witness],
            "coefficients": [fmt(c) for c in rep.coefficients]}


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, indent=1) + "\n"


def _check_dual(rec) -> bool:
    f = FunctionSpec.from_json(rec["function"]).build()
    wmap = {tuple(x): rat(v) for x, v in rec["weights"]}
    if set(wmap) - set(f.domain):
        return False
    weights = tuple(wmap.get(x, Fraction(0)) for x in f.domain)
    w = DualWitness(rec["kind"], f.domain, weights, int(rec["orthogonality_degree"]),
                    rat(rec["l1_mass"]), rat(rec["correlation"]))
    return verify_witness(f, w)


def _check_sign_rep(rec) -> bool:
    f = FunctionSpec.from_json(rec["function"]).build()
    p = poly_from_json(rec["polynomial"])
    return p.nvars == f.nvars and all(y * p(x) > 0 for x, y in f.items())


def _check_approximant(rec) -> bool:
    f = FunctionSpec.from_json(rec["function"]).build()
    A = make_approximant(f, poly_from_json(rec["numerator"]), poly_from_json(rec["denominator"]))
    return A.denominator_positive and A.verified_error == rat(rec["error"])


def _check_lower_bound(rec) -> bool:
    cert = RationalLowerBoundCert([tuple(x) for x in rec["S"]],
                                  {tuple(x): rat(v) for x, v in rec["psi"]},
                                  rat(rec["delta"]), int(rec["d"]), rat(rec["implied_bound"]))
    return verify_lower_bound_cert(cert)


def _check_composed(rec) -> bool:
    F = FunctionSpec.from_json(rec["outer"]).build()
    f = FunctionSpec.from_json(rec["inner"]).build()
    h = compose(F, [f] * F.nvars)
    zeta = {tuple(x): rat(v) for x, v in rec["zeta"]}
    if set(zeta) - set(h.domain):
        return False
    w = ComposedWitness(zeta, int(rec["claimed_orthogonality"]), rat(rec["claimed_correlation_bound"]),
                        rat(rec["l1_mass"]), rat(rec["correlation"]), h)
    return verify_composed(w)


def _check_density(rec) -> bool:
    f = FunctionSpec.from_json(rec["function"]).build()
    masks = [sum(1 << i for i in m) for m in rec["support"]]
    return len(masks) == int(rec["value"]) and verify_support(f, masks, [rat(c) for c in rec["coefficients"]])


def _check_bracket(rec) -> bool:
    # only the upper ends carry a certificate in the record
    return all(_check_approximant(r["upper_certificate"])
               and rat(r["upper_certificate"]["error"]) <= rat(r["upper"])
               and rat(r["lower"]) <= rat(r["upper"]) for r in rec["rows"])


CHECKERS = {
    schema("dual-witness"): _check_dual,
    schema("sign-representation"): _check_sign_rep,
    schema("approximant"): _check_approximant,
    schema("lower-bound"): _check_lower_bound,
    schema("composed-witness"): _check_composed,
    schema("density"): _check_density,
    schema("bracket"): _check_bracket,
}


def check_record(rec: dict) -> bool:
    try:
        fn = CHECKERS[rec["schema"]]
    except KeyError:
        raise InvalidInput(f"unknown or missing schema: {rec.get('schema')!r}")
    try:
        return bool(fn(rec))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InvalidInput):
            raise
        raise InvalidInput(f"malformed record: {e}") from e
