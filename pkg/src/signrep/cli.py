"""Command-line front end.

    signrep degthr --family MAJ --n 3
    signrep maj-table --n 8 --d 1,2,3,4 --precision 1/64
    signrep witness --check cert.json
    signrep suite acceptance

Exit codes: 0 success, 1 a certificate failed its own re-check (or a suite
check failed), 2 usage error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import records
from .errors import InvalidInput, ResourceLimit, VerificationFailure
from .exact import fmt, rat

COMMANDS = ("degthr", "adeg", "rbracket", "witness", "compose-witness", "brs",
            "maj-table", "hs-cert", "density", "suite")
FORMATS = ("text", "json", "csv")


@dataclass
class ExperimentConfig:
    command: str
    functions: tuple = ()                    # FunctionSpec per role, in flag order
    grid: tuple = ()                         # degrees or sizes
    precision: Fraction = Fraction(1, 64)
    eps: Fraction | None = None
    out: str | None = None
    fmt: str = "text"
    extra: dict = field(default_factory=dict)

    def to_argv(self) -> list:
        argv = [self.command]
        roles = ROLES.get(self.command, ())
        for role, spec in zip(roles, self.functions):
            argv += [f"--{role}family", spec.family, f"--{role}n", ",".join(map(str, spec.params))]
            if spec.domain:
                argv += [f"--{role}domain", spec.domain]
        if self.grid:
            argv += ["--d", ",".join(map(str, self.grid))]
        argv += ["--precision", fmt(self.precision)]
        if self.eps is not None:
            argv += ["--eps", fmt(self.eps)]
        if self.out:
            argv += ["--out", self.out]
        argv += ["--format", self.fmt]
        for k in sorted(self.extra):
            v = self.extra[k]
            if isinstance(v, bool):
                if v:
                    argv.append(f"--{k}")
            elif v is not None:
                argv += [f"--{k}", str(v)]
        return argv


# function roles per command; "" is the plain --family/--n pair
ROLES = {
    "degthr": ("",), "adeg": ("",), "rbracket": ("",), "witness": ("",), "brs": ("",),
    "density": ("",), "compose-witness": ("outer-", "inner-"),
}
EXTRA = {
    "witness": ("check", "emit"), "brs": ("copies",), "density": ("kp_lower",),
    "hs-cert": ("bits",), "suite": ("name", "only"), "maj-table": (),
}


def _int_list(s: str) -> tuple:
    out = []
    for part in s.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _rational(s: str) -> Fraction:
    try:
        return rat(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}")


def _add_function(p, role=""):
    p.add_argument(f"--{role}family", required=True, type=str.upper)
    p.add_argument(f"--{role}n", required=True, type=_int_list,
                   help="family parameters, comma separated")
    p.add_argument(f"--{role}domain", choices=("cube", "bits"), default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="signrep", description="Exact sign-representation and "
                                 "rational-approximation computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="write the main output here")
        p.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
        p.add_argument("--precision", type=_rational, default=Fraction(1, 64))
        p.add_argument("--eps", type=_rational, default=None)
        p.add_argument("--d", dest="grid", type=_int_list, default=())

    for name in ("degthr", "adeg", "rbracket", "density"):
        p = sub.add_parser(name)
        _add_function(p)
        common(p)
    sub.choices["density"].add_argument("--kp-lower", dest="kp_lower", action="store_true",
                                        help="report 2^degthr(f) as a bound on dns(f^KP)")
    p = sub.add_parser("witness")
    p.add_argument("--check", default=None, help="re-verify a certificate file")
    p.add_argument("--family", type=str.upper, default=None)
    p.add_argument("--n", type=_int_list, default=())
    p.add_argument("--domain", choices=("cube", "bits"), default=None)
    p.add_argument("--emit", choices=("gordan", "approx"), default="gordan")
    common(p)
    p = sub.add_parser("compose-witness")
    _add_function(p, "outer-")
    _add_function(p, "inner-")
    common(p)
    p = sub.add_parser("brs")
    _add_function(p)
    p.add_argument("--copies", type=int, default=2)
    common(p)
    p = sub.add_parser("maj-table")
    p.add_argument("--n", dest="sizes", type=_int_list, required=True)
    common(p)
    p = sub.add_parser("hs-cert")
    p.add_argument("--n", dest="sizes", type=_int_list, default=(1,))
    p.add_argument("--bits", type=int, default=64)
    common(p)
    p = sub.add_parser("suite")
    p.add_argument("name", choices=("acceptance",))
    p.add_argument("--only", type=_int_list, default=())
    common(p)
    return ap


def parse_config(argv) -> ExperimentConfig:
    ns = build_parser().parse_args(argv)
    cmd = ns.command
    specs = []
    if cmd == "witness":
        if ns.family:
            specs.append(records.FunctionSpec(ns.family, tuple(ns.n), ns.domain))
    else:
        for role in ROLES.get(cmd, ()):
            key = role.replace("-", "_")
            specs.append(records.FunctionSpec(getattr(ns, key + "family"), tuple(getattr(ns, key + "n")),
                                              getattr(ns, key + "domain")))
    extra = {}
    for k in EXTRA.get(cmd, ()):
        v = getattr(ns, k, None)
        if k == "only":
            v = ",".join(map(str, v)) if v else None
        extra[k.replace("_", "-") if k == "kp_lower" else k] = v
    grid = tuple(ns.grid)
    if cmd in ("maj-table", "hs-cert"):
        extra["n"] = ",".join(map(str, ns.sizes))
    cfg = ExperimentConfig(cmd, tuple(specs), grid, ns.precision, ns.eps, ns.out, ns.fmt, extra)
    return cfg


def _extra_argv_fix(argv):
    # suite takes its bundle name positionally
    if argv and argv[0] == "suite" and "--name" in argv:
        i = argv.index("--name")
        name = argv[i + 1]
        argv = ["suite", name] + argv[1:i] + argv[i + 2:]
    return argv


def config_argv(cfg: ExperimentConfig) -> list:
    return _extra_argv_fix(cfg.to_argv())


# ---------------------------------------------------------------- commands


class Output:
    def __init__(self, cfg: ExperimentConfig, stream):
        self.cfg = cfg
        self.stream = stream

    def emit(self, text: str):
        if self.cfg.out:
            Path(self.cfg.out).write_text(text)
        else:
            self.stream.write(text)


def _fn(cfg, i=0):
    spec = cfg.functions[i]
    return spec, spec.build()


def _side_file(cfg, suffix, rec):
    if cfg.out:
        path = Path(cfg.out).with_suffix("").as_posix() + suffix
        Path(path).write_text(records.dumps(rec))
        return path
    return None


def cmd_degthr(cfg, out: Output, log):
    from .degrees import threshold_degree
    spec, f = _fn(cfg)
    rep = threshold_degree(f)
    prim = records.sign_rep_record(spec, rep.primal)
    dual = records.witness_record(spec, rep.dual) if rep.dual else None
    if cfg.fmt == "json":
        out.emit(records.dumps({"schema": records.schema("degthr"), "function": spec.to_json(),
                                "value": rep.value, "primal": prim, "dual": dual}))
        return 0
    out.emit(f"{rep.value}\n")
    if cfg.out:
        p = _side_file(cfg, ".primal.json", prim)
        log.write(f"primal polynomial: {p}\n")
        if dual:
            log.write(f"dual witness: {_side_file(cfg, '.dual.json', dual)}\n")
    return 0


def cmd_adeg(cfg, out, log):
    from .degrees import approx_error, eps_approx_degree
    spec, f = _fn(cfg)
    rows = []
    if cfg.eps is not None:
        rep = eps_approx_degree(f, cfg.eps)
        rows.append((rep.value, rep.extra.get("error", Fraction(0))))
    else:
        for d in cfg.grid or range(f.nvars + 1):
            eps, _, _ = approx_error(f, d)
            rows.append((d, eps))
    if cfg.fmt == "json":
        out.emit(records.dumps({"schema": records.schema("adeg"), "function": spec.to_json(),
                                "eps": fmt(cfg.eps) if cfg.eps is not None else None,
                                "rows": [[d, fmt(e)] for d, e in rows]}))
    elif cfg.fmt == "csv" or cfg.eps is None:
        out.emit("d,error\n" + "".join(f"{d},{fmt(e)}\n" for d, e in rows))
    else:
        out.emit(f"{rows[0][0]}\n")
    return 0


def cmd_rbracket(cfg, out, log):
    from .rational import rational_error_bracket
    spec, f = _fn(cfg)
    if not cfg.grid:
        raise InvalidInput("rbracket needs --d")
    rows = [rational_error_bracket(f, d, cfg.precision) for d in cfg.grid]
    if cfg.fmt == "json":
        out.emit(records.dumps({"schema": records.schema("bracket"), "function": spec.to_json(),
                                "precision": fmt(cfg.precision),
                                "rows": [{"d": b.d, "lower": fmt(b.lower), "upper": fmt(b.upper),
                                          "upper_certificate": records.approximant_record(spec, b.upper_certificate)}
                                         for b in rows]}))
    else:
        out.emit("d,lower,upper\n" + "".join(f"{b.d},{fmt(b.lower)},{fmt(b.upper)}\n" for b in rows))
    return 0


def cmd_witness(cfg, out, log):
    path = cfg.extra.get("check")
    if path:
        try:
            rec = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidInput(f"cannot read {path}: {e}")
        if "primal" in rec and "dual" in rec:
            parts = [rec["primal"]] + ([rec["dual"]] if rec["dual"] else [])
        else:
            parts = [rec]
        ok = all(records.check_record(r) for r in parts)
        out.emit(f"{'OK' if ok else 'FAILED'} {rec['schema']}\n")
        return 0 if ok else 1
    if not cfg.functions:
        raise InvalidInput("witness needs --check FILE or --family/--n")
    from .degrees import approx_error, threshold_degree
    spec, f = _fn(cfg)
    if cfg.extra.get("emit") == "approx":
        if not cfg.grid:
            raise InvalidInput("approx witness needs --d")
        _, _, w = approx_error(f, cfg.grid[0])
    elif cfg.grid:
        from .degrees import gordan_witness
        w = gordan_witness(f, cfg.grid[0])
        if w is None:
            raise InvalidInput(f"f is sign-representable at degree {cfg.grid[0]}; no Gordan witness")
    else:
        w = threshold_degree(f).dual
        if w is None:
            raise InvalidInput("constant function has no Gordan witness")
    out.emit(records.dumps(records.witness_record(spec, w)))
    return 0


def cmd_compose_witness(cfg, out, log):
    from .composition import compose_witness_threshold
    from .degrees import threshold_degree
    (so, F), (si, f) = _fn(cfg, 0), _fn(cfg, 1)
    rF, rf = threshold_degree(F), threshold_degree(f)
    if rF.dual is None or rf.dual is None:
        raise InvalidInput("outer and inner functions must be nonconstant")
    w = compose_witness_threshold(F, f, rF.dual, rf.dual, cfg.eps)
    rec = records.composed_record(so, si, w)
    if cfg.fmt == "json" or cfg.out:
        out.emit(records.dumps(rec))
    else:
        out.emit(f"orthogonality {w.claimed_orthogonality}\ncorrelation {fmt(w.correlation)}\n"
                 f"support {len(w.zeta)}\n")
    return 0


def cmd_brs(cfg, out, log):
    from .composition import brs_conjunction
    from .rational import maj_linear_approximant, rational_error_bracket
    spec, f = _fn(cfg)
    k = int(cfg.extra.get("copies") or 2)
    if spec.family == "MAJ" and spec.params[0] % 2 == 1 and not cfg.grid:
        A = maj_linear_approximant(spec.params[0])
    else:
        if not cfg.grid:
            raise InvalidInput("brs needs --d for this family")
        A = rational_error_bracket(f, cfg.grid[0], cfg.precision).upper_certificate
    P = brs_conjunction([A] * k)
    rec = {"schema": records.schema("brs"), "function": spec.to_json(), "copies": k,
           "approximant": records.approximant_record(spec, A),
           "polynomial": records.poly_to_json(P)}
    if cfg.fmt == "json" or cfg.out:
        out.emit(records.dumps(rec))
    else:
        out.emit(f"degree {P.degree()} terms {len(P.terms)} error {fmt(A.verified_error)} copies {k}\n")
    return 0


def cmd_maj_table(cfg, out, log):
    from .certificates import TABLE_HEADER, maj_error_table, table_csv
    sizes = _int_list(cfg.extra["n"])
    if not cfg.grid:
        raise InvalidInput("maj-table needs --d")
    text = TABLE_HEADER + "\n"
    for n in sizes:
        text += table_csv(maj_error_table(n, cfg.grid, cfg.precision)).split("\n", 1)[1]
    out.emit(text)
    return 0


def cmd_hs_cert(cfg, out, log):
    from .certificates import halfspace_criterion_cert
    for n in _int_list(cfg.extra["n"]):
        cert = halfspace_criterion_cert(n, int(cfg.extra.get("bits") or 64))
        rec = records.lower_bound_record(cert)
        rec["floor_holds"] = bool(cert.info["floor_holds"])
        if cfg.fmt == "json" or cfg.out:
            out.emit(records.dumps(rec))
        else:
            out.emit(f"n={n} |S|={len(cert.S)} delta={fmt(cert.delta)} "
                     f"implied={fmt(cert.implied_bound)} (~{float(cert.implied_bound):.6g})\n")
    return 0


def cmd_density(cfg, out, log):
    from .density import density_exact, density_lower_from_kp
    spec, f = _fn(cfg)
    if cfg.extra.get("kp-lower"):
        b = density_lower_from_kp(f)
        out.emit(f"{b.value}\n")
        return 0
    rep = density_exact(f)
    if cfg.fmt == "json" or cfg.out:
        out.emit(records.dumps(records.density_record(spec, rep)))
    else:
        out.emit(f"{rep.value}\n")
    return 0


def cmd_suite(cfg, out, log):
    from .suite import SUITES
    only = _int_list(cfg.extra["only"]) if cfg.extra.get("only") else None
    lines = []
    ok = True
    for passed, line in SUITES[cfg.extra["name"]](only):
        ok = ok and passed
        lines.append(line)
        if not cfg.out:
            out.stream.write(line + "\n")
            out.stream.flush()
    if cfg.out:
        out.emit("\n".join(lines) + "\n")
    return 0 if ok else 1


HANDLERS = {
    "degthr": cmd_degthr, "adeg": cmd_adeg, "rbracket": cmd_rbracket, "witness": cmd_witness,
    "compose-witness": cmd_compose_witness, "brs": cmd_brs, "maj-table": cmd_maj_table,
    "hs-cert": cmd_hs_cert, "density": cmd_density, "suite": cmd_suite,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return HANDLERS[cfg.command](cfg, Output(cfg, stdout), stderr)
    except InvalidInput as e:
        stderr.write(f"error: {e}\n")
        return 2
    except ResourceLimit as e:
        stderr.write(f"resource limit: {e}\n")
        return 3
    except VerificationFailure as e:
        stderr.write(f"verification failed: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
