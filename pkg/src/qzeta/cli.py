"""Command-line front end: ``qzeta {eval,integrate,verify,sweep}``.

Exit codes: 0 success/pass, 1 usage or region error, 2 numerical failure
(non-convergence, or a verification whose residual exceeds its tolerance).
"""

import argparse
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import serialize
from .errors import Divergent, NotConverged, QZetaError, QZetaInputError, RegionViolation
from .numkit import QParam, as_complex
from .qint import JacksonConfig, jackson_integral, jackson_power_integral
from .raabe import IdentityId, verify
from .zeta import DEFAULT_MAX_TERMS, SeriesConfig, ZetaParams, hurwitz_zeta, li, phi_collapsed, riemann_zeta

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2
ENV_MAX_TERMS = "QZETA_MAX_TERMS"
EVAL_TOL = 1e-16
VERIFY_TOL = 1e-9

_COMPLEX_RE = re.compile(r"^[0-9eE.+\-i]+$")


class UsageError(QZetaInputError):
    pass


def parse_complex(text):
    """Parse ``"re"``, ``"re+imi"``, ``"re-imi"`` or ``"imi"`` (no spaces)."""
    t = str(text).strip()
    if not t or not _COMPLEX_RE.match(t) or t.count("i") > 1 or ("i" in t and not t.endswith("i")):
        raise UsageError(f"not a complex literal: {text!r}")
    if t.endswith("i"):
        body = t[:-1]
        if body in ("", "+", "-") or body[-1] in "+-":
            t = body + "1i"
        t = t[:-1] + "j"
    try:
        return as_complex(complex(t))
    except ValueError:
        raise UsageError(f"not a complex literal: {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _default_max_terms():
    raw = os.environ.get(ENV_MAX_TERMS)
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{ENV_MAX_TERMS} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{ENV_MAX_TERMS} must be positive")
    return value


def _series_cfg(args, default_tol):
    tol = args.tol if args.tol is not None else default_tol
    max_terms = args.max_terms if args.max_terms is not None else _default_max_terms()
    return SeriesConfig(abs_tol=tol, max_terms=max_terms)


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- eval -------------------------------------------------------------------


def _series_payload(function, params, sv):
    return {
        "function": function,
        "params": {k: serialize.cpair(v) if isinstance(v, complex) else v for k, v in params.items()},
        "value": serialize.cpair(sv.value),
        "terms_used": sv.terms_used,
        "tail_bound": sv.tail_bound,
        "round_bound": sv.round_bound,
        "converged": sv.converged,
    }


def _render_series(args, payload, sv):
    if args.format == "json":
        return serialize.dumps(payload) + "\n"
    if args.format == "csv":
        return (
            "function,value_re,value_im,terms_used,tail_bound,round_bound,converged\n"
            f"{payload['function']},{serialize.fmt_float(sv.value.real)},{serialize.fmt_float(sv.value.imag)},"
            f"{sv.terms_used},{serialize.fmt_float(sv.tail_bound)},{serialize.fmt_float(sv.round_bound)},"
            f"{'true' if sv.converged else 'false'}\n"
        )
    return (
        f"value: {serialize.fmt_complex(sv.value)}\n"
        f"terms_used: {sv.terms_used}\n"
        f"tail_bound: {serialize.fmt_float(sv.tail_bound)}\n"
        f"converged: {'true' if sv.converged else 'false'}\n"
    )


def cmd_eval(args):
    cfg = _series_cfg(args, EVAL_TOL)
    s = parse_complex(args.s)
    if args.function == "phi":
        p = ZetaParams(args.k, parse_complex(args.z), s, parse_complex(args.a))
        params = {"k": p.k, "z": p.z, "s": p.s, "a": p.a}
        sv = phi_collapsed(p, cfg)
    elif args.function == "li":
        z = parse_complex(args.z)
        params = {"k": args.k, "z": z, "s": s}
        sv = li(args.k, z, s, cfg)
    elif args.function == "hurwitz":
        a = parse_complex(args.a)
        params = {"s": s, "a": a}
        sv = hurwitz_zeta(s, a, cfg)
    else:
        params = {"s": s}
        sv = riemann_zeta(s, cfg)
    _emit(args, _render_series(args, _series_payload(args.function, params, sv), sv))
    return EXIT_OK if sv.converged else EXIT_NUMERIC


# -- integrate --------------------------------------------------------------


def cmd_integrate(args):
    q = QParam(args.q)
    if (args.power is None) == (args.s is None):
        raise UsageError("give exactly one of --power or --s")
    s = -parse_complex(args.power) if args.power is not None else parse_complex(args.s)
    if s.real >= 1:
        raise Divergent(f"a^{serialize.fmt_complex(-s)} is not integrable on [0, 1]: Re(s)<1 required")
    tol = args.tol if args.tol is not None else EVAL_TOL
    sv = jackson_integral(lambda a: a ** (-s), JacksonConfig(q, tol))
    payload = {
        "integrand": {"power": serialize.cpair(-s)},
        "q": q.q,
        "jackson": serialize.cpair(sv.value),
        "terms_used": sv.terms_used,
        "tail_bound": sv.tail_bound,
        "converged": sv.converged,
        "closed_form": None,
        "delta": None,
    }
    if s.real < 1:
        closed = jackson_power_integral(s, q)
        payload["closed_form"] = serialize.cpair(closed)
        payload["delta"] = abs(closed - sv.value)
    if args.format == "json":
        text = serialize.dumps(payload) + "\n"
    elif args.format == "csv":
        cf = payload["closed_form"] or ["", ""]
        cells = [serialize.fmt_float(x) if x != "" else "" for x in cf]
        delta = serialize.fmt_float(payload["delta"]) if payload["delta"] is not None else ""
        text = (
            "q,jackson_re,jackson_im,terms_used,tail_bound,closed_re,closed_im,delta\n"
            f"{serialize.fmt_float(q.q)},{serialize.fmt_float(sv.value.real)},{serialize.fmt_float(sv.value.imag)},"
            f"{sv.terms_used},{serialize.fmt_float(sv.tail_bound)},{cells[0]},{cells[1]},{delta}\n"
        )
    else:
        lines = [
            f"jackson: {serialize.fmt_complex(sv.value)}",
            f"terms_used: {sv.terms_used}",
            f"tail_bound: {serialize.fmt_float(sv.tail_bound)}",
        ]
        if payload["closed_form"] is not None:
            lines.append(f"closed_form: {serialize.fmt_complex(complex(*payload['closed_form']))}")
            lines.append(f"delta: {serialize.fmt_float(payload['delta'])}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


# -- verify -----------------------------------------------------------------


def _render_report_text(rep):
    d = serialize.report_to_dict(rep)
    p = d["params"]
    fields = [f"k={p['k']}", f"z={serialize.fmt_complex(rep.z)}", f"s={serialize.fmt_complex(rep.s)}"]
    if rep.a is not None:
        fields.append(f"a={serialize.fmt_complex(rep.a)}")
    if rep.q is not None:
        fields.append(f"q={serialize.fmt_float(rep.q)}")
    if rep.r is not None:
        fields.append(f"r={rep.r}")
    lines = [
        f"identity: {rep.identity.value}",
        "params: " + " ".join(fields),
        f"lhs: {serialize.fmt_complex(rep.lhs)}",
        f"rhs: {serialize.fmt_complex(rep.rhs)}",
        f"abs_residual: {serialize.fmt_float(rep.abs_residual)}",
        f"rel_residual: {serialize.fmt_float(rep.rel_residual)}",
        f"lhs_tail: {serialize.fmt_float(rep.lhs_tail)}",
        f"rhs_tail: {serialize.fmt_float(rep.rhs_tail)}",
        f"tolerance: {serialize.fmt_float(rep.tolerance)}",
        "PASSED" if rep.passed else "FAILED",
    ]
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    identity = _parse_identity(args.identity)
    tol = args.tol if args.tol is not None else VERIFY_TOL
    max_terms = args.max_terms if args.max_terms is not None else _default_max_terms()
    cfg = SeriesConfig(max_terms=max_terms)
    rep = verify(
        identity,
        args.k,
        parse_complex(args.z),
        parse_complex(args.s),
        args.q,
        a=parse_complex(args.a) if args.a is not None else None,
        r=args.r,
        cfg=cfg,
        tolerance=tol,
    )
    record = serialize.report_to_dict(rep)
    if args.format == "json":
        text = serialize.dumps(record) + "\n"
    elif args.format == "csv":
        text = serialize.records_to_csv([record])
    else:
        text = _render_report_text(rep)
    if args.out and args.format == "text":
        # text goes to the terminal, the machine-readable report to --out
        sys.stdout.write(text)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize.dumps(record) + "\n")
    else:
        _emit(args, text)
    return EXIT_OK if rep.passed else EXIT_NUMERIC


def _parse_identity(text):
    try:
        return IdentityId.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- sweep ------------------------------------------------------------------


@dataclass
class SweepSpec:
    identities: list
    k_values: list = field(default_factory=lambda: [1])
    z_values: list = field(default_factory=list)
    s_values: list = field(default_factory=list)
    q_values: list = field(default_factory=list)
    a_values: list = field(default_factory=list)
    r_values: list = field(default_factory=list)
    tolerance: float = VERIFY_TOL
    output_path: str | None = None

    def points(self):
        """Grid points in deterministic order: identity, k, z, s, q, a, r."""
        for ident in self.identities:
            corollary = ident in (IdentityId.COR_RA1W, IdentityId.COR_RA2W)
            ks = [1] if corollary else self.k_values
            zs = [1 + 0j] if corollary else self.z_values
            qs = [None] if ident == IdentityId.THM12 else self.q_values
            as_ = self.a_values if ident == IdentityId.THM12 else [None]
            for k, z, s, q, a in product(ks, zs, self.s_values, qs, as_):
                if ident == IdentityId.LEMMA31:
                    rs = self.r_values or list(range(k))
                    for r in rs:
                        yield ident, k, z, s, q, a, r
                else:
                    yield ident, k, z, s, q, a, None


class SweepParseError(UsageError):
    pass


def _split_list(value, lineno, key):
    items = [v.strip() for v in value.split(",")]
    if not value.strip() or any(not v for v in items):
        raise SweepParseError(f"line {lineno}: empty value in list for {key!r}")
    return items


def parse_sweep_spec(text):
    """Parse ``key=value`` entries separated by newlines or ``;``; ``#`` starts a comment."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for entry in line.split(";"):
            entry = entry.strip()
            if not entry:
                continue
            if "=" not in entry:
                raise SweepParseError(f"line {lineno}: expected key=value, got {entry!r}")
            key, value = (x.strip() for x in entry.split("=", 1))
            key = key.lower()
            if key in raw:
                raise SweepParseError(f"line {lineno}: duplicate key {key!r}")
            raw[key] = (lineno, value)

    known = {"identity", "k", "z", "s", "q", "a", "r", "tol", "out"}
    for key, (lineno, _) in raw.items():
        if key not in known:
            raise SweepParseError(f"line {lineno}: unknown key {key!r}")
    if "identity" not in raw:
        raise SweepParseError("line 0: missing required key 'identity'")

    def conv(key, fn):
        lineno, value = raw[key]
        out = []
        for item in _split_list(value, lineno, key):
            try:
                out.append(fn(item))
            except (ValueError, QZetaInputError) as exc:
                raise SweepParseError(f"line {lineno}: bad value {item!r} for {key!r}: {exc}") from None
        return out

    def positive_int(x):
        v = int(x)
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    def q_value(x):
        return QParam(float(x)).q

    spec = SweepSpec(identities=conv("identity", IdentityId.parse))
    needs_kz = any(i not in (IdentityId.COR_RA1W, IdentityId.COR_RA2W) for i in spec.identities)
    needs_q = any(i != IdentityId.THM12 for i in spec.identities)
    required = ["s"] + (["k", "z"] if needs_kz else []) + (["q"] if needs_q else [])
    if IdentityId.THM12 in spec.identities:
        required.append("a")
    for key in required:
        if key not in raw:
            raise SweepParseError(f"line 0: missing required key {key!r}")
    spec.s_values = conv("s", parse_complex)
    if "k" in raw:
        spec.k_values = conv("k", positive_int)
    if "z" in raw:
        spec.z_values = conv("z", parse_complex)
    if "q" in raw:
        spec.q_values = conv("q", q_value)
    if "a" in raw:
        spec.a_values = conv("a", parse_complex)
    if "r" in raw:
        spec.r_values = conv("r", int)
    if "tol" in raw:
        lineno, value = raw["tol"]
        try:
            spec.tolerance = float(value)
        except ValueError:
            raise SweepParseError(f"line {lineno}: bad tolerance {value!r}") from None
        if not spec.tolerance > 0:
            raise SweepParseError(f"line {lineno}: tolerance must be positive")
    if "out" in raw:
        spec.output_path = raw["out"][1]
    return spec


def _point_params(k, z, s, q, a, r):
    return {
        "k": k,
        "z": serialize.cpair(z),
        "s": serialize.cpair(s),
        "a": serialize.cpair(a),
        "q": q,
        "r": r,
    }


def run_point(point, tolerance, cfg):
    ident, k, z, s, q, a, r = point
    try:
        rep = verify(ident, k, z, s, q if q is not None else 2.0, a=a, r=r, cfg=cfg, tolerance=tolerance)
    except NotConverged as exc:
        return serialize.unevaluated_record(ident, _point_params(k, z, s, q, a, r), f"not converged: {exc}", skipped=False)
    except (RegionViolation, QZetaInputError) as exc:
        return serialize.unevaluated_record(ident, _point_params(k, z, s, q, a, r), str(exc))
    return serialize.report_to_dict(rep)


def run_sweep(spec, cfg=None, jobs=1):
    cfg = cfg or SeriesConfig()
    points = list(spec.points())
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda p: run_point(p, spec.tolerance, cfg), points))
    else:
        records = [run_point(p, spec.tolerance, cfg) for p in points]
    summary = {
        "passed": sum(1 for r in records if not r["skipped"] and r["passed"]),
        "failed": sum(1 for r in records if not r["skipped"] and not r["passed"]),
        "skipped": sum(1 for r in records if r["skipped"]),
        "total": len(records),
    }
    return {"summary": summary, "reports": records}


def cmd_sweep(args):
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read sweep spec: {exc}") from None
    spec = parse_sweep_spec(text)
    if args.tol is not None:
        spec.tolerance = args.tol
    max_terms = args.max_terms if args.max_terms is not None else _default_max_terms()
    result = run_sweep(spec, SeriesConfig(max_terms=max_terms), jobs=args.jobs)
    if args.format == "csv":
        text = serialize.records_to_csv(result["reports"])
    else:
        text = serialize.dumps(result) + "\n"
    out = args.out or spec.output_path
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        s = result["summary"]
        sys.stdout.write(f"passed: {s['passed']} failed: {s['failed']} skipped: {s['skipped']}\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK if result["summary"]["failed"] == 0 else EXIT_NUMERIC


# -- parser -----------------------------------------------------------------


def _add_global_flags(p, default):
    p.add_argument("--tol", type=float, default=default, help="tolerance (verify: pass threshold; eval: series abs tolerance)")
    p.add_argument("--max-terms", type=int, default=default, help=f"term cap for n-sums (env {ENV_MAX_TERMS})")
    p.add_argument("--out", default=default, help="write output to this path")
    p.add_argument("--format", choices=("text", "json", "csv"), default=default)


def build_parser():
    parser = _Parser(prog="qzeta", description="Multiple Hurwitz-Lerch zeta functions and Jackson q-integrals.")
    _add_global_flags(parser, None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate phi, li, hurwitz or riemann")
    p.add_argument("function", choices=("phi", "li", "hurwitz", "riemann"))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--z", default="0")
    p.add_argument("--s", required=True)
    p.add_argument("--a", default="1")
    _add_global_flags(p, argparse.SUPPRESS)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("integrate", help="Jackson integral of a power of a over [0, 1]")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--power", help="integrand a^power")
    p.add_argument("--s", help="integrand a^-s")
    _add_global_flags(p, argparse.SUPPRESS)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("verify", help="verify one identity at one parameter point")
    p.add_argument("identity")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--z", default="0")
    p.add_argument("--s", required=True)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--a")
    p.add_argument("--r", type=int)
    _add_global_flags(p, argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a verification grid from a spec file")
    p.add_argument("spec")
    p.add_argument("--jobs", type=int, default=1)
    _add_global_flags(p, argparse.SUPPRESS)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text"
    try:
        return args.func(args)
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except RegionViolation as exc:
        print(f"region violation: {exc.condition}", file=sys.stderr)
        return EXIT_INPUT
    except QZetaInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
