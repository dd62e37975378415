"""Canonical JSON and CSV rendering of verification reports.

Floats are written with 17 significant digits and keys keep a fixed order, so
parsing an emitted document and re-emitting it reproduces the same bytes.
"""

import csv
import io
import json
import math

REPORT_KEYS = (
    "identity",
    "params",
    "lhs",
    "rhs",
    "abs_residual",
    "rel_residual",
    "lhs_tail",
    "rhs_tail",
    "lhs_terms",
    "rhs_terms",
    "tolerance",
    "passed",
    "rhs_shared",
    "skipped",
    "skip_reason",
)


def fmt_float(x):
    x = float(x) + 0.0  # drop the sign of -0.0 so output re-parses identically
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialized")
    return format(x, ".17g")


def fmt_complex(c):
    """``re`` or ``re+imi`` with 17 significant digits."""
    c = complex(c)
    if c.imag == 0:
        return fmt_float(c.real)
    return f"{fmt_float(c.real)}{'+' if c.imag >= 0 else '-'}{fmt_float(abs(c.imag))}i"


def cpair(c):
    if c is None:
        return None
    c = complex(c)
    return [c.real, c.imag]


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj, indent=0):
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        items = [inner + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar(obj)


def report_to_dict(rep):
    return {
        "identity": rep.identity.value,
        "params": {
            "k": rep.k,
            "z": cpair(rep.z),
            "s": cpair(rep.s),
            "a": cpair(rep.a),
            "q": rep.q,
            "r": rep.r,
        },
        "lhs": cpair(rep.lhs),
        "rhs": cpair(rep.rhs),
        "abs_residual": rep.abs_residual,
        "rel_residual": rep.rel_residual,
        "lhs_tail": rep.lhs_tail,
        "rhs_tail": rep.rhs_tail,
        "lhs_terms": rep.lhs_terms,
        "rhs_terms": rep.rhs_terms,
        "tolerance": rep.tolerance,
        "passed": rep.passed,
        "rhs_shared": rep.rhs_shared,
        "skipped": False,
        "skip_reason": None,
    }


def unevaluated_record(identity, params, reason, skipped=True):
    """Record for a grid point that produced no report."""
    rec = dict.fromkeys(REPORT_KEYS)
    rec.update(identity=identity.value, params=params, passed=False, skipped=skipped, skip_reason=reason)
    rec["rhs_shared"] = identity.value in ("ra2", "ra3")
    return rec


def _csv_cells(rec):
    p = rec["params"]
    row = {"identity": rec["identity"], "k": p["k"]}
    for name in ("z", "s", "a"):
        pair = p[name] or [None, None]
        row[f"{name}_re"], row[f"{name}_im"] = pair
    row["q"], row["r"] = p["q"], p["r"]
    for name in ("lhs", "rhs"):
        pair = rec[name] or [None, None]
        row[f"{name}_re"], row[f"{name}_im"] = pair
    for key in REPORT_KEYS[4:]:
        row[key] = rec[key]
    return {k: _cell(v) for k, v in row.items()}


def _cell(v):
    if v is None:
        return ""
    return v if isinstance(v, str) else _scalar(v)


CSV_COLUMNS = (
    ["identity", "k", "z_re", "z_im", "s_re", "s_im", "a_re", "a_im", "q", "r"]
    + ["lhs_re", "lhs_im", "rhs_re", "rhs_im"]
    + list(REPORT_KEYS[4:])
)


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(_csv_cells(rec))
    return buf.getvalue()
