"""Command-line front-end.

One job per invocation: read UTF-8 JSON from --input, write JSON to
--output (or stdout).  Exit codes: 0 on success, 2 for bad input, 3 when
an internal guarantee fails (for example a tuple that is still not
constant after the requested number of passes).  Errors are emitted as a
machine-readable object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import serialize
from .average import (SectionTuple, WeightSeq, wav, wav_at_weights, wsym)
from .errors import InputError, InvariantViolation
from .exactring import PolyRing, eval_at_weights
from .nilpotent import bch, exp_nilpotent, log_unipotent
from .serialize import FormatError
from .simplicial import build_simplicial_section, validate_simplicial_section


@dataclass
class JobSpec:
    subcommand: str
    input_path: str
    output_path: Optional[str] = None
    weights: Optional[str] = None
    iterations: Optional[int] = None
    resolution: Optional[int] = None
    max_q: int = 3


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise FormatError("invalid JSON in %s: %s" % (path, exc)) from None


def _write_json(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=False)
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _parse_weights(spec_text, field, expected_len):
    try:
        raw = json.loads(spec_text)
    except json.JSONDecodeError:
        raise FormatError("weights must be a JSON array") from None
    if not isinstance(raw, list):
        raise FormatError("weights must be a JSON array")
    values = [serialize.scalar_from_json(field, w) for w in raw]
    if len(values) != expected_len:
        raise InputError("expected %d weights, got %d" % (expected_len, len(values)))
    return WeightSeq(field, values)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_wav(job: JobSpec):
    t = serialize.tuple_from_json(_read_json(job.input_path))
    if t.r != 0:
        raise InputError("wav expects t-constant sections")
    averaged = wav(t, d_override=job.iterations)
    doc = {"q": t.q, "wav": serialize.matrix_to_json(averaged)}
    if job.weights is not None:
        field = t.group.field
        weights = _parse_weights(job.weights, field, t.q + 1)
        point = wav_at_weights(t.sections, weights, t.group)
        doc["weights"] = [serialize.scalar_to_json(w) for w in weights]
        doc["evaluated"] = serialize.matrix_to_json(point)
    _write_json(doc, job.output_path)
    return 0


def cmd_wsym(job: JobSpec):
    t = serialize.tuple_from_json(_read_json(job.input_path))
    if t.r != t.q:
        raise InputError("wsym expects sections over the q-simplex")
    out = wsym(t)
    _write_json(serialize.tuple_to_json(out), job.output_path)
    return 0


def cmd_exp(job: JobSpec):
    doc = _read_json(job.input_path)
    field = serialize.field_from_json(doc.get("field") if isinstance(doc, dict) else None)
    mat = serialize.nil_from_json(field, doc.get("matrix", doc) if isinstance(doc, dict) else doc)
    _write_json(serialize.matrix_to_json(exp_nilpotent(mat)), job.output_path)
    return 0


def cmd_log(job: JobSpec):
    doc = _read_json(job.input_path)
    field = serialize.field_from_json(doc.get("field") if isinstance(doc, dict) else None)
    mat = serialize.uni_from_json(field, doc.get("matrix", doc) if isinstance(doc, dict) else doc)
    _write_json(serialize.matrix_to_json(log_unipotent(mat)), job.output_path)
    return 0


def cmd_bch(job: JobSpec):
    doc = _read_json(job.input_path)
    if not isinstance(doc, dict) or "a" not in doc or "b" not in doc:
        raise FormatError("bch input needs keys a and b")
    field = serialize.field_from_json(doc.get("field"))
    a = serialize.nil_from_json(field, doc["a"])
    b = serialize.nil_from_json(field, doc["b"])
    _write_json(serialize.matrix_to_json(bch(a, b)), job.output_path)
    return 0


def cmd_sections(job: JobSpec):
    doc = _read_json(job.input_path)
    if not isinstance(doc, dict):
        raise FormatError("sections input must be an object")
    if "levels" in doc:
        # validate mode: the document already carries a simplicial section
        section = serialize.simplicial_from_json(doc)
        report = validate_simplicial_section(section, min(job.max_q, section.max_q))
        out = {"mode": "validate",
               "report": serialize.validation_report_to_json(report)}
        _write_json(out, job.output_path)
        return 0 if report.ok else 2
    field = serialize.field_from_json(doc.get("field"))
    cover = serialize.cover_from_json(doc.get("cover"))
    group = serialize.span_from_json(field, doc.get("group"))
    local_sections = serialize.locals_from_json(field, doc.get("locals"))
    section = build_simplicial_section(cover, local_sections, group, max_q=job.max_q)
    report = validate_simplicial_section(section, job.max_q)
    out = serialize.simplicial_to_json(section)
    out["report"] = serialize.validation_report_to_json(report)
    _write_json(out, job.output_path)
    if not report.ok:
        # the builder guarantees validity; reaching this is a broken invariant
        raise InvariantViolation("freshly built simplicial section failed validation: %s"
                                 % report.summary())
    return 0


def cmd_galois(job: JobSpec):
    from .descent import rational_point
    orbit = serialize.orbit_from_json(_read_json(job.input_path))
    point = rational_point(orbit)
    doc = {"q": orbit.q, "rational_point": serialize.matrix_to_json(point)}
    _write_json(doc, job.output_path)
    return 0


def _simplex_grid(q, resolution):
    """All exact rational points (k_0/R, ..., k_q/R) with sum k_i = R."""
    out = []

    def rec(i, left, partial):
        if i == q:
            out.append(partial + [Fraction(left, resolution)])
            return
        for k in range(left + 1):
            rec(i + 1, left - k, partial + [Fraction(k, resolution)])

    rec(0, resolution, [])
    return out


def cmd_figure_data(job: JobSpec):
    t = serialize.tuple_from_json(_read_json(job.input_path))
    if t.r != 0:
        raise InputError("figure data expects t-constant sections")
    if t.q not in (1, 2):
        raise InputError("figure data supports q = 1 or q = 2, got q = %d" % t.q)
    resolution = job.resolution if job.resolution is not None else 4
    if resolution < 1:
        raise InputError("resolution must be a positive integer")
    field = t.group.field
    averaged = wav(t, d_override=job.iterations)
    ring = averaged.ring
    out_ring = PolyRing(field, 0, ring.params)
    samples = []
    for weights in _simplex_grid(t.q, resolution):
        ws = WeightSeq(field, weights)
        value = averaged.map_entries(
            lambda e: out_ring.constant(eval_at_weights(e, ws.values)), out_ring)
        entries = []
        for i in range(value.n):
            row = []
            for j in range(value.n):
                c = value.entry(i, j).constant_value()
                cell = {"value": serialize.scalar_to_json(c)}
                if c.is_rational:
                    cell["decimal"] = format(float(c.as_fraction()), ".12g")
                row.append(cell)
            entries.append(row)
        samples.append({
            "weights": [serialize.fraction_to_json(w) for w in weights],
            "entries": entries,
        })
    doc = {"q": t.q, "resolution": resolution, "n": t.group.n, "samples": samples}
    _write_json(doc, job.output_path)
    return 0


_HANDLERS = {
    "wav": cmd_wav,
    "wsym": cmd_wsym,
    "exp": cmd_exp,
    "log": cmd_log,
    "bch": cmd_bch,
    "sections": cmd_sections,
    "galois": cmd_galois,
    "figure-data": cmd_figure_data,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unipavg",
        description="Exact weighted averages of sections of unipotent-group torsors.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in [
        ("wav", "average a tuple of constant sections over the simplex"),
        ("wsym", "one symmetrization pass on a tuple over the simplex"),
        ("exp", "matrix exponential of a strictly upper matrix"),
        ("log", "matrix logarithm of a unit upper matrix"),
        ("bch", "log of the product of two exponentials"),
        ("sections", "build or validate a simplicial section over a cover"),
        ("galois", "rational point from a Galois orbit by uniform averaging"),
        ("figure-data", "sample the averaged section on an exact simplex grid"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True,
                       help="input JSON path, or - for stdin")
        p.add_argument("--output", default=None,
                       help="output JSON path, or - for stdout (default)")
        if name in ("wav",):
            p.add_argument("--weights", default=None,
                           help="JSON array of weights summing to 1")
        if name in ("wav", "figure-data"):
            p.add_argument("--iterations", type=int, default=None,
                           help="symmetrization pass override (>= derived length)")
        if name == "figure-data":
            p.add_argument("--resolution", type=int, default=None,
                           help="grid resolution R; samples at multiples of 1/R")
        if name == "sections":
            p.add_argument("--max-q", type=int, default=3, dest="max_q",
                           help="highest simplex level to build/validate")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(
        subcommand=args.subcommand,
        input_path=args.input,
        output_path=args.output,
        weights=getattr(args, "weights", None),
        iterations=getattr(args, "iterations", None),
        resolution=getattr(args, "resolution", None),
        max_q=getattr(args, "max_q", 3),
    )
    handler = _HANDLERS[job.subcommand]
    try:
        return handler(job)
    except InputError as exc:
        _emit_error("input-error", exc)
        return 2
    except InvariantViolation as exc:
        _emit_error("invariant-violation", exc)
        return 3


def _emit_error(kind, exc):
    sys.stderr.write(json.dumps(
        {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}})
        + "\n")


if __name__ == "__main__":
    sys.exit(main())