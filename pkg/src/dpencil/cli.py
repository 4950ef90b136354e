"""Command-line front end: build, verify, classify, synthesize.

Exit codes: 0 success (verify: the curve is D-type), 1 verify found a
non-constant inner product, 2 invalid config or expression, 3 infeasible
target constant, 4 numerical failure (no usable samples, degenerate
geometry).  Each command prints a single JSON object on stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .dcurve import (
    SynthesisRequest,
    feasible_domain,
    restrict_curve,
    synthesize_marching_scale,
    verify_dtype,
)
from .errors import (
    DomainError,
    ExpressionError,
    GeometryError,
    InfeasibleConstantError,
    InvalidCurveError,
    InvalidMarchingScaleError,
    SceneValidationError,
)
from .expr import format_expression
from .frenet import classify_curve
from .mesh import sample_grid, write_obj, write_report_csv
from .pencil import ProductForm, SurfacePencil, TabulatedProductForm
from .presets import load_preset, preset_names
from .scene import SceneConfig

EXIT_OK = 0
EXIT_NOT_DTYPE = 1
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4

_VALIDATION_ERRORS = (
    SceneValidationError,
    ExpressionError,
    InvalidCurveError,
    InvalidMarchingScaleError,
    ValueError,
)


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pencil",
        description="Construct, verify, classify, and synthesize surface "
        "pencils sharing a prescribed D-type curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "build": "build the surface mesh (OBJ) and verification report (CSV)",
        "verify": "verify the constant normal/Darboux inner product (CSV report)",
        "classify": "classify the scene's curve",
        "synthesize": "emit a completed scene config realizing the target constant",
    }
    for name, help_text in specs.items():
        sp = sub.add_parser(name, help=help_text)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", choices=preset_names(), help="built-in scene")
        src.add_argument("--config", metavar="PATH", help="JSON scene config file")
        sp.add_argument("--tol", type=float, default=None,
                        help="verdict tolerance (default 1e-8 unit-speed, 1e-6 otherwise)")
        sp.add_argument("--samples", type=int, default=None,
                        help="sample count (default 1000; classify 256)")
        sp.add_argument("-o", "--out-dir", default=".", metavar="DIR",
                        help="directory for OBJ/CSV outputs")
    return parser


def _load_config(args) -> SceneConfig:
    if args.preset:
        return SceneConfig.from_dict(load_preset(args.preset))
    try:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except OSError as e:
        raise SceneValidationError(f"cannot read config {args.config!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise SceneValidationError(f"config {args.config!r} is not valid JSON: {e}") from None
    return SceneConfig.from_dict(raw)


def _default_tol(cfg: SceneConfig, args) -> float:
    if args.tol is not None:
        return args.tol
    return 1e-8 if cfg.unit_speed else 1e-6


def _assemble(cfg: SceneConfig):
    """(curve, marching, feasibility note) for either marching mode."""
    curve = cfg.curve()
    note = None
    if cfg.mode == "explicit":
        return curve, cfg.explicit_marching(), note
    intervals = feasible_domain(curve, cfg.c)
    if not intervals:
        raise InfeasibleConstantError(cfg.c)
    lo, hi = curve.domain
    full = len(intervals) == 1 and math.isclose(
        intervals[0][0], lo, abs_tol=1e-7
    ) and math.isclose(intervals[0][1], hi, abs_tol=1e-7)
    if not full:
        largest = max(intervals, key=lambda iv: iv[1] - iv[0])
        curve = restrict_curve(curve, largest)
        note = {
            "feasible_domain": [[a, b] for a, b in intervals],
            "restricted_to": list(curve.domain),
        }
        print(
            f"target constant feasible only on {note['feasible_domain']}; "
            f"restricting to {note['restricted_to']}",
            file=sys.stderr,
        )
    marching = synthesize_marching_scale(
        SynthesisRequest(curve=curve, c=cfg.c, sign=cfg.sign, t0=cfg.t0)
    )
    return curve, marching, note


def _out_path(args, name: str) -> Path:
    path = Path(args.out_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit(summary: dict) -> None:
    print(json.dumps(summary, sort_keys=True))


def cmd_build(cfg: SceneConfig, args) -> int:
    curve, marching, note = _assemble(cfg)
    pencil = SurfacePencil(curve, marching, cfg.t_range)
    mesh = sample_grid(pencil, cfg.ns, cfg.nt, s_range=curve.domain,
                       t_range=cfg.t_range)
    tol = _default_tol(cfg, args)
    report = verify_dtype(pencil, args.samples or 1000, tol)
    obj_path = _out_path(args, cfg.obj_path)
    csv_path = _out_path(args, cfg.csv_path)
    with open(obj_path, "wb") as sink:
        write_obj(mesh, sink)
    with open(csv_path, "wb") as sink:
        write_report_csv(report, sink)
    summary = {
        "command": "build",
        "c_estimate": report.c_estimate,
        "max_deviation": report.max_deviation,
        "verdict": report.verdict,
        "defect_count": len(mesh.defects),
        "vertices": mesh.ns * mesh.nt,
        "faces": int(mesh.faces.shape[0]),
        "skipped_samples": len(report.skipped),
        "obj_path": str(obj_path),
        "csv_path": str(csv_path),
    }
    if note:
        summary["feasibility"] = note
    _emit(summary)
    return EXIT_OK


def cmd_verify(cfg: SceneConfig, args) -> int:
    curve, marching, note = _assemble(cfg)
    pencil = SurfacePencil(curve, marching, cfg.t_range)
    tol = _default_tol(cfg, args)
    report = verify_dtype(pencil, args.samples or 1000, tol)
    csv_path = _out_path(args, cfg.csv_path)
    with open(csv_path, "wb") as sink:
        write_report_csv(report, sink)
    summary = {
        "command": "verify",
        "c_estimate": report.c_estimate,
        "max_deviation": report.max_deviation,
        "tolerance": tol,
        "verdict": report.verdict,
        "geodesic": report.geodesic,
        "asymptotic_planar": report.asymptotic_planar,
        "skipped_samples": len(report.skipped),
        "csv_path": str(csv_path),
    }
    if note:
        summary["feasibility"] = note
    _emit(summary)
    return EXIT_OK if report.verdict else EXIT_NOT_DTYPE


def cmd_classify(cfg: SceneConfig, args) -> int:
    curve = cfg.curve()
    cls = classify_curve(curve, args.samples or 256, args.tol or 1e-6)
    _emit({
        "command": "classify",
        "kind": cls.kind,
        "constant": cls.constant,
        "deviation": cls.deviation,
        "skipped_samples": cls.skipped,
    })
    return EXIT_OK


def cmd_synthesize(cfg: SceneConfig, args) -> int:
    if cfg.c is None:
        raise SceneValidationError("synthesize requires marching.c in the config")
    curve = cfg.curve()
    intervals = feasible_domain(curve, cfg.c, max(args.samples or 256, 64))
    if not intervals:
        raise InfeasibleConstantError(cfg.c)
    lo, hi = curve.domain
    full = len(intervals) == 1 and math.isclose(
        intervals[0][0], lo, abs_tol=1e-7
    ) and math.isclose(intervals[0][1], hi, abs_tol=1e-7)
    out = cfg.to_dict()
    if not full:
        largest = max(intervals, key=lambda iv: iv[1] - iv[0])
        curve = restrict_curve(curve, largest)
        out["curve"]["range"] = list(curve.domain)
        out["feasible_domain"] = [[a, b] for a, b in intervals]
        print(f"feasible subdomain(s): {out['feasible_domain']}", file=sys.stderr)
    marching = synthesize_marching_scale(
        SynthesisRequest(curve=curve, c=cfg.c, sign=cfg.sign, t0=cfg.t0)
    )
    block = out["marching"]
    if isinstance(marching.form, ProductForm):
        form = marching.form
        block["mode"] = "explicit"
        block["explicit"] = {
            "l": format_expression(form.l),
            "m": format_expression(form.m),
            "n": format_expression(form.n),
            "U": format_expression(form.U),
            "V": format_expression(form.V),
            "W": format_expression(form.W),
        }
    else:
        assert isinstance(marching.form, TabulatedProductForm)
        form = marching.form
        block["mode"] = "synthesized"
        block.pop("explicit", None)
        block["table"] = {
            "kind": "cubic-interpolated coefficients, regenerated on build",
            "nodes": int(form.nodes.size),
            "max_interp_error": form.max_interp_error,
            "excluded": [[a, b] for a, b in form.excluded],
            "u_profile": format_expression(form.u_profile),
        }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


_COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "synthesize": cmd_synthesize,
}


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return _COMMANDS[args.command](cfg, args)
    except InfeasibleConstantError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DomainError as e:
        # Runtime numeric-domain violation, not a config problem.
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except _VALIDATION_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
