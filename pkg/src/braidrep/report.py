"""Report construction, serialization, and strict read-back validation."""

from __future__ import annotations

import json
import math
from fractions import Fraction

from . import __version__
from .fixedpoints import DEGENERATE, LambdaResult, SolverConfig
from .laurent import LaurentPoly
from .markov import MarkovAudit
from .pillowcase import (
    GammaCurves,
    PillowPoint,
    TorusLift,
    format_pi_multiple,
)

SCHEMA_VERSION = 1

LAMBDA_UNDEFINED = "undefined(degenerate)"


class ReportError(ValueError):
    """A report that does not match the schema."""


def angle_block(exact: Fraction | None, radians: float | None = None) -> dict:
    """Serialize an angle: exact rational multiple of pi when available."""
    if exact is not None:
        exact = Fraction(exact)
        return {
            "value": format_pi_multiple(exact),
            "radians": math.pi * float(exact),
            "exactness": "exact",
        }
    return {"value": radians, "radians": radians, "exactness": "approx"}


def solver_config_block(cfg: SolverConfig) -> dict:
    return {
        "seeds": cfg.seeds,
        "max_iters": cfg.max_iters,
        "residual_tol": cfg.residual_tol,
        "dedup_tol": cfg.dedup_tol,
        "fd_step": cfg.fd_step,
        "rng_seed": cfg.rng_seed,
    }


def alexander_block(poly: LaurentPoly) -> dict:
    items = poly.items()
    lo = items[0][0]
    hi = items[-1][0]
    coeffs = [int(poly.coefficient(e)) for e in range(lo, hi + 1)]
    return {"min_exp": lo, "coeffs": coeffs}


def lambda_block(result: LambdaResult):
    if result.lam is None:
        return LAMBDA_UNDEFINED
    return result.lam


def classes_block(result: LambdaResult) -> list[dict]:
    out = []
    for rec in result.records:
        out.append(
            {
                "fingerprint": [float(x) for x in rec.fingerprint],
                "index": rec.index if rec.index == DEGENERATE else int(rec.index),
                "residual": float(rec.residual),
            }
        )
    return out


def audit_block(audit: MarkovAudit) -> dict:
    return {
        "move": audit.move,
        "lambda_before": audit.lambda_before if audit.lambda_before is not None else LAMBDA_UNDEFINED,
        "lambda_after": audit.lambda_after if audit.lambda_after is not None else LAMBDA_UNDEFINED,
        "matched_classes": audit.matched_classes,
        "max_transport_distance": audit.max_transport_distance,
        "passed": audit.passed,
        "reason": audit.reason,
    }


def pillowcase_block(
    curves: GammaCurves,
    points: list[PillowPoint],
    lift: TorusLift,
) -> dict:
    return {
        "q": curves.q,
        "id_curve": curves.id_curve,
        "beta_curve": curves.beta_curve,
        "degenerate_overlap": curves.degenerate_overlap,
        "classes": [
            {
                "alpha": angle_block(p.alpha),
                "theta": angle_block(p.theta),
                "tag": p.tag,
            }
            for p in points
        ],
        "torus_lift": {
            "L": [list(row) for row in lift.L],
            "shift": [angle_block(s) for s in lift.shift],
            "det_i_minus_l": lift.det_i_minus_l(),
            "caveat": lift.caveat,
        },
    }


_TOP_KEYS = {
    "schema_version",
    "tool_version",
    "braid",
    "strands",
    "is_knot",
    "rng_seed",
    "solver_config",
    "classes",
    "lambda",
    "nielsen_bracket",
    "signature",
    "determinant",
    "alexander",
    "markov_audits",
    "pillowcase",
}
_REQUIRED_KEYS = {
    "schema_version",
    "tool_version",
    "braid",
    "strands",
    "is_knot",
    "rng_seed",
    "solver_config",
}
_SOLVER_KEYS = {"seeds", "max_iters", "residual_tol", "dedup_tol", "fd_step", "rng_seed"}
_CLASS_KEYS = {"fingerprint", "index", "residual"}
_ALEXANDER_KEYS = {"min_exp", "coeffs"}
_AUDIT_KEYS = {
    "move",
    "lambda_before",
    "lambda_after",
    "matched_classes",
    "max_transport_distance",
    "passed",
    "reason",
}
_ANGLE_KEYS = {"value", "radians", "exactness"}
_PILLOW_KEYS = {"q", "id_curve", "beta_curve", "degenerate_overlap", "classes", "torus_lift"}
_PILLOW_CLASS_KEYS = {"alpha", "theta", "tag"}
_LIFT_KEYS = {"L", "shift", "det_i_minus_l", "caveat"}


def _check_keys(obj: dict, allowed: set, required: set, where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ReportError(f"unknown field(s) {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise ReportError(f"missing field(s) {sorted(missing)} in {where}")


def dump_report(report: dict) -> str:
    """Deterministic serialization: fixed field order, two-space indent."""
    return json.dumps(report, indent=2, ensure_ascii=True)


def load_report(text: str) -> dict:
    """Parse and validate a report; unknown fields are rejected."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ReportError(f"not valid JSON: {err}") from None
    if not isinstance(obj, dict):
        raise ReportError("report must be a JSON object")
    _check_keys(obj, _TOP_KEYS, _REQUIRED_KEYS, "report")
    if obj["schema_version"] != SCHEMA_VERSION:
        raise ReportError(f"unsupported schema_version {obj['schema_version']!r}")
    _check_keys(obj["solver_config"], _SOLVER_KEYS, _SOLVER_KEYS, "solver_config")
    for i, cls in enumerate(obj.get("classes", [])):
        _check_keys(cls, _CLASS_KEYS, _CLASS_KEYS, f"classes[{i}]")
    if "alexander" in obj:
        _check_keys(obj["alexander"], _ALEXANDER_KEYS, _ALEXANDER_KEYS, "alexander")
    for i, audit in enumerate(obj.get("markov_audits", [])):
        _check_keys(audit, _AUDIT_KEYS, _AUDIT_KEYS, f"markov_audits[{i}]")
    if "pillowcase" in obj:
        pc = obj["pillowcase"]
        _check_keys(pc, _PILLOW_KEYS, _PILLOW_KEYS, "pillowcase")
        for i, cls in enumerate(pc["classes"]):
            _check_keys(cls, _PILLOW_CLASS_KEYS, _PILLOW_CLASS_KEYS, f"pillowcase.classes[{i}]")
            _check_keys(cls["alpha"], _ANGLE_KEYS, _ANGLE_KEYS, "pillowcase angle")
            _check_keys(cls["theta"], _ANGLE_KEYS, _ANGLE_KEYS, "pillowcase angle")
        _check_keys(pc["torus_lift"], _LIFT_KEYS, _LIFT_KEYS, "torus_lift")
    return obj


def base_report(braid_text: str, strands: int, is_knot: bool, cfg: SolverConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "braid": braid_text,
        "strands": strands,
        "is_knot": is_knot,
        "rng_seed": cfg.rng_seed,
        "solver_config": solver_config_block(cfg),
    }
