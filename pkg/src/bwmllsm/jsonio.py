"""Canonical JSON for instances, weights, reports, and diagnoses.

All rationals travel as strings ("2", "9/4") to preserve exactness; all
floats are rendered with 12 significant digits; keys are sorted and
separators compact, so two equal results serialise to identical bytes.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional

import numpy as np

from .census import CensusReport
from .llsm import PriorityVector, solve_llsm_bwm_closed_form
from .model import BwmError, BwmInstance, format_fraction, validate_bwm
from .montecarlo import McReport
from .ordinal import (
    ConditionDiagnosis,
    ViolationReport,
    detect_bwm_violations_exact,
    diagnose,
)


def _render(obj: Any) -> str:
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, Fraction):
        return json.dumps(format_fraction(obj))
    if isinstance(obj, (np.integer, int)):
        return str(int(obj))
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if not math.isfinite(x):
            raise BwmError(f"cannot serialise non-finite number {x}")
        return format(x, ".12g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _render(list(obj))
    if isinstance(obj, Mapping):
        items = sorted(((str(k), v) for k, v in obj.items()), key=lambda kv: kv[0])
        body = ",".join(f"{json.dumps(k)}:{_render(v)}" for k, v in items)
        return "{" + body + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_render(v) for v in obj) + "]"
    raise BwmError(f"cannot serialise {type(obj).__name__} canonically")


def canonical_json(obj: Any) -> str:
    """Compact JSON with sorted keys and 12-significant-digit floats."""
    return _render(obj)


def instance_to_dict(inst: BwmInstance) -> Dict[str, Any]:
    return {
        "n": inst.n,
        "best": inst.best,
        "worst": inst.worst,
        "best_to_others": {str(j): format_fraction(v) for j, v in inst.best_to_others.items()},
        "best_to_worst": format_fraction(inst.best_to_worst),
        "others_to_worst": {str(j): format_fraction(v) for j, v in inst.others_to_worst.items()},
    }


def instance_from_dict(data: Mapping[str, Any]) -> BwmInstance:
    """Parse and validate the BwmInstance JSON schema."""
    try:
        n = int(data["n"])
        best = int(data["best"])
        worst = int(data["worst"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BwmError(f"instance JSON needs integer n/best/worst: {exc}") from exc
    bto = data.get("best_to_others", {})
    otw = data.get("others_to_worst", {})
    if not isinstance(bto, Mapping) or not isinstance(otw, Mapping):
        raise BwmError("best_to_others/others_to_worst must be JSON objects")
    return validate_bwm(
        n=n,
        best=best,
        worst=worst,
        best_to_others=bto,
        others_to_worst=otw,
        best_to_worst=data.get("best_to_worst"),
    )


def weights_to_dict(pv: PriorityVector) -> Dict[str, Any]:
    return {
        "y": [float(v) for v in pv.y],
        "w_sum": [float(v) for v in pv.w_sum],
        "w_prod": [float(v) for v in pv.w_prod],
    }


def violations_to_dict(report: ViolationReport) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "count": len(report.strict),
        "tie_count": len(report.ties),
        "exact": report.exact,
        "items": [
            {"i": v.i, "j": v.j, "value": format_fraction(v.value), "tie": v.tie}
            for v in report.violations
        ],
    }
    if report.bwm_summary is not None:
        out["bwm"] = {
            str(j): {
                "ge_best": f.ge_best,
                "tie_best": f.tie_best,
                "le_worst": f.le_worst,
                "tie_worst": f.tie_worst,
            }
            for j, f in report.bwm_summary.items()
        }
    return out


def diagnosis_to_dict(diag: ConditionDiagnosis) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "p": format_fraction(diag.p),
        "p_mode": diag.p_mode,
        "max_entry": format_fraction(diag.max_entry),
    }
    if diag.theorem1 is not None:
        out["theorem1"] = {
            "bound": format_fraction(diag.theorem1.bound),
            "pass": diag.theorem1.passed,
            "margin": diag.theorem1.margin,
        }
    if diag.theorem2 is not None:
        out["theorem2"] = {
            "bound": diag.theorem2.bound,
            "pass": diag.theorem2.passed,
            "bw_maximal": diag.bw_maximal,
            "margin": diag.theorem2.margin,
        }
    if diag.corollary2 is not None:
        out["corollary2"] = {"pass": diag.corollary2.passed}
        if diag.corollary2.reason:
            out["corollary2"]["reason"] = diag.corollary2.reason
    for name, check in (("theorem1", diag.theorem1), ("theorem2", diag.theorem2)):
        if check is not None and check.reason:
            out[name]["reason"] = check.reason
    return out


def solve_result(inst: BwmInstance, p: Optional[Fraction] = None) -> Dict[str, Any]:
    """The full solve payload: weights, violations, diagnosis, verdict.

    This single dict is what the CLI prints and what the session API
    stores, so both surfaces agree byte for byte under canonical_json.
    """
    pv = solve_llsm_bwm_closed_form(inst)
    report = detect_bwm_violations_exact(inst)
    diag = diagnose(inst, p=p)
    return {
        "instance": instance_to_dict(inst),
        "weights": weights_to_dict(pv),
        "violations": violations_to_dict(report),
        "diagnosis": diagnosis_to_dict(diag),
        "needs_reexamination": report.has_violation,
        "offending": list(report.offending_alternatives()),
    }


def census_report_to_dict(report: CensusReport, include_witnesses: bool = False) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "n": report.n,
        "scale": list(report.scale),
        "fixed_p": format_fraction(report.fixed_p),
        "total": report.total,
        "theorem1_fixed_p": report.theorem1_fixed_p,
        "theorem1_best_p": report.theorem1_best_p,
        "violating": report.violating,
        "tie_matrices": report.tie_matrices,
        "wall_time": report.wall_time,
        "engine": report.engine,
    }
    if include_witnesses:
        out["witnesses"] = [instance_to_dict(w) for w in report.witnesses]
        out["tie_witnesses"] = [instance_to_dict(w) for w in report.tie_witnesses]
    return out


def mc_report_to_dict(report: McReport) -> Dict[str, Any]:
    exact = report.exact_event_probability
    return {
        "n": report.config.n,
        "scale": list(report.config.scale),
        "k": report.config.k,
        "seed": report.config.seed,
        "rng": report.rng_algorithm,
        "violating_count": report.violating_count,
        "tie_count": report.tie_count,
        "estimated_probability": report.estimated_probability,
        "exact_event_probability": None if exact is None else format_fraction(exact),
        "exact_event_probability_float": None if exact is None else float(exact),
        "q_no_detection": report.q_no_detection,
    }
