"""Ordinal-violation detection and the sufficient-condition checkers.

A priority vector violates a judgment a_ij > 1 when w_i <= w_j.  The
strict part (w_i < w_j, the order actually flips) is what the guarantee
theorems rule out; exact ties (w_i = w_j) are possible even under the
theorems' premises at boundary instances, so reports keep the two cases
apart: ``violations`` lists every offending pair with a ``tie`` flag, and
``has_violation`` / ``strict`` expose the strict subset that drives the
census counts and the re-examination verdicts.

For best-worst matrices the comparisons y_j >= y_B and y_j <= y_W reduce
to integer (cross-multiplied) inequalities, so detection is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .llsm import PriorityVector
from .model import (
    BwmError,
    BwmInstance,
    IncompletePcm,
    on_scale,
)

#: Relative tolerance for the one non-exact comparison in this module
#: (the irrational Theorem 2 bound).
BOUND_RTOL = 1e-12


class LengthMismatchError(BwmError):
    """Priority vector length differs from the matrix size."""


class InvalidPError(BwmError):
    """The uniform lower bound p must exceed 1."""


class TooSmallNError(BwmError):
    """Theorem 2's exponent 4/(n-3) needs n >= 4."""


@dataclass(frozen=True)
class Violation:
    """One offending pair: a_ij > 1 while w_i <= w_j (tie marks w_i = w_j)."""

    i: int
    j: int
    value: Fraction
    tie: bool = False


@dataclass(frozen=True)
class MiddleFlags:
    """Position of a middle alternative's weight relative to best and worst."""

    ge_best: bool
    tie_best: bool
    le_worst: bool
    tie_worst: bool


@dataclass(frozen=True)
class ViolationReport:
    violations: Tuple[Violation, ...]
    exact: bool
    bwm_summary: Optional[Dict[int, MiddleFlags]] = None

    @property
    def strict(self) -> Tuple[Violation, ...]:
        return tuple(v for v in self.violations if not v.tie)

    @property
    def ties(self) -> Tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.tie)

    @property
    def has_violation(self) -> bool:
        """True iff some weight ordering strictly contradicts a judgment."""
        return any(not v.tie for v in self.violations)

    @property
    def has_tie(self) -> bool:
        return any(v.tie for v in self.violations)

    def offending_alternatives(self) -> Tuple[int, ...]:
        """Alternatives involved in a strict violation.

        For best-worst reports these are the middle alternatives whose
        weight strictly beats the best or loses to the worst; for general
        matrices, both ends of each violated pair.
        """
        if self.bwm_summary is not None:
            return tuple(
                sorted(
                    j
                    for j, f in self.bwm_summary.items()
                    if (f.ge_best and not f.tie_best) or (f.le_worst and not f.tie_worst)
                )
            )
        out = set()
        for v in self.strict:
            out.update((v.i, v.j))
        return tuple(sorted(out))


def detect_violations(pcm: IncompletePcm, pv: PriorityVector) -> ViolationReport:
    """List every known pair with a_ij > 1 and w_i <= w_j (floating compare).

    Comparisons use the log-weights directly with zero tolerance; exact
    ties in float arithmetic are flagged rather than dropped.

    Raises:
        LengthMismatchError: pv has the wrong length.
    """
    if pv.n != pcm.n:
        raise LengthMismatchError(f"priority vector has {pv.n} entries, matrix is {pcm.n}x{pcm.n}")
    y = pv.y
    found = []
    for i, j, v in sorted(pcm.known_pairs()):
        if v > 1 and y[i - 1] <= y[j - 1]:
            found.append(Violation(i=i, j=j, value=v, tie=bool(y[i - 1] == y[j - 1])))
    return ViolationReport(violations=tuple(found), exact=False)


def _bwm_products(inst: BwmInstance):
    """P_B (best row product) and P_W (worst column product), exact."""
    p_b = Fraction(1)
    for j in range(1, inst.n + 1):
        if j != inst.best:
            p_b *= inst.a_best(j)
    p_w = Fraction(1)
    for j in range(1, inst.n + 1):
        if j != inst.worst:
            p_w *= inst.a_to_worst(j)
    return p_b, p_w


def detect_bwm_violations_exact(inst: BwmInstance) -> ViolationReport:
    """Exact ordinal check of the LLSM weights of a best-worst matrix.

    For each middle alternative j, the closed form turns y_j >= y_B into
    a_jW^n >= a_Bj^n * P_B * P_W and y_j <= y_W into the mirror
    inequality, evaluated in exact rational (integer, after clearing
    denominators) arithmetic.  No weights are ever computed in floating
    point.
    """
    entries = inst.dominant_entries()
    if all(v.denominator == 1 for v in entries):
        # integer judgments: plain bigint arithmetic is much faster
        p_b = p_w = 1
        for j in range(1, inst.n + 1):
            if j != inst.best:
                p_b *= inst.a_best(j).numerator
            if j != inst.worst:
                p_w *= inst.a_to_worst(j).numerator
        def key(j):
            return inst.a_best(j).numerator, inst.a_to_worst(j).numerator
    else:
        p_b, p_w = _bwm_products(inst)
        def key(j):
            return inst.a_best(j), inst.a_to_worst(j)

    n = inst.n
    m = p_b * p_w
    found = []
    summary: Dict[int, MiddleFlags] = {}
    for j in inst.middle:
        b, c = key(j)
        lhs = c ** n
        rhs = (b ** n) * m
        ge_best = lhs >= rhs
        tie_best = lhs == rhs
        lhs_w = lhs * m
        rhs_w = b ** n
        le_worst = lhs_w <= rhs_w
        tie_worst = lhs_w == rhs_w
        summary[j] = MiddleFlags(
            ge_best=bool(ge_best), tie_best=bool(tie_best),
            le_worst=bool(le_worst), tie_worst=bool(tie_worst),
        )
        if ge_best:
            found.append(Violation(i=inst.best, j=j, value=inst.a_best(j), tie=bool(tie_best)))
        if le_worst:
            found.append(Violation(i=j, j=inst.worst, value=inst.a_to_worst(j), tie=bool(tie_worst)))
    return ViolationReport(violations=tuple(found), exact=True, bwm_summary=summary)


def derive_p(inst: BwmInstance) -> Fraction:
    """Largest usable uniform dominance bound: the minimum stored judgment."""
    return min(inst.dominant_entries())


@dataclass(frozen=True)
class TheoremCheck:
    """Outcome of one sufficient condition."""

    passed: bool
    bound: Optional[object] = None  # Fraction (theorem 1) or float (theorem 2)
    margin: Optional[float] = None  # float(bound) - float(max_entry)
    reason: Optional[str] = None


@dataclass(frozen=True)
class ConditionDiagnosis:
    """Everything a caller needs to explain which guarantee applies."""

    p: Fraction
    p_mode: str  # "given" | "derived-min"
    max_entry: Fraction
    bw_maximal: bool
    theorem1: Optional[TheoremCheck] = None
    theorem2: Optional[TheoremCheck] = None
    corollary2: Optional[TheoremCheck] = None

    @property
    def any_guarantee(self) -> bool:
        return any(
            c is not None and c.passed for c in (self.theorem1, self.theorem2, self.corollary2)
        )


def _base_facts(inst: BwmInstance, p: Fraction, p_mode: str) -> ConditionDiagnosis:
    entries = inst.dominant_entries()
    return ConditionDiagnosis(
        p=p,
        p_mode=p_mode,
        max_entry=max(entries),
        bw_maximal=all(v <= inst.best_to_worst for v in entries),
    )


def _lower_bounds_hold(inst: BwmInstance, p: Fraction) -> bool:
    return all(v >= p for v in inst.dominant_entries())


def check_theorem1(inst: BwmInstance, p: Fraction) -> ConditionDiagnosis:
    """Dominance >= p everywhere and max entry <= p^3 (exact comparison).

    A pass guarantees the LLSM weights contain no strict ordinal violation.

    Raises:
        InvalidPError: p <= 1.
    """
    p = Fraction(p)
    if p <= 1:
        raise InvalidPError(f"uniform lower bound must exceed 1, got {p}")
    base = _base_facts(inst, p, "given")
    bound = p ** 3
    lower = _lower_bounds_hold(inst, p)
    passed = lower and base.max_entry <= bound
    reason = None
    if not lower:
        reason = f"some judgment is below p = {p}"
    elif not passed:
        reason = f"max judgment {base.max_entry} exceeds p^3 = {bound}"
    check = TheoremCheck(
        passed=passed,
        bound=bound,
        margin=float(bound) - float(base.max_entry),
        reason=reason,
    )
    return ConditionDiagnosis(
        p=base.p, p_mode=base.p_mode, max_entry=base.max_entry,
        bw_maximal=base.bw_maximal, theorem1=check,
    )


def theorem2_bound(p: Fraction, n: int) -> float:
    """p^(4/(n-3) + 3), the (generally irrational) Theorem 2 cap."""
    if n <= 3:
        raise TooSmallNError(f"theorem 2 bound needs n >= 4, got n={n}")
    return float(p) ** (4.0 / (n - 3) + 3.0)


def check_theorem2(inst: BwmInstance, p: Fraction) -> ConditionDiagnosis:
    """Theorem 1's lower bounds, a maximal best-vs-worst cell, and the
    relaxed cap p^(4/(n-3) + 3).

    The cap is irrational in general; its comparison is the one floating
    check in this module, taken at 1e-12 relative tolerance.

    Raises:
        InvalidPError: p <= 1.
        TooSmallNError: n <= 3 (the exponent is undefined).
    """
    p = Fraction(p)
    if p <= 1:
        raise InvalidPError(f"uniform lower bound must exceed 1, got {p}")
    if inst.n <= 3:
        raise TooSmallNError(f"theorem 2 requires n >= 4, got n={inst.n}")
    base = _base_facts(inst, p, "given")
    bound = theorem2_bound(p, inst.n)
    lower = _lower_bounds_hold(inst, p)
    within = float(base.max_entry) <= bound * (1.0 + BOUND_RTOL)
    passed = lower and base.bw_maximal and within
    reason = None
    if not lower:
        reason = f"some judgment is below p = {p}"
    elif not base.bw_maximal:
        reason = "best-vs-worst cell is not the maximal judgment"
    elif not within:
        reason = f"max judgment {base.max_entry} exceeds p^(4/(n-3)+3) = {bound:.6g}"
    check = TheoremCheck(
        passed=passed,
        bound=bound,
        margin=bound - float(base.max_entry),
        reason=reason,
    )
    return ConditionDiagnosis(
        p=base.p, p_mode=base.p_mode, max_entry=base.max_entry,
        bw_maximal=base.bw_maximal, theorem2=check,
    )


def check_corollary2(inst: BwmInstance) -> ConditionDiagnosis:
    """Saaty-scale instances: guarantee holds whenever 2^(4/(n-3)+3) > 9.

    Integer judgments above 1 put p = 2, and the Theorem 2 cap beats the
    scale maximum 9 exactly when n <= 26.  Needs the best-vs-worst cell
    maximal and n >= 4 (Theorem 2 machinery).
    """
    p = Fraction(2)
    base = _base_facts(inst, p, "given")
    entries = inst.dominant_entries()
    scale_ok = all(on_scale(v) and v >= 2 for v in entries)
    reason = None
    if inst.n <= 3:
        passed = False
        reason = "n must be at least 4"
        bound = None
    else:
        bound = theorem2_bound(p, inst.n)
        passed = scale_ok and base.bw_maximal and inst.n <= 26
        if not scale_ok:
            reason = "judgments must be Saaty-scale integers >= 2"
        elif not base.bw_maximal:
            reason = "best-vs-worst cell is not the maximal judgment"
        elif inst.n > 26:
            reason = f"n = {inst.n} exceeds 26 (2^(4/(n-3)+3) <= 9)"
    check = TheoremCheck(
        passed=passed,
        bound=bound,
        margin=None if bound is None else bound - float(base.max_entry),
        reason=reason,
    )
    return ConditionDiagnosis(
        p=base.p, p_mode=base.p_mode, max_entry=base.max_entry,
        bw_maximal=base.bw_maximal, corollary2=check,
    )


def diagnose(inst: BwmInstance, p: Optional[Fraction] = None) -> ConditionDiagnosis:
    """Run all three checkers with one p (explicit, or the derived minimum)."""
    if p is None:
        p_val = derive_p(inst)
        p_mode = "derived-min"
    else:
        p_val = Fraction(p)
        p_mode = "given"
        if p_val <= 1:
            raise InvalidPError(f"uniform lower bound must exceed 1, got {p_val}")
    t1 = check_theorem1(inst, p_val)
    if inst.n >= 4:
        t2 = check_theorem2(inst, p_val).theorem2
    else:
        t2 = TheoremCheck(passed=False, bound=None, margin=None,
                          reason="n must be at least 4")
    c2 = check_corollary2(inst).corollary2
    return ConditionDiagnosis(
        p=p_val, p_mode=p_mode, max_entry=t1.max_entry,
        bw_maximal=t1.bw_maximal, theorem1=t1.theorem1, theorem2=t2, corollary2=c2,
    )
