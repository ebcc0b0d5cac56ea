"""Exhaustive census of integer-scale best-worst matrices.

Enumerates every assignment of the 2n-3 free judgments over a finite
integer scale (best = alternative 1, worst = alternative n, without loss
of generality), counting

* matrices whose LLSM weights show a strict ordinal violation,
* matrices whose LLSM weights tie the best or worst exactly (surfaced
  separately: ties exist even on the boundary of the guarantee
  conditions, e.g. a_26 = 8 with every other judgment 2 at n = 6),
* matrices satisfying the dominance/cap condition with a fixed p, and
  with the per-matrix best p (the minimum judgment).

All violation tests are exact: the cross-multiplied integer inequalities
a_jW^n >= a_Bj^n * P_B * P_W fit in 64-bit words whenever
max(scale)^(3n-2) < 2^63, which covers the full Saaty census at n = 6;
anything bigger falls back to arbitrary-precision Python integers.

The flat enumeration index is mixed-radix over the canonical entry order
(a_B2..a_B,n-1, a_BW, a_2W..a_n-1,W), most significant digit first, so
reports are deterministic regardless of chunking, process count, or
iteration order.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .model import BwmError, BwmInstance, as_fraction, validate_bwm
from .ordinal import InvalidPError, detect_bwm_violations_exact

#: Default cap on the number of matrices an enumeration may touch.
DEFAULT_BUDGET = 8 ** 9

#: Facts of the full n = 6 census over the dominant Saaty integers {2..9},
#: reproduced exactly by enumerate_census and pinned in the acceptance tests.
SAATY_CENSUS_SCALE: Tuple[int, ...] = tuple(range(2, 10))
SAATY_CENSUS_TOTAL = 8 ** 9
SAATY_CENSUS_THEOREM1_COUNT = 7 ** 9
SAATY_CENSUS_VIOLATING = 56


class BudgetExceededError(BwmError):
    """The requested enumeration is larger than the work budget."""


@dataclass(frozen=True)
class CensusReport:
    n: int
    scale: Tuple[int, ...]
    fixed_p: Fraction
    total: int
    theorem1_fixed_p: int
    theorem1_best_p: int
    violating: int
    tie_matrices: int
    witnesses: Tuple[BwmInstance, ...]
    tie_witnesses: Tuple[BwmInstance, ...]
    wall_time: float
    engine: str

    def signature(self):
        """Everything except wall_time/engine, for determinism comparisons."""
        return (
            self.n, self.scale, self.fixed_p, self.total,
            self.theorem1_fixed_p, self.theorem1_best_p,
            self.violating, self.tie_matrices,
            tuple(w.free_entry_tuple() for w in self.witnesses),
            tuple(w.free_entry_tuple() for w in self.tie_witnesses),
        )


def _entries_from_flat(flat: int, n: int, scale: Sequence[int]) -> Tuple[int, ...]:
    m = 2 * n - 3
    s = len(scale)
    digits = []
    for k in range(m):
        digits.append(scale[(flat // s ** (m - 1 - k)) % s])
    return tuple(digits)


def instance_from_entries(entries: Sequence, n: int) -> BwmInstance:
    """Build the census instance (best = 1, worst = n) from the canonical entry order."""
    middle = list(range(2, n))
    bto = {j: entries[t] for t, j in enumerate(middle)}
    d = entries[n - 2]
    otw = {j: entries[n - 1 + t] for t, j in enumerate(middle)}
    return validate_bwm(n=n, best=1, worst=n, best_to_others=bto,
                       others_to_worst=otw, best_to_worst=d)


def _int64_safe(n: int, scale: Sequence[int]) -> bool:
    return max(scale) ** (3 * n - 2) < 2 ** 63


def _census_worker(args) -> Dict:
    """Scan a contiguous range of chunks; exact int64 arithmetic throughout."""
    n, scale, p_num, p_den, lo_chunk, hi_chunk, l = args
    s = len(scale)
    m = 2 * n - 3
    h = m - l
    rows = s ** l
    scale_arr = np.array(scale, dtype=np.int64)
    pow_n = scale_arr ** n

    ar = np.arange(rows, dtype=np.int64)
    low_vals: List[np.ndarray] = []
    low_pows: List[np.ndarray] = []
    for k2 in range(l):
        idx = (ar // (s ** (l - 1 - k2))) % s
        low_vals.append(scale_arr[idx])
        low_pows.append(pow_n[idx])

    def col_val(k: int, high: Tuple[int, ...]):
        return high[k] if k < h else low_vals[k - h]

    def col_pow(k: int, high: Tuple[int, ...]):
        return int(high[k]) ** n if k < h else low_pows[k - h]

    b_cols = list(range(0, n - 2))
    d_col = n - 2
    c_cols = list(range(n - 1, m))

    p3_num, p3_den = p_num ** 3, p_den ** 3
    counts = {"violating": 0, "ties": 0, "t1_fixed": 0, "t1_best": 0}
    viol_idx: List[np.ndarray] = []
    tie_idx: List[np.ndarray] = []

    for q in range(lo_chunk, hi_chunk):
        high = tuple(scale[(q // s ** (h - 1 - k)) % s] for k in range(h))

        prod_b = np.int64(1)
        for k in b_cols:
            prod_b = prod_b * col_val(k, high)
        prod_c = np.int64(1)
        for k in c_cols:
            prod_c = prod_c * col_val(k, high)
        d = col_val(d_col, high)
        M = (d * prod_b) * (d * prod_c)

        strict = np.zeros(rows, dtype=bool)
        tie = np.zeros(rows, dtype=bool)
        for t in range(n - 2):
            bn = col_pow(b_cols[t], high)
            cn = col_pow(c_cols[t], high)
            rhs = bn * M
            strict |= cn > rhs
            tie |= cn == rhs
            lhs_w = cn * M
            strict |= lhs_w < bn
            tie |= lhs_w == bn
        tie &= ~strict

        mx = np.int64(0)
        mn = np.int64(2 ** 62)
        for k in range(m):
            v = col_val(k, high)
            mx = np.maximum(mx, v)
            mn = np.minimum(mn, v)

        t1_fixed = (mn * p_den >= p_num) & (mx * p3_den <= p3_num)
        t1_best = (mn > 1) & (mx <= mn ** 3)

        counts["violating"] += int(np.count_nonzero(strict))
        counts["ties"] += int(np.count_nonzero(tie))
        counts["t1_fixed"] += int(np.count_nonzero(t1_fixed))
        counts["t1_best"] += int(np.count_nonzero(t1_best))

        base = q * rows
        if strict.any():
            viol_idx.append(base + ar[strict])
        if tie.any():
            tie_idx.append(base + ar[tie])

    empty = np.empty(0, dtype=np.int64)
    counts["viol_idx"] = np.concatenate(viol_idx) if viol_idx else empty
    counts["tie_idx"] = np.concatenate(tie_idx) if tie_idx else empty
    return counts


def _census_vector(n, scale, fixed_p, jobs, chunk_target):
    m = 2 * n - 3
    s = len(scale)
    # low digits kept as precomputed arrays of about chunk_target rows
    l = 1
    while l < m and s ** (l + 1) <= chunk_target:
        l += 1
    num_chunks = s ** (m - l)

    if jobs is None:
        jobs = os.cpu_count() or 1
    jobs = max(1, min(jobs, num_chunks))

    bounds = [round(i * num_chunks / jobs) for i in range(jobs + 1)]
    tasks = [
        (n, tuple(scale), fixed_p.numerator, fixed_p.denominator, lo, hi, l)
        for lo, hi in zip(bounds, bounds[1:])
        if hi > lo
    ]

    if len(tasks) == 1:
        results = [_census_worker(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_census_worker, tasks))

    counts = {"violating": 0, "ties": 0, "t1_fixed": 0, "t1_best": 0}
    viol_idx, tie_idx = [], []
    for res in results:
        for key in counts:
            counts[key] += res[key]
        viol_idx.append(res["viol_idx"])
        tie_idx.append(res["tie_idx"])
    return counts, np.concatenate(viol_idx), np.concatenate(tie_idx)


def _census_exact(n, scale, fixed_p):
    """Arbitrary-precision reference enumeration (small spaces only)."""
    m = 2 * n - 3
    p3 = fixed_p ** 3
    counts = {"violating": 0, "ties": 0, "t1_fixed": 0, "t1_best": 0}
    viol_idx, tie_idx = [], []
    for flat, entries in enumerate(itertools.product(scale, repeat=m)):
        inst = instance_from_entries(entries, n)
        report = detect_bwm_violations_exact(inst)
        if report.has_violation:
            counts["violating"] += 1
            viol_idx.append(flat)
        elif report.has_tie:
            counts["ties"] += 1
            tie_idx.append(flat)
        values = [as_fraction(v) for v in entries]
        mn, mx = min(values), max(values)
        if mn >= fixed_p and mx <= p3:
            counts["t1_fixed"] += 1
        if mn > 1 and mx <= mn ** 3:
            counts["t1_best"] += 1
    return counts, np.array(viol_idx, dtype=np.int64), np.array(tie_idx, dtype=np.int64)


def enumerate_census(
    n: int,
    scale: Sequence[int],
    fixed_p: Fraction = Fraction(2),
    jobs: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    chunk_target: int = 1 << 18,
    engine: str = "auto",
) -> CensusReport:
    """Enumerate every matrix over the scale and count violations exactly.

    Args:
        n: number of alternatives (>= 3).
        scale: distinct integer judgments, each in (1, 9].
        fixed_p: the uniform lower bound used for the fixed-p condition
            count (the per-matrix best p is counted as well).
        jobs: worker processes; counts and witness order do not depend on it.
        budget: refuse enumerations with more than this many matrices.
        engine: "vector" (int64 numpy), "exact" (bigint reference), or
            "auto" to pick by size and overflow safety.

    Raises:
        BudgetExceededError: |scale|^(2n-3) exceeds the budget.
        InvalidPError: fixed_p <= 1.
    """
    if n < 3:
        raise BwmError(f"census needs n >= 3, got {n}")
    fixed_p = as_fraction(fixed_p)
    if fixed_p <= 1:
        raise InvalidPError(f"fixed p must exceed 1, got {fixed_p}")
    cleaned = sorted({int(v) for v in scale})
    if not cleaned:
        raise BwmError("scale must be non-empty")
    if any(not (1 < v <= 9) for v in cleaned):
        raise BwmError(f"scale values must be integers in (1, 9], got {cleaned}")
    if len(cleaned) != len(list(scale)):
        raise BwmError("scale values must be distinct")

    m = 2 * n - 3
    total = len(cleaned) ** m
    if total > budget:
        raise BudgetExceededError(
            f"{len(cleaned)}^{m} = {total} matrices exceeds the budget of {budget}"
        )

    if engine == "auto":
        engine = "vector" if _int64_safe(n, cleaned) and total > 4096 else "exact"
    if engine == "vector" and not _int64_safe(n, cleaned):
        raise BwmError(
            f"vector engine unsafe: max(scale)^(3n-2) = {max(cleaned)}^{3*n-2} overflows int64"
        )

    t0 = time.perf_counter()
    if engine == "vector":
        counts, viol_idx, tie_idx = _census_vector(n, cleaned, fixed_p, jobs, chunk_target)
    elif engine == "exact":
        counts, viol_idx, tie_idx = _census_exact(n, cleaned, fixed_p)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    wall = time.perf_counter() - t0

    witnesses = tuple(
        instance_from_entries(_entries_from_flat(int(f), n, cleaned), n) for f in viol_idx
    )
    tie_witnesses = tuple(
        instance_from_entries(_entries_from_flat(int(f), n, cleaned), n) for f in tie_idx
    )
    return CensusReport(
        n=n,
        scale=tuple(cleaned),
        fixed_p=fixed_p,
        total=total,
        theorem1_fixed_p=counts["t1_fixed"],
        theorem1_best_p=counts["t1_best"],
        violating=counts["violating"],
        tie_matrices=counts["ties"],
        witnesses=witnesses,
        tie_witnesses=tie_witnesses,
        wall_time=wall,
        engine=engine,
    )


def saaty_census_witness_family() -> Tuple[BwmInstance, ...]:
    """The 56 violating matrices of the full n = 6 Saaty census, built analytically.

    For each middle alternative i: the base matrix has a_1i = 2, a_i6 = 9
    and every other judgment 2; from the six non-spoiler middle judgments
    at most one may be raised to 3 while alternative i still overtakes the
    best.  That gives 4 * (1 + 6) = 28 matrices where the best loses, and
    mirroring the best row with the worst column gives the 28 where the
    worst wins.
    """
    n = 6
    middles = list(range(2, n))
    out = []
    for i_pos in range(len(middles)):
        base_b = [2] * len(middles)
        base_c = [2] * len(middles)
        base_c[i_pos] = 9
        variants = [(tuple(base_b), 2, tuple(base_c))]
        for k in range(len(middles)):
            if k == i_pos:
                continue
            bb = list(base_b)
            bb[k] = 3
            variants.append((tuple(bb), 2, tuple(base_c)))
            cc = list(base_c)
            cc[k] = 3
            variants.append((tuple(base_b), 2, tuple(cc)))
        for b, d, c in variants:
            out.append(instance_from_entries(b + (d,) + c, n))
            out.append(instance_from_entries(c + (d,) + b, n))  # mirror: worst wins
    out.sort(key=lambda inst: inst.free_entry_tuple())
    return tuple(out)


def saaty_census_tie_family() -> Tuple[BwmInstance, ...]:
    """The 8 exact-tie matrices of the full n = 6 Saaty census.

    a_1i = 2 with a_i6 = 8 and every other judgment 2 makes y_i = y_1
    exactly (these sit on the Theorem 1 boundary: max = 8 = p^3); the
    mirrored four tie the worst instead.
    """
    n = 6
    middles = list(range(2, n))
    out = []
    for i_pos in range(len(middles)):
        b = [2] * len(middles)
        c = [2] * len(middles)
        c[i_pos] = 8
        out.append(instance_from_entries(tuple(b) + (2,) + tuple(c), n))
        out.append(instance_from_entries(tuple(c) + (2,) + tuple(b), n))
    out.sort(key=lambda inst: inst.free_entry_tuple())
    return tuple(out)
