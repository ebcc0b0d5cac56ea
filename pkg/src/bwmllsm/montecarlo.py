"""Seeded Monte Carlo estimation of the ordinal-violation probability.

Sampling uses the Philox4x64 counter-based generator: draw index i reads
from counter block i * 2^64 under the configured key, so any partition of
the indices across workers reproduces the same instances bit for bit.

Each of the 2n-3 free judgments is drawn independently and uniformly from
the scale — the same sample space as the exhaustive census, which is what
makes the closed-form no-detection probability q = (1 - p_viol)^K
applicable to the K-run experiment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import mpmath
import numpy as np
from numpy.random import Generator, Philox

from .census import SAATY_CENSUS_SCALE, SAATY_CENSUS_TOTAL, SAATY_CENSUS_VIOLATING, instance_from_entries
from .model import BwmError, BwmInstance, as_fraction
from .ordinal import detect_bwm_violations_exact

RNG_ALGORITHM = "Philox4x64"


class DegeneratePError(BwmError):
    """A violation probability outside (0, 1) has no detection math."""


@dataclass(frozen=True)
class McConfig:
    """Sampling plan: n alternatives, judgment scale, K samples, RNG seed."""

    n: int
    scale: Tuple[int, ...]
    k: int
    seed: int

    def __post_init__(self):
        if self.n < 3:
            raise BwmError(f"need n >= 3, got {self.n}")
        if self.k < 1:
            raise BwmError(f"need at least one sample, got k={self.k}")
        cleaned = tuple(sorted({int(v) for v in self.scale}))
        if not cleaned or any(not (1 < v <= 9) for v in cleaned):
            raise BwmError(f"scale values must be integers in (1, 9], got {self.scale}")
        object.__setattr__(self, "scale", cleaned)


@dataclass(frozen=True)
class McReport:
    config: McConfig
    violating_count: int
    tie_count: int
    estimated_probability: float
    exact_event_probability: Optional[Fraction]
    q_no_detection: float
    rng_algorithm: str = RNG_ALGORITHM


def _rng_for_index(seed: int, index: int) -> Generator:
    # one 2^64-aligned counter slab per draw index: streams never overlap
    return Generator(Philox(key=seed, counter=index << 64))


def sample_entries(config: McConfig, index: int) -> Tuple[int, ...]:
    """The canonical entry tuple of draw ``index`` (deterministic per seed)."""
    m = 2 * config.n - 3
    rng = _rng_for_index(config.seed, index)
    picks = rng.integers(0, len(config.scale), size=m)
    return tuple(config.scale[t] for t in picks)


def sample_bwm(config: McConfig, index: int = 0) -> BwmInstance:
    """Draw one random best-worst instance (best = 1, worst = n)."""
    return instance_from_entries(sample_entries(config, index), config.n)


def _bulk_strict_and_ties(entries: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised exact violation test over rows of canonical entry tuples."""
    b = entries[:, : n - 2]
    d = entries[:, n - 2]
    c = entries[:, n - 1 :]
    M = (d * b.prod(axis=1)) * (d * c.prod(axis=1))
    bn = b ** n
    cn = c ** n
    rhs = bn * M[:, None]
    lhs_w = cn * M[:, None]
    strict = (cn > rhs).any(axis=1) | (lhs_w < bn).any(axis=1)
    tie = ((cn == rhs) | (lhs_w == bn)).any(axis=1) & ~strict
    return strict, tie


def estimate_violation_probability(config: McConfig) -> McReport:
    """Run the exact strict-violation test on K seeded samples.

    When the configuration matches the fully-censused case (n = 6 over the
    scale {2..9}) the report also carries the exact event probability
    56 / 8^9 and bases the no-detection probability q on it; otherwise q
    uses the empirical estimate.
    """
    m = 2 * config.n - 3
    entries = np.empty((config.k, m), dtype=np.int64)
    for i in range(config.k):
        entries[i] = sample_entries(config, i)

    if max(config.scale) ** (3 * config.n - 2) < 2 ** 63:
        strict, tie = _bulk_strict_and_ties(entries, config.n)
        violating = int(strict.sum())
        ties = int(tie.sum())
    else:
        violating = ties = 0
        for row in entries:
            report = detect_bwm_violations_exact(instance_from_entries(tuple(row), config.n))
            if report.has_violation:
                violating += 1
            elif report.has_tie:
                ties += 1

    exact_p: Optional[Fraction] = None
    if config.n == 6 and config.scale == SAATY_CENSUS_SCALE:
        exact_p = Fraction(SAATY_CENSUS_VIOLATING, SAATY_CENSUS_TOTAL)

    p_for_q = exact_p if exact_p is not None else Fraction(violating, config.k)
    if 0 < p_for_q < 1:
        q = no_detection_probability(p_for_q, config.k)
    else:
        q = 1.0 if p_for_q == 0 else 0.0

    return McReport(
        config=config,
        violating_count=violating,
        tie_count=ties,
        estimated_probability=violating / config.k,
        exact_event_probability=exact_p,
        q_no_detection=q,
    )


def _check_p(p_viol) -> Fraction:
    p = as_fraction(p_viol) if not isinstance(p_viol, float) else Fraction(p_viol)
    if not (0 < p < 1):
        raise DegeneratePError(f"violation probability must lie in (0, 1), got {p_viol}")
    return p


def no_detection_probability(p_viol, k: int) -> float:
    """q = (1 - p_viol)^k: chance that k runs all miss the violating event."""
    p = _check_p(p_viol)
    with mpmath.workdps(50):
        q = mpmath.power(1 - mpmath.mpf(p.numerator) / p.denominator, k)
        return float(q)


def min_runs(p_viol, threshold: float = 0.5) -> int:
    """Smallest K with (1 - p_viol)^K < threshold.

    The float logarithm gives the candidate; the boundary is then verified
    by high-precision powering so the result is never off by one.
    """
    p = _check_p(p_viol)
    if not (0 < threshold < 1):
        raise DegeneratePError(f"threshold must lie in (0, 1), got {threshold}")
    with mpmath.workdps(60):
        one_minus = 1 - mpmath.mpf(p.numerator) / p.denominator
        t = mpmath.mpf(threshold)
        k = int(mpmath.ceil(mpmath.log(t) / mpmath.log(one_minus)))
        k = max(k, 1)
        while mpmath.power(one_minus, k) >= t:
            k += 1
        while k > 1 and mpmath.power(one_minus, k - 1) < t:
            k -= 1
        return k


@dataclass(frozen=True)
class DetectionMath:
    p_viol: Fraction
    k: int
    q: float
    threshold: float
    min_runs: int


def detection_math(p_viol, k: int, threshold: float = 0.5) -> DetectionMath:
    """No-detection probability for K runs plus the run count needed to
    push it below the threshold."""
    p = _check_p(p_viol)
    return DetectionMath(
        p_viol=p,
        k=k,
        q=no_detection_probability(p, k),
        threshold=threshold,
        min_runs=min_runs(p, threshold),
    )
