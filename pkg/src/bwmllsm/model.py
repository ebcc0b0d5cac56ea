"""Exact data model for best-worst method matrices.

Comparison judgments are stored as :class:`fractions.Fraction` so that
reciprocity, dominance checks and the combinatorial census are bit-exact.
Floating-point views are derived on demand by the solver layer.

Alternative indices are 1-based everywhere a user sees them (JSON, CLI,
error messages); internal containers keep the same 1-based keys to avoid
off-by-one translations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple, Union

RationalLike = Union[int, str, Fraction]

#: Judgments recommended by Saaty: {1/9, 1/8, ..., 1/2, 1, 2, ..., 9}.
SAATY_SCALE: Tuple[Fraction, ...] = tuple(
    sorted([Fraction(1, k) for k in range(2, 10)] + [Fraction(k) for k in range(1, 10)])
)

SCALE_MIN = Fraction(1, 9)
SCALE_MAX = Fraction(9)


class BwmError(Exception):
    """Base class for all errors raised by this package."""


class OutOfScaleError(BwmError):
    """A comparison value lies outside [1/9, 9] or is not positive."""


class NotDominantError(BwmError):
    """A best-row or worst-column entry is <= 1."""


class BadIndicesError(BwmError):
    """Best/worst indices are equal or out of range."""


class TooSmallError(BwmError):
    """Fewer than three alternatives."""


class ReciprocityError(BwmError):
    """Known entries of a pairwise comparison matrix break a_ij * a_ji = 1."""


def as_fraction(value: RationalLike) -> Fraction:
    """Convert an int, Fraction, or "p/q" / "p" string to an exact Fraction.

    Floats are rejected: the caller must state the judgment exactly.
    """
    if isinstance(value, bool):
        raise OutOfScaleError(f"not a comparison value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise OutOfScaleError(f"cannot parse comparison value {value!r}") from exc
    raise OutOfScaleError(
        f"comparison values must be int, Fraction, or 'p/q' string, got {type(value).__name__}"
    )


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" for JSON output."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def on_scale(value: Fraction) -> bool:
    """True iff the value is one of the 17 Saaty-scale judgments."""
    return value in SAATY_SCALE


def validate_comparison_value(value: RationalLike) -> Fraction:
    """Check the Saaty range invariant 1/9 <= value <= 9 and positivity."""
    v = as_fraction(value)
    if v <= 0:
        raise OutOfScaleError(f"comparison value must be positive, got {v}")
    if not (SCALE_MIN <= v <= SCALE_MAX):
        raise OutOfScaleError(f"comparison value {v} outside [1/9, 9]")
    return v


@dataclass(frozen=True)
class BwmInstance:
    """An incomplete best-worst method matrix.

    Only the 2n-3 elicited judgments are stored: the best row
    (``best_to_others``), the worst column (``others_to_worst``) and the
    single shared best-vs-worst cell (``best_to_worst``).  The two maps
    cover the "middle" alternatives j != best, worst only; the shared cell
    is stored once so it cannot disagree with itself.

    All stored entries are > 1: the best alternative dominates everyone and
    everyone dominates the worst.  Reciprocal cells (a_jB, a_Wj) are derived.
    """

    n: int
    best: int
    worst: int
    best_to_others: Mapping[int, Fraction]
    others_to_worst: Mapping[int, Fraction]
    best_to_worst: Fraction

    @property
    def middle(self) -> Tuple[int, ...]:
        """Alternatives other than best and worst, ascending."""
        return tuple(j for j in range(1, self.n + 1) if j != self.best and j != self.worst)

    def a_best(self, j: int) -> Fraction:
        """a_Bj for any j != best."""
        if j == self.worst:
            return self.best_to_worst
        return self.best_to_others[j]

    def a_to_worst(self, j: int) -> Fraction:
        """a_jW for any j != worst."""
        if j == self.best:
            return self.best_to_worst
        return self.others_to_worst[j]

    def dominant_entries(self) -> Tuple[Fraction, ...]:
        """All 2n-3 stored judgments (each > 1), in matrix reading order."""
        best_row = [self.a_best(j) for j in range(1, self.n + 1) if j != self.best]
        worst_col = [self.others_to_worst[j] for j in self.middle]
        return tuple(best_row + worst_col)

    def free_entry_tuple(self) -> Tuple[Fraction, ...]:
        """Canonical entry order (a_Bj for middle j asc, a_BW, a_jW for middle j asc).

        Used as the census enumeration order and as a sort/equality key.
        """
        return tuple(
            [self.best_to_others[j] for j in self.middle]
            + [self.best_to_worst]
            + [self.others_to_worst[j] for j in self.middle]
        )


def validate_bwm(
    n: int,
    best: int,
    worst: int,
    best_to_others: Mapping[int, RationalLike],
    others_to_worst: Mapping[int, RationalLike],
    best_to_worst: RationalLike = None,
) -> BwmInstance:
    """Validate raw judgment data and build an immutable BwmInstance.

    ``best_to_others`` may cover the middle alternatives only (with the
    shared cell given as ``best_to_worst``) or include the worst index;
    likewise ``others_to_worst`` may include the best index.  If the shared
    cell is supplied more than once, all copies must agree exactly.

    Raises:
        TooSmallError: n < 3.
        BadIndicesError: best == worst, indices out of range, or maps
            mention unknown/forbidden alternatives.
        OutOfScaleError: an entry outside [1/9, 9] (or unparseable).
        NotDominantError: a stored entry <= 1, or the shared cell supplied
            inconsistently.
    """
    if n < 3:
        raise TooSmallError(f"need at least 3 alternatives, got n={n}")
    if not (1 <= best <= n) or not (1 <= worst <= n):
        raise BadIndicesError(f"best={best}, worst={worst} out of range 1..{n}")
    if best == worst:
        raise BadIndicesError("best and worst must differ")

    middle = [j for j in range(1, n + 1) if j != best and j != worst]

    shared: Dict[str, Fraction] = {}
    if best_to_worst is not None:
        shared["best_to_worst"] = validate_comparison_value(best_to_worst)

    bto: Dict[int, Fraction] = {}
    for j, raw in best_to_others.items():
        j = int(j)
        if j == best or not (1 <= j <= n):
            raise BadIndicesError(f"best_to_others key {j} invalid for best={best}, n={n}")
        v = validate_comparison_value(raw)
        if j == worst:
            shared["best_to_others"] = v
        else:
            bto[j] = v

    otw: Dict[int, Fraction] = {}
    for j, raw in others_to_worst.items():
        j = int(j)
        if j == worst or not (1 <= j <= n):
            raise BadIndicesError(f"others_to_worst key {j} invalid for worst={worst}, n={n}")
        v = validate_comparison_value(raw)
        if j == best:
            shared["others_to_worst"] = v
        else:
            otw[j] = v

    if not shared:
        raise BadIndicesError("the best-vs-worst comparison a_BW is missing")
    values = set(shared.values())
    if len(values) > 1:
        raise NotDominantError(
            "inconsistent best-vs-worst cell: " + ", ".join(f"{k}={v}" for k, v in shared.items())
        )
    a_bw = values.pop()

    missing_b = [j for j in middle if j not in bto]
    missing_w = [j for j in middle if j not in otw]
    if missing_b or missing_w:
        raise BadIndicesError(
            f"missing comparisons: best_to_others for {missing_b}, others_to_worst for {missing_w}"
        )

    for j, v in bto.items():
        if v <= 1:
            raise NotDominantError(f"a_B{j} = {v} must exceed 1 (best dominates all)")
    for j, v in otw.items():
        if v <= 1:
            raise NotDominantError(f"a_{j}W = {v} must exceed 1 (all dominate worst)")
    if a_bw <= 1:
        raise NotDominantError(f"a_BW = {a_bw} must exceed 1")

    return BwmInstance(
        n=n,
        best=best,
        worst=worst,
        best_to_others=dict(sorted(bto.items())),
        others_to_worst=dict(sorted(otw.items())),
        best_to_worst=a_bw,
    )


@dataclass(frozen=True)
class IncompletePcm:
    """A sparse reciprocal pairwise comparison matrix.

    ``entries`` maps (i, j) with 1-based indices to exact values; the known
    pattern is symmetric and reciprocity a_ij * a_ji = 1 holds exactly.
    """

    n: int
    entries: Mapping[Tuple[int, int], Fraction]

    def known(self, i: int, j: int) -> bool:
        return (i, j) in self.entries

    def get(self, i: int, j: int) -> Fraction:
        return self.entries[(i, j)]

    def known_pairs(self) -> Iterable[Tuple[int, int, Fraction]]:
        """All known off-diagonal cells as (i, j, a_ij)."""
        for (i, j), v in self.entries.items():
            if i != j:
                yield i, j, v

    def missing_pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Unknown cells (i < j) of the upper triangle."""
        return tuple(
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            if (i, j) not in self.entries
        )


def make_pcm(n: int, entries: Mapping[Tuple[int, int], RationalLike]) -> IncompletePcm:
    """Build an IncompletePcm, filling reciprocals and checking invariants.

    Entries may be given for one or both of (i, j)/(j, i); the missing side
    is derived as the exact reciprocal.  Diagonal cells, when given, must
    equal 1; all diagonal cells are stored as known.
    """
    if n < 1:
        raise TooSmallError(f"matrix size must be positive, got {n}")
    out: Dict[Tuple[int, int], Fraction] = {}
    for (i, j), raw in entries.items():
        i, j = int(i), int(j)
        if not (1 <= i <= n and 1 <= j <= n):
            raise BadIndicesError(f"entry ({i},{j}) out of range for n={n}")
        v = validate_comparison_value(raw)
        if i == j:
            if v != 1:
                raise ReciprocityError(f"diagonal entry ({i},{i}) = {v} must equal 1")
            out[(i, j)] = Fraction(1)
            continue
        if (i, j) in out and out[(i, j)] != v:
            raise ReciprocityError(f"conflicting values for entry ({i},{j})")
        out[(i, j)] = v
        recip = 1 / v
        if (j, i) in entries:
            given = validate_comparison_value(entries[(j, i)])
            if given != recip:
                raise ReciprocityError(
                    f"reciprocity broken at ({i},{j}): {v} * {given} != 1"
                )
        out[(j, i)] = recip
    for i in range(1, n + 1):
        out[(i, i)] = Fraction(1)
    return IncompletePcm(n=n, entries=out)


def to_incomplete_pcm(inst: BwmInstance) -> IncompletePcm:
    """Expand a BWM instance into its incomplete PCM.

    Known cells are exactly the best row/column, the worst row/column and
    the diagonal; everything else stays missing.
    """
    entries: Dict[Tuple[int, int], Fraction] = {}
    b, w = inst.best, inst.worst
    for j in range(1, inst.n + 1):
        if j != b:
            v = inst.a_best(j)
            entries[(b, j)] = v
            entries[(j, b)] = 1 / v
        if j != w:
            v = inst.a_to_worst(j)
            entries[(j, w)] = v
            entries[(w, j)] = 1 / v
    for i in range(1, inst.n + 1):
        entries[(i, i)] = Fraction(1)
    return IncompletePcm(n=inst.n, entries=entries)


@dataclass(frozen=True)
class ComparisonGraph:
    """Undirected graph linking alternatives with a known comparison."""

    n: int
    edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    @classmethod
    def from_pcm(cls, pcm: IncompletePcm) -> "ComparisonGraph":
        edges = frozenset(
            (min(i, j), max(i, j)) for (i, j) in pcm.entries.keys() if i != j
        )
        return cls(n=pcm.n, edges=edges)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj: Dict[int, list] = {i: [] for i in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {1}
        stack = [1]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n


def is_connected(pcm: IncompletePcm) -> bool:
    """True iff the comparison graph of the PCM is connected."""
    return ComparisonGraph.from_pcm(pcm).is_connected()
