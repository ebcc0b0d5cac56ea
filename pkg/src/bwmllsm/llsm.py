"""Logarithmic least squares priorities for incomplete comparison matrices.

Two routes to the same unique solution:

* ``solve_llsm_general`` solves the graph-Laplacian normal equations
  L y = r under the zero-sum normalisation sum(y) = 0 — works for any
  connected incomplete PCM.
* ``solve_llsm_bwm_closed_form`` evaluates the O(n) closed form that the
  Laplacian system collapses to on a best-worst matrix.

``spanning_tree_oracle`` recomputes the same vector as the geometric mean
of the consistent weight vectors of all spanning trees; it is slow by
design and exists to cross-check the solvers in tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .model import BwmError, BwmInstance, ComparisonGraph, IncompletePcm, is_connected

#: Residual bound guaranteed by the solver, far below any reporting tolerance.
RESIDUAL_TOL = 1e-10


class DisconnectedError(BwmError):
    """The comparison graph is not connected; LLSM weights are not unique."""


class SingularSystemError(BwmError):
    """The Laplacian system has kernel dimension > 1 (disconnected graph)."""


class TooLargeError(BwmError):
    """Spanning-tree enumeration guard exceeded."""


def _log_fraction(v: Fraction) -> float:
    # math.log on the integer parts keeps precision for big census products
    return math.log(v.numerator) - math.log(v.denominator)


@dataclass(frozen=True)
class LaplacianSystem:
    """The normal equations L y = r of the incomplete LLSM problem.

    L is the Laplacian of the comparison graph (degree on the diagonal, -1
    for known off-diagonal comparisons); r_i is the natural log of the
    product of the known entries in row i.
    """

    L: np.ndarray
    r: np.ndarray

    @property
    def n(self) -> int:
        return self.L.shape[0]


@dataclass(frozen=True)
class PriorityVector:
    """Log-weights y with sum(y) = 0, plus the two standard weight views."""

    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def w_prod(self) -> np.ndarray:
        """Weights normalised to product 1 (w_i = exp(y_i))."""
        return np.exp(self.y)

    @property
    def w_sum(self) -> np.ndarray:
        """Weights rescaled to sum 1."""
        w = self.w_prod
        return w / w.sum()

    @classmethod
    def from_logs(cls, y) -> "PriorityVector":
        y = np.asarray(y, dtype=float)
        return cls(y=y - y.mean())

    def reciprocal(self) -> "PriorityVector":
        return PriorityVector.from_logs(-self.y)


def normalize(pv: PriorityVector, mode: str) -> np.ndarray:
    """Return the requested weight view: "product-one" or "sum-one"."""
    if mode == "product-one":
        return pv.w_prod
    if mode == "sum-one":
        return pv.w_sum
    raise ValueError(f"unknown normalisation mode {mode!r}")


def build_laplacian(pcm: IncompletePcm) -> LaplacianSystem:
    """Assemble L and r for a connected incomplete PCM.

    Raises:
        DisconnectedError: the comparison graph is not connected.
    """
    if not is_connected(pcm):
        raise DisconnectedError("comparison graph is not connected")
    n = pcm.n
    L = np.zeros((n, n))
    r = np.zeros(n)
    for i, j, v in pcm.known_pairs():
        L[i - 1, i - 1] += 1
        L[i - 1, j - 1] = -1
        r[i - 1] += _log_fraction(v)
    return LaplacianSystem(L=L, r=r)


def solve_llsm_general(system: LaplacianSystem) -> PriorityVector:
    """Solve L y = r with sum(y) = 0.

    The singular Laplacian is regularised by the rank-one shift
    L + (1/n) * ones, which is invertible exactly when the graph is
    connected and whose solution coincides with the zero-sum LLSM optimum.

    Raises:
        SingularSystemError: the kernel has dimension > 1 (disconnected
            graph), so no unique priority vector exists.
    """
    n = system.n
    shifted = system.L + np.ones((n, n)) / n
    try:
        y = np.linalg.solve(shifted, system.r)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("Laplacian system is singular") from exc
    residual = np.max(np.abs(system.L @ y - system.r))
    if not residual <= RESIDUAL_TOL:
        raise SingularSystemError(
            f"no unique LLSM solution: residual {residual:.3e} exceeds {RESIDUAL_TOL}"
        )
    return PriorityVector.from_logs(y)


def solve_llsm(pcm: IncompletePcm) -> PriorityVector:
    """Convenience wrapper: build the Laplacian system and solve it."""
    return solve_llsm_general(build_laplacian(pcm))


def solve_llsm_bwm_closed_form(inst: BwmInstance) -> PriorityVector:
    """O(n) closed form of the LLSM solution on a best-worst matrix.

    With P_B the product of the best row and P_W the product of the worst
    column (both over the 2n-3 stored judgments, the shared cell counted in
    each), the Laplacian system reduces to

        y_B = log(P_B) / n
        y_W = -log(P_W) / n
        y_j = (log(a_jW / a_Bj) + y_B + y_W) / 2   for middle j.
    """
    n = inst.n
    p_b = Fraction(1)
    for j in range(1, n + 1):
        if j != inst.best:
            p_b *= inst.a_best(j)
    p_w = Fraction(1)
    for j in range(1, n + 1):
        if j != inst.worst:
            p_w *= inst.a_to_worst(j)

    y = np.zeros(n)
    y_b = _log_fraction(p_b) / n
    y_w = -_log_fraction(p_w) / n
    y[inst.best - 1] = y_b
    y[inst.worst - 1] = y_w
    for j in inst.middle:
        ratio = inst.a_to_worst(j) / inst.a_best(j)
        y[j - 1] = (_log_fraction(ratio) + y_b + y_w) / 2
    return PriorityVector.from_logs(y)


def _spanning_trees(graph: ComparisonGraph) -> List[Tuple[Tuple[int, int], ...]]:
    """All spanning trees as edge tuples, via brute-force edge subsets."""
    edges = sorted(graph.edges)
    n = graph.n
    trees = []
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for i, j in subset:
            ri, rj = find(i), find(j)
            if ri == rj:
                acyclic = False
                break
            parent[ri] = rj
        if acyclic:
            trees.append(subset)
    return trees


def spanning_tree_oracle(pcm: IncompletePcm, max_nodes: int = 8) -> PriorityVector:
    """Geometric mean of the weight vectors of all spanning trees.

    Each spanning tree fixes a consistent weight vector (propagate the tree
    edges' ratios from an arbitrary root); the elementwise geometric mean
    over all trees equals the LLSM solution.  Exponential in the graph
    size, hence the ``max_nodes`` guard — this is a test oracle, not a
    production path.

    Raises:
        TooLargeError: more than ``max_nodes`` alternatives.
        DisconnectedError: no spanning tree exists.
    """
    n = pcm.n
    if n > max_nodes:
        raise TooLargeError(f"spanning-tree oracle limited to {max_nodes} nodes, got {n}")
    graph = ComparisonGraph.from_pcm(pcm)
    if not graph.is_connected():
        raise DisconnectedError("comparison graph is not connected")

    log_entries = {(i, j): _log_fraction(v) for i, j, v in pcm.known_pairs()}
    trees = _spanning_trees(graph)
    acc = np.zeros(n)
    for tree in trees:
        adj: dict = {i: [] for i in range(1, n + 1)}
        for i, j in tree:
            adj[i].append(j)
            adj[j].append(i)
        y = np.full(n, np.nan)
        y[0] = 0.0
        stack = [1]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if np.isnan(y[v - 1]):
                    # a_vu = w_v / w_u  =>  y_v = y_u + log(a_vu)
                    y[v - 1] = y[u - 1] + log_entries[(v, u)]
                    stack.append(v)
        acc += y - y.mean()
    return PriorityVector.from_logs(acc / len(trees))
