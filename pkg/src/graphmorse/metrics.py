"""Bottleneck distance, the stability harness and polynomial diagram features."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .persistence import PersistenceDiagram, morse_persistence, slice_diagram
from .relation import RelationMatrix, perturb
from .space import GraphSpace


def _coords(points) -> np.ndarray:
    if isinstance(points, PersistenceDiagram):
        points = points.pairs()
    return np.array([(float(b), float(d)) for b, d in points], dtype=float).reshape(-1, 2)


def diagonal_cost(P: np.ndarray) -> np.ndarray:
    """Sup-norm distance from each (b, d) to the diagonal."""
    return np.abs(P[:, 0] - P[:, 1]) / 2


def _perfect_matching(adj: np.ndarray) -> bool:
    if adj.shape[0] == 0:
        return True
    match = maximum_bipartite_matching(csr_matrix(adj.astype(np.int8)), perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck_pairs(A, B, allow_diagonal: bool = True) -> float:
    """Exact bottleneck distance between two finite point multisets.

    With ``allow_diagonal`` the classical reduction is used: each side is
    padded with diagonal copies of the other side's points, and the answer
    is the smallest candidate cost admitting a perfect matching.  Without
    it, the two sides must be matched one-to-one.
    """
    A, B = _coords(A), _coords(B)
    m, k = len(A), len(B)
    if m == 0 and k == 0:
        return 0.0
    if not allow_diagonal and m != k:
        return math.inf
    cross = np.max(np.abs(A[:, None, :] - B[None, :, :]), axis=2) if m and k else np.zeros((m, k))
    if not allow_diagonal:
        candidates = np.unique(cross)

        def feasible(t):
            return _perfect_matching(cross <= t)
    else:
        da, db = diagonal_cost(A), diagonal_cost(B)
        candidates = np.unique(np.concatenate([cross.ravel(), da, db, [0.0]]))
        size = m + k

        def feasible(t):
            adj = np.zeros((size, size), dtype=bool)
            adj[:m, :k] = cross <= t
            adj[:m, k:] = np.diag(da <= t)
            adj[m:, :k] = np.diag(db <= t)
            adj[m:, k:] = True
            return _perfect_matching(adj)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def bottleneck(D1: PersistenceDiagram, D2: PersistenceDiagram) -> float:
    """Bottleneck distance; essential points pair only with essential points.

    Returns ``math.inf`` when the essential counts differ.
    """
    e1, e2 = D1.essential, D2.essential
    if len(e1) != len(e2):
        return math.inf
    ess = bottleneck_pairs([(p.birth, p.death) for p in e1], [(p.birth, p.death) for p in e2],
                           allow_diagonal=False)
    fin = bottleneck_pairs([(p.birth, p.death) for p in D1.finite],
                           [(p.birth, p.death) for p in D2.finite])
    return max(ess, fin)


@dataclass
class StabilityReport:
    epsilon: float
    trials: int
    distances: list[float]
    seeds: list[int]
    tolerance: float
    failures: list[int] = field(default_factory=list)
    slice_k: int | None = None
    label_agreement: float | None = None

    @property
    def max_distance(self) -> float:
        return max(self.distances, default=0.0)

    @property
    def max_ratio(self) -> float | None:
        if self.epsilon == 0:
            return None
        return self.max_distance / self.epsilon

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_obj(self) -> dict:
        obj = {"epsilon": self.epsilon, "trials": self.trials, "max_distance": self.max_distance,
               "pass": self.passed, "failures": list(self.failures),
               "max_ratio": self.max_ratio, "tolerance": self.tolerance,
               "distances": list(self.distances), "seeds": list(self.seeds)}
        if self.slice_k is not None:
            obj["slice_k"] = self.slice_k
            obj["label_agreement"] = self.label_agreement
        return obj


def trial_seeds(seed: int, trials: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(trials)]


def check_stability(W: RelationMatrix, eps: float, trials: int, seed: int, *,
                    tolerance: float = 1e-9, space: GraphSpace | None = None,
                    slice_k: int | None = None, threads: int = 1) -> StabilityReport:
    """Perturb ``W`` within ``eps`` and check ``d_B <= eps + tolerance`` every time.

    With ``slice_k`` the comparison runs on the beta_k slice of each
    diagram; the fraction of trials whose sorted beta_k labels agree is
    reported alongside but not asserted.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be positive")
    space = space or GraphSpace(W.n)
    base = morse_persistence(space, W)
    if slice_k is not None:
        base = slice_diagram(base, slice_k)
    seeds = trial_seeds(seed, trials)

    def run(s):
        other = morse_persistence(space, perturb(W, eps, s))
        if slice_k is not None:
            other = slice_diagram(other, slice_k)
        labels_match = None
        if slice_k is not None:
            labels_match = (sorted(p.index_at_birth[slice_k] for p in base.points)
                            == sorted(p.index_at_birth[slice_k] for p in other.points))
        return bottleneck(base, other), labels_match

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, seeds))
    else:
        results = [run(s) for s in seeds]

    distances = [d for d, _ in results]
    failures = [s for s, d in zip(seeds, distances) if not d <= eps + tolerance]
    agreement = None
    if slice_k is not None:
        agreement = sum(bool(ok) for _, ok in results) / trials
    return StabilityReport(eps, trials, distances, seeds, tolerance, failures, slice_k, agreement)


def acc_features(D: PersistenceDiagram | Sequence[tuple[float, float]]) -> np.ndarray:
    """Four polynomial coordinates of the non-essential points.

    With lifetime l = b - d and d_max the largest death:
    sum d*l, sum (d_max - d)*l, sum d^2*l^4, sum (d_max - d)^2*l^4.
    """
    if isinstance(D, PersistenceDiagram):
        pts = _coords([(p.birth, p.death) for p in D.finite])
    else:
        pts = _coords(D)
    if len(pts) == 0:
        return np.zeros(4)
    b, d = pts[:, 0], pts[:, 1]
    life = b - d
    dmax = d.max()
    return np.array([
        np.sum(d * life),
        np.sum((dmax - d) * life),
        np.sum(d ** 2 * life ** 4),
        np.sum((dmax - d) ** 2 * life ** 4),
    ])
