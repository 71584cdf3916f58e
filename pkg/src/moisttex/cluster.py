"""KMeans clustering and adjusted mutual information.

The AMI machinery backs the checkpoint callback of the adaptation trainer:
AMI = (MI - E[MI]) / (max(H(U), H(V)) - E[MI]) with the expectation taken
under the hypergeometric permutation model, natural logarithms throughout.
Per-cell terms are sorted before summation, which makes AMI exactly
invariant under relabeling either side and exactly symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


# ---------------------------------------------------------------------------
# KMeans (k-means++ seeding, Lloyd iterations, restart selection)


@dataclass
class KMeansResult:
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float


def _plus_plus_seed(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[int(rng.integers(n))]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            idx = int(rng.integers(n))
        centroids[i] = points[idx]
        d2 = np.minimum(d2, np.sum((points - centroids[i]) ** 2, axis=1))
    return centroids


def _lloyd(points: np.ndarray, centroids: np.ndarray, max_iter: int, tol: float):
    k = centroids.shape[0]
    for _ in range(max_iter):
        d2 = np.sum((points[:, None, :] - centroids[None, :, :]) ** 2, axis=2)
        assign = np.argmin(d2, axis=1)
        new_centroids = centroids.copy()
        for j in range(k):
            members = points[assign == j]
            if len(members):
                new_centroids[j] = members.mean(axis=0)
            else:
                # reseed an empty cluster at the point farthest from its centroid
                far = int(np.argmax(d2[np.arange(len(points)), assign]))
                new_centroids[j] = points[far]
        shift = float(np.sqrt(np.sum((new_centroids - centroids) ** 2, axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break
    d2 = np.sum((points[:, None, :] - centroids[None, :, :]) ** 2, axis=2)
    assign = np.argmin(d2, axis=1)
    inertia = float(d2[np.arange(len(points)), assign].sum())
    return assign, centroids, inertia


def kmeans(points, k: int, seed: int, restarts: int = 10, max_iter: int = 300,
           tol: float = 1e-4) -> KMeansResult:
    """Best-of-``restarts`` KMeans; deterministic given the seed."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError("points must be a 2-D array")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must be finite")
    n = points.shape[0]
    if k < 1 or k > n:
        raise ValueError(f"k must be in [1, {n}], got {k}")

    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        centroids = _plus_plus_seed(points, k, rng)
        assign, centroids, inertia = _lloyd(points, centroids, max_iter, tol)
        if best is None or inertia < best.inertia:
            best = KMeansResult(assignments=assign, centroids=centroids,
                                inertia=inertia)
    return best


# ---------------------------------------------------------------------------
# contingency tables and information measures


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def contingency(u, v) -> ContingencyTable:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 1 or u.size == 0:
        raise ValueError("label sequences must be 1-D, non-empty, equal length")
    _, ui = np.unique(u, return_inverse=True)
    _, vi = np.unique(v, return_inverse=True)
    counts = np.zeros((ui.max() + 1, vi.max() + 1), dtype=np.int64)
    np.add.at(counts, (ui, vi), 1)
    return ContingencyTable(counts=counts)


def _sorted_sum(terms: np.ndarray) -> float:
    """Order-independent summation: sort the terms, then accumulate."""
    return float(np.sum(np.sort(np.asarray(terms, dtype=np.float64))))


def mutual_info(t: ContingencyTable) -> float:
    n = t.total
    a = t.row_sums.astype(np.float64)
    b = t.col_sums.astype(np.float64)
    c = t.counts.astype(np.float64)
    nz = c > 0
    ab = np.outer(a, b)
    terms = (c[nz] / n) * np.log(n * c[nz] / ab[nz])
    return _sorted_sum(terms)


def entropy(labels) -> float:
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.size == 0:
        raise ValueError("labels must be 1-D and non-empty")
    _, counts = np.unique(labels, return_counts=True)
    return _entropy_of_counts(counts)


def _entropy_of_counts(counts: np.ndarray) -> float:
    n = counts.sum()
    p = counts[counts > 0] / n
    return _sorted_sum(-p * np.log(p)) + 0.0


def expected_mi(t: ContingencyTable) -> float:
    """E[MI] over random permutations of one labeling (hypergeometric model)."""
    n = t.total
    a = t.row_sums.astype(np.int64)
    b = t.col_sums.astype(np.int64)
    log_n_fact = gammaln(n + 1)
    terms = []
    for ai in a:
        if ai == 0:
            continue
        for bj in b:
            if bj == 0:
                continue
            m_lo = max(1, ai + bj - n)
            m_hi = min(ai, bj)
            # margin-symmetric grouping keeps ami(u, v) == ami(v, u) bitwise
            s_margins = (gammaln(ai + 1) + gammaln(bj + 1)) + (
                gammaln(n - ai + 1) + gammaln(n - bj + 1))
            for m in range(m_lo, m_hi + 1):
                log_weight = (s_margins - log_n_fact - gammaln(m + 1)
                              - (gammaln(ai - m + 1) + gammaln(bj - m + 1))
                              - gammaln(n - ai - bj + m + 1))
                terms.append((m / n) * np.log(n * m / (float(ai) * bj))
                             * np.exp(log_weight))
    return _sorted_sum(np.array(terms)) if terms else 0.0


def _partitions_identical(t: ContingencyTable) -> bool:
    """True when the two labelings induce the same partition of the items."""
    nz_per_row = (t.counts > 0).sum(axis=1)
    nz_per_col = (t.counts > 0).sum(axis=0)
    return bool(np.all(nz_per_row == 1) and np.all(nz_per_col == 1))


def ami(u, v) -> float:
    """Adjusted mutual information of two labelings of the same items."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError("label sequences must be 1-D and equal length")
    if u.size < 2:
        raise ValueError("need at least two items")
    t = contingency(u, v)
    if _partitions_identical(t):
        return 1.0
    mi = mutual_info(t)
    emi = expected_mi(t)
    h_u = _entropy_of_counts(t.row_sums)
    h_v = _entropy_of_counts(t.col_sums)
    denom = max(h_u, h_v) - emi
    if abs(denom) < 1e-12:
        return 0.0
    return (mi - emi) / denom
