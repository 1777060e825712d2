"""Topology-based link scorers evaluated on a train graph.

Each scorer takes the train graph and an (m, 2) array of node pairs and
returns float64 scores. Scoring is pure: repeated calls with the same
arguments return bit-identical arrays, and all scores are finite. Pair
batches are chunked internally to bound memory.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

METHODS = (
    "pa",
    "cn",
    "jaccard",
    "adamic_adar",
    "resource_alloc",
    "lpi",
    "shortest_path",
    "lrw",
)

_PAIR_CHUNK = 1 << 18


@dataclass(frozen=True)
class MethodSpec:
    """A method id plus the knobs that some methods take.

    epsilon weights 3-step walk counts in lpi; walk_steps is the walk
    length used by lrw. Both are ignored by the other methods.
    """

    method: str
    epsilon: float = 0.01
    walk_steps: int = 3

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.walk_steps < 2:
            raise ValueError("walk_steps must be >= 2")

    def params(self) -> dict:
        if self.method == "lpi":
            return {"epsilon": self.epsilon}
        if self.method == "lrw":
            return {"walk_steps": self.walk_steps}
        return {}


@dataclass(frozen=True)
class ScoreTable:
    pairs: np.ndarray
    scores: np.ndarray
    method: str
    params: dict = field(default_factory=dict)


def _check_pairs(train, pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (m, 2) pair array, got shape {arr.shape}")
    if arr.min() < 0 or arr.max() >= train.num_nodes:
        raise ValueError("pair ids out of range for the train graph")
    return arr


def _score_pa(train, arr) -> np.ndarray:
    deg = train.degrees
    return (deg[arr[:, 0]] * deg[arr[:, 1]]).astype(np.float64)


def score_pa(train, pairs) -> "ScoreTable":
    """Degree-product scores. Degree-0 endpoints give score 0."""
    return build_score_table(train, pairs, MethodSpec("pa"))


def _chunks(total, step):
    for lo in range(0, total, step):
        yield lo, min(lo + step, total)


def _overlap_sum(A, B, src, trg):
    # sum_z A[src, z] * B[trg, z] per row; index-ascending accumulation,
    # so the result is independent of endpoint order
    return np.asarray(A[src].multiply(B[trg]).sum(axis=1)).ravel()


def _score_cn(train, arr):
    A = train.to_scipy_csr()
    out = np.empty(arr.shape[0], dtype=np.float64)
    for lo, hi in _chunks(arr.shape[0], _PAIR_CHUNK):
        out[lo:hi] = _overlap_sum(A, A, arr[lo:hi, 0], arr[lo:hi, 1])
    return out


def _score_jaccard(train, arr):
    cn = _score_cn(train, arr)
    deg = train.degrees.astype(np.float64)
    union = deg[arr[:, 0]] + deg[arr[:, 1]] - cn
    out = np.zeros_like(cn)
    np.divide(cn, union, out=out, where=union > 0)
    return out


def _column_weighted(A, weights):
    return sparse.csr_matrix(A.multiply(weights[np.newaxis, :]))


def _score_weighted_cn(train, arr, weights):
    A = train.to_scipy_csr()
    B = _column_weighted(A, weights)
    out = np.empty(arr.shape[0], dtype=np.float64)
    for lo, hi in _chunks(arr.shape[0], _PAIR_CHUNK):
        out[lo:hi] = _overlap_sum(A, B, arr[lo:hi, 0], arr[lo:hi, 1])
    return out


def _score_adamic_adar(train, arr):
    deg = train.degrees
    w = np.zeros(train.num_nodes, dtype=np.float64)
    big = deg >= 2  # ln(1) = 0 would blow up, degree <= 1 hubs carry no signal anyway
    w[big] = 1.0 / np.log(deg[big].astype(np.float64))
    return _score_weighted_cn(train, arr, w)


def _score_resource_alloc(train, arr):
    deg = train.degrees
    w = np.zeros(train.num_nodes, dtype=np.float64)
    pos = deg >= 1
    w[pos] = 1.0 / deg[pos].astype(np.float64)
    return _score_weighted_cn(train, arr, w)


def _score_lpi(train, arr, epsilon):
    A = train.to_scipy_csr()
    out = np.empty(arr.shape[0], dtype=np.float64)
    for lo, hi in _chunks(arr.shape[0], 1 << 15):
        src = arr[lo:hi, 0]
        trg = arr[lo:hi, 1]
        paths2 = _overlap_sum(A, A, src, trg)
        # walk counts of length 3: rows of A^2 for the sources, dotted with
        # the target rows; integer-valued, so exact in float64
        paths3 = np.asarray((A[src] @ A).multiply(A[trg]).sum(axis=1)).ravel()
        out[lo:hi] = paths2 + epsilon * paths3
    return out


def _score_shortest_path(train, arr):
    A = train.to_scipy_csr()
    uniq = np.unique(arr[:, 0])
    row_of = np.searchsorted(uniq, arr[:, 0])
    dist = np.empty(arr.shape[0], dtype=np.float64)
    batch = max(1, int(4e6 // max(train.num_nodes, 1)))
    for lo, hi in _chunks(uniq.size, batch):
        d = csgraph.dijkstra(A, directed=True, unweighted=True, indices=uniq[lo:hi])
        sel = (row_of >= lo) & (row_of < hi)
        dist[sel] = d[row_of[sel] - lo, arr[sel, 1]]
    out = np.zeros(arr.shape[0], dtype=np.float64)
    ok = np.isfinite(dist) & (dist > 0)
    out[ok] = 1.0 / dist[ok]
    return out


def _score_lrw(train, arr, steps):
    n = train.num_nodes
    m2 = 2.0 * train.num_edges
    if m2 == 0:
        return np.zeros(arr.shape[0], dtype=np.float64)
    deg = train.degrees.astype(np.float64)
    q = deg / m2
    inv = np.zeros(n, dtype=np.float64)
    nz = deg > 0
    inv[nz] = 1.0 / deg[nz]
    A = train.to_scipy_csr()
    # P = D^-1 A; with A symmetric, P^T is A with columns scaled by 1/deg
    PT = sparse.csr_matrix(A.multiply(inv[np.newaxis, :]))

    uniq, col_of = np.unique(arr, return_inverse=True)
    col_of = col_of.reshape(arr.shape)
    pi_fwd = np.zeros(arr.shape[0], dtype=np.float64)
    pi_bwd = np.zeros(arr.shape[0], dtype=np.float64)
    batch = max(16, min(1024, int(2e7 // max(n, 1))))
    for lo, hi in _chunks(uniq.size, batch):
        cols = np.zeros((n, hi - lo), dtype=np.float64)
        cols[uniq[lo:hi], np.arange(hi - lo)] = 1.0
        for _ in range(steps):
            cols = PT @ cols
        sel = (col_of[:, 0] >= lo) & (col_of[:, 0] < hi)
        pi_fwd[sel] = cols[arr[sel, 1], col_of[sel, 0] - lo]
        sel = (col_of[:, 1] >= lo) & (col_of[:, 1] < hi)
        pi_bwd[sel] = cols[arr[sel, 0], col_of[sel, 1] - lo]
    return q[arr[:, 0]] * pi_fwd + q[arr[:, 1]] * pi_bwd


def score_heuristic(train, pairs, spec: MethodSpec) -> "ScoreTable":
    """Neighborhood/path/walk scores as a table; rejects the pa method."""
    if spec.method == "pa":
        raise ValueError("use score_pa for the degree-product method")
    return build_score_table(train, pairs, spec)


def _heuristic_scores(train, arr, spec: MethodSpec) -> np.ndarray:
    if arr.size == 0:
        return np.zeros(0, dtype=np.float64)
    if spec.method == "cn":
        return _score_cn(train, arr)
    if spec.method == "jaccard":
        return _score_jaccard(train, arr)
    if spec.method == "adamic_adar":
        return _score_adamic_adar(train, arr)
    if spec.method == "resource_alloc":
        return _score_resource_alloc(train, arr)
    if spec.method == "lpi":
        return _score_lpi(train, arr, spec.epsilon)
    if spec.method == "shortest_path":
        return _score_shortest_path(train, arr)
    if spec.method == "lrw":
        return _score_lrw(train, arr, spec.walk_steps)
    raise ValueError(f"unknown method {spec.method!r}")


def score_method(train, pairs, spec: MethodSpec) -> np.ndarray:
    """Raw score array for any method; the table-free work horse."""
    arr = _check_pairs(train, pairs)
    if spec.method == "pa":
        return _score_pa(train, arr)
    return _heuristic_scores(train, arr, spec)


def build_score_table(train, pairs, spec: MethodSpec) -> ScoreTable:
    arr = _check_pairs(train, pairs)
    scores = score_method(train, arr, spec)
    if scores.size and not np.all(np.isfinite(scores)):
        raise ArithmeticError(f"non-finite score produced by {spec.method}")
    return ScoreTable(pairs=arr, scores=scores, method=spec.method, params=spec.params())
