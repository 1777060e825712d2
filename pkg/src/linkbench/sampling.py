"""Benchmark edge splitting and negative-pair sampling.

Positives are a uniform sample of edges; the train graph is the remainder.
Negatives come in two flavors. The uniform sampler draws both endpoints
uniformly from the node set, which makes negative endpoints follow the plain
degree law while positive endpoints follow the size-biased one. The
degree-corrected sampler draws endpoints proportionally to their degree in
the original graph, so negatives match the positives' endpoint law and the
benchmark stops rewarding degree alone.

Both samplers reject self-pairs, pairs present in the graph or the positive
set, and pairs already sampled, and both are deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, build_graph


class SaturationError(RuntimeError):
    """Rejection sampling exceeded its attempt budget."""


@dataclass(frozen=True)
class EdgeSplit:
    """A benchmark instance: train graph plus positive and negative pairs.

    positives and train edges partition the original edge set; negatives are
    distinct non-edges of the original graph, one per positive.
    """

    train: Graph
    positives: np.ndarray
    negatives: np.ndarray
    beta: float
    sampler: str
    seed: int


def split_positive(g: Graph, beta: float, seed) -> tuple[Graph, np.ndarray]:
    """Hold out round(beta * M) uniformly chosen edges as positives.

    The train graph keeps every node of g, so nodes isolated by the removal
    stay present with degree 0.

    Returns:
        (train, positives) with positives as a canonical (count, 2) array.
    """
    if not 0 < beta < 1:
        raise ValueError("beta must be in (0, 1)")
    m = g.num_edges
    if m == 0:
        raise ValueError("cannot split a graph with no edges")
    count = int(round(beta * m))
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(m, size=count, replace=False))
    edges = g.edge_array()
    keep = np.ones(m, dtype=bool)
    keep[chosen] = False
    positives = edges[chosen].copy()
    train = build_graph(edges[keep], num_nodes=g.num_nodes)
    return train, positives


def _pair_keys(pairs: np.ndarray, n: int) -> np.ndarray:
    lo = np.minimum(pairs[:, 0], pairs[:, 1]).astype(np.uint64)
    hi = np.maximum(pairs[:, 0], pairs[:, 1]).astype(np.uint64)
    return lo * np.uint64(n) + hi


def _forbidden_keys(g: Graph, positives) -> np.ndarray:
    keys = [_pair_keys(g.edge_array(), g.num_nodes)]
    if positives is not None:
        pos = np.asarray(positives, dtype=np.int64).reshape(-1, 2)
        if pos.size:
            keys.append(_pair_keys(pos, g.num_nodes))
    return np.unique(np.concatenate(keys)) if keys else np.zeros(0, dtype=np.uint64)


def _rejection_sample(draw, forbidden: np.ndarray, n: int, count: int,
                      seed) -> np.ndarray:
    """Draw distinct valid pairs until count accepted.

    draw(rng, size) yields an (size, 2) int array of endpoint proposals. A
    proposal is rejected if the endpoints coincide, the pair is forbidden,
    or it was already accepted. Raises SaturationError past 1e4 * count
    proposals.
    """
    if count == 0:
        return np.zeros((0, 2), dtype=np.int64)
    rng = np.random.default_rng(seed)
    budget = 10_000 * count
    attempts = 0
    accepted: list = []
    taken: set = set()
    while len(accepted) < count:
        size = max(1024, 2 * (count - len(accepted)))
        size = min(size, budget - attempts)
        if size <= 0:
            raise SaturationError(
                f"negative sampling used more than {budget} proposals "
                f"for {count} pairs; the graph is likely near-complete")
        attempts += size
        prop = draw(rng, size)
        lo = np.minimum(prop[:, 0], prop[:, 1])
        hi = np.maximum(prop[:, 0], prop[:, 1])
        ok = lo != hi
        keys = lo.astype(np.uint64) * np.uint64(n) + hi.astype(np.uint64)
        pos = np.searchsorted(forbidden, keys)
        pos = np.minimum(pos, max(forbidden.size - 1, 0))
        if forbidden.size:
            ok &= forbidden[pos] != keys
        for idx in np.flatnonzero(ok):
            key = int(keys[idx])
            if key in taken:
                continue
            taken.add(key)
            accepted.append((int(lo[idx]), int(hi[idx])))
            if len(accepted) == count:
                break
    return np.asarray(accepted, dtype=np.int64)


def sample_negative_uniform(g: Graph, positives, count: int, seed) -> np.ndarray:
    """Sample distinct non-edges with endpoints uniform over the node set."""
    n = g.num_nodes
    available = n * (n - 1) // 2 - g.num_edges
    if count > available:
        raise ValueError(
            f"requested {count} negatives but only {available} non-edges exist")
    forbidden = _forbidden_keys(g, positives)

    def draw(rng, size):
        return rng.integers(0, n, size=(size, 2), dtype=np.int64)

    return _rejection_sample(draw, forbidden, n, count, seed)


def sample_negative_degree_corrected(g: Graph, positives, count: int,
                                     seed) -> np.ndarray:
    """Sample distinct non-edges with endpoints drawn proportionally to degree.

    Endpoint probabilities use the original graph's degrees, which is
    equivalent to drawing uniformly from the multiset that lists each node
    once per incident edge. Nodes of degree 0 are never selected.
    """
    n = g.num_nodes
    deg = g.degrees
    total = int(deg.sum())
    if total == 0:
        raise ValueError("degree-corrected sampling needs at least one edge")
    d = int(np.count_nonzero(deg))
    available = d * (d - 1) // 2 - g.num_edges
    if count > available:
        raise ValueError(
            f"requested {count} negatives but only {available} non-edges "
            f"exist between nodes of positive degree")
    cum = np.cumsum(deg)

    def draw(rng, size):
        r = rng.integers(0, total, size=(size, 2), dtype=np.int64)
        return np.searchsorted(cum, r, side="right").astype(np.int64)

    forbidden = _forbidden_keys(g, positives)
    return _rejection_sample(draw, forbidden, n, count, seed)


_SAMPLERS = {
    "uniform": sample_negative_uniform,
    "degree-corrected": sample_negative_degree_corrected,
}


def make_split(g: Graph, beta: float, sampler: str, seed: int) -> EdgeSplit:
    """Split positives and sample matching negatives in one step.

    The seed drives two independent streams (one for the split, one for the
    negatives) derived via SeedSequence, so one integer reproduces the whole
    instance.
    """
    if sampler not in _SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; expected one of "
                         f"{sorted(_SAMPLERS)}")
    split_seed, neg_seed = (int(s) for s in
                            np.random.SeedSequence(seed).generate_state(2, dtype=np.uint64))
    train, positives = split_positive(g, beta, split_seed)
    negatives = _SAMPLERS[sampler](g, positives, positives.shape[0], neg_seed)
    return EdgeSplit(train=train, positives=positives, negatives=negatives,
                     beta=beta, sampler=sampler, seed=int(seed))


def endpoint_degree_histogram(edges, g: Graph) -> np.ndarray:
    """Distribution of endpoint degrees over the 2 * |edges| endpoint slots.

    Index k of the result is the fraction of endpoint slots whose node has
    degree k in g. Degrees larger than g's maximum cannot occur, so the
    array has length max-degree + 1.
    """
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if arr.size == 0:
        raise ValueError("cannot build a histogram from zero edges")
    deg = g.degrees
    ends = deg[arr.ravel()]
    hist = np.bincount(ends, minlength=int(deg.max()) + 1).astype(np.float64)
    return hist / ends.size
