"""Planted-community graphs with a dialed-in mixing fraction.

The LFR-style generator grows power-law degrees and community sizes,
then wires a fraction mu of each node's edges across community lines.
This script sweeps mu, verifies the realized mixing, and shows how the
benchmark verdict on a structure-aware method (common neighbors) versus
the degree-only null changes once negatives are degree-corrected.

Run: python3 demos/community_mixing.py
"""

import warnings

import numpy as np

from linkbench import (LfrParams, MethodSpec, auc_roc, generate_lfr,
                       make_split, mixing_fraction, score_method)

warnings.filterwarnings("ignore", message="discarded")

print(f"{'mu':>4s} {'realized':>9s} {'edges':>7s} {'communities':>12s}")
for mu in (0.1, 0.3, 0.5, 0.7, 0.9):
    params = LfrParams(n=1000, tau1=2.5, tau2=3.0, mu=mu, avg_degree=12.0,
                       max_degree=80, min_comm=50, max_comm=200)
    g, labels = generate_lfr(params, seed=int(10 * mu))
    print(f"{mu:4.1f} {mixing_fraction(g, labels):9.3f} {g.num_edges:7d} "
          f"{np.unique(labels).size:12d}")

print()
print("benchmark verdicts at mu=0.1 (strong communities), 3 repeats:")
params = LfrParams(n=1000, tau1=2.5, tau2=3.0, mu=0.1, avg_degree=12.0,
                   max_degree=80, min_comm=50, max_comm=200)
g, _ = generate_lfr(params, seed=1)

for sampler in ("uniform", "degree-corrected"):
    scores = {}
    for name in ("pa", "cn"):
        spec = MethodSpec(name)
        vals = []
        for rep in range(3):
            split = make_split(g, 0.25, sampler, seed=100 + rep)
            vals.append(auc_roc(
                score_method(split.train, split.positives, spec),
                score_method(split.train, split.negatives, spec)))
        scores[name] = float(np.mean(vals))
    gap = scores["cn"] - scores["pa"]
    print(f"  {sampler:<18s} degree-product AUC {scores['pa']:.3f}, "
          f"common-neighbors AUC {scores['cn']:.3f} "
          f"(structure advantage {gap:+.3f})")

print()
print("degree correction pushes the degree-only null back toward 0.5")
print("while the structure-aware score keeps most of its AUC, so the")
print("measured advantage of actually reading the wiring grows.")
