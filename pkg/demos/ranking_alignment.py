"""Which benchmark picks the method that actually recommends well?

Link-prediction scores are usually consumed as per-node top-C
recommendations, so a benchmark is only useful if the method ranking it
produces agrees with the ranking by recommendation quality (VCMPR@C).
This script runs the full harness on a small corpus of community graphs
and compares both benchmark rankings against the recommendation ranking
with rank-biased overlap.

Takes about half a minute. Run: python3 demos/ranking_alignment.py
"""

import warnings

from linkbench import MethodSpec
from linkbench.harness import (BenchmarkConfig, GraphSource,
                               run_evaluation)

warnings.filterwarnings("ignore", message="discarded")

gen = {"kind": "lfr", "n": 600, "tau1": 2.5, "tau2": 3.0, "mu": 0.1,
       "avg_degree": 10.0, "max_degree": 60, "min_comm": 40,
       "max_comm": 150}
graphs = tuple(GraphSource(f"lfr-{s}", generator=dict(gen, seed=s))
               for s in range(900, 906))
methods = tuple(MethodSpec(m) for m in
                ("pa", "cn", "jaccard", "adamic_adar", "resource_alloc",
                 "lpi", "shortest_path", "lrw"))
cfg = BenchmarkConfig(graphs=graphs, methods=methods, repeats=3, top_c=50,
                      master_seed=9,
                      tasks=("link-prediction", "recommendation"))

result = run_evaluation(cfg, jobs=4)
summary = result["summary"]

print("method rankings on the first graph (best first):")
for sampler, ranking in sorted(summary["rankings"]["lfr-900"].items()):
    print(f"  {sampler:<18s} {', '.join(ranking)}")
print()

print("mean rank-biased overlap with the recommendation ranking (p=0.5):")
for key, cmp in sorted(summary["rbo"].items()):
    sampler = key.split("_vs_")[0]
    print(f"  {sampler:<18s} {cmp['mean']:.3f}")
print()
print("on graphs with community structure the degree-corrected benchmark")
print("ranks methods closer to how they perform at the recommendation")
print("task. the uniform benchmark inflates degree-driven scores like the")
print("degree product, which recommend poorly here.")
print()
print("caveat: on pure preferential-attachment graphs degree IS the")
print("generative signal, the degree product genuinely recommends best,")
print("and the comparison flips. the correction helps exactly when the")
print("wiring carries information beyond degree.")
