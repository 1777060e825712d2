"""Link prediction benchmarking with degree-aware negative sampling."""

from .graph import (
    EdgeListParseError,
    Graph,
    build_graph,
    canonical_edges,
    load_graph,
    read_edge_list,
    save_graph,
    write_edge_list,
)
from .generators import (
    GenerationError,
    LfrParams,
    degree_sequence_graph,
    generate_lfr,
    generate_price,
    mixing_fraction,
    sample_powerlaw_degrees,
)
from .sampling import (
    EdgeSplit,
    SaturationError,
    endpoint_degree_histogram,
    make_split,
    sample_negative_degree_corrected,
    sample_negative_uniform,
    split_positive,
)
from .predictors import (
    METHODS,
    MethodSpec,
    ScoreTable,
    build_score_table,
    score_heuristic,
    score_method,
    score_pa,
)
from .metrics import Recommendations, auc_roc, rbo, top_c_recommend, vcmpr_at_c
from .nullmodel import (
    LogNormalFit,
    expected_pa_auc,
    expected_pa_auc_closed_form,
    fit_lognormal_degrees,
    size_biased_law,
)
from .harness import (
    BenchmarkConfig,
    BenchmarkReport,
    GraphSource,
    compare_rankings,
    derive_seed,
    run_benchmark,
    run_evaluation,
    run_recommendation,
)

__version__ = "0.1.0"
