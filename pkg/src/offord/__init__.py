"""Exact subset-selection counting and graph rank/corank extremal searches."""

from .bounds import (
    BoundSpec,
    CostEstimate,
    EqualityClass,
    EqualityMatch,
    classify_equality,
    estimate_cost_t7,
    lo_bound,
    template_a1,
    template_a2,
    template_a3,
    template_a4,
    vector_bound,
)
from .census import (
    CensusRecord,
    CensusResult,
    bipartite_rank_census,
    cobipartite_corank_census,
    extend_census,
    load_census,
    save_census,
)
from .constructions import build_extremal, embeds_in_template, extremal_order
from .enumeration import enumerate_reduced_matrices
from .graphs import (
    BipartiteGraph,
    Graph,
    canonical_graph6,
    complement,
    cotwins,
    graph6_decode,
    graph6_encode,
    graph_corank,
    graph_rank,
    is_coreduced_graph,
    is_reduced_graph,
    twins,
)
from .linalg import RankResult, one_in_rowspace, rank_exact
from .matrices import (
    MASK_CAP,
    BitVector,
    CapacityError,
    NormalizeOutcome,
    OmegaResult,
    SignMatrix,
    canonical_form,
    equivalent,
    format_matrix,
    is_reduced,
    normalize_to_reduced,
    omega_count_fast,
    omega_enumerate,
    parse_matrix,
    star,
    weight,
)
from .verification import (
    VerificationReport,
    verify_lemma_comput,
    verify_main_theorem,
)

__version__ = "0.1.0"
