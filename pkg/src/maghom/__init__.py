"""Exact magnitude homology of finite simple graphs (full, eulerian, and
discriminant flavours) plus seeded Monte Carlo experiments on random graphs."""

from .graphs import (Graph, UNREACHABLE, all_pairs_distances, build_graph,
                     complete_graph, count_full_subgraphs, cycle_graph,
                     f4_graph, read_graph, write_graph)
from .trails import (BudgetExceededError, ChainBasis, enumerate_trails,
                     landmark_set, trail_length)
from .chains import BoundaryMatrix, boundary_matrix, connecting_map, face_map
from .homology import (HomologyResult, check_lesnotsplit_criterion,
                       compute_homology, kernel_basis, les_consistency_check,
                       matrix_rank_exact, verify_vanishing_consequences)
from .randmodels import (ErParams, RggParams, edge_probability_rgg, p_from_q,
                         sample_er, sample_rgg, torus_distance,
                         write_point_cloud)
from .structure import (ClassGraph, CliqueBoundReport, Decomposition,
                        LocalCollection, MinimalClassGraph, StructureGraph,
                        clique_lower_bound, collection_kernel_basis,
                        contract_class_graph, decompose_cycle, emh22_rank,
                        emh22_upper_bound, local_collections,
                        minimal_class_graph, structure_graph,
                        verify_restricted_y_class)
from .harness import (CellSummary, ExperimentRecord, SweepConfig,
                      clt_experiment, ratio_experiment, run_sweep,
                      run_trial, summary_csv, threshold_crossing,
                      trials_csv)

__all__ = [
    "Graph", "UNREACHABLE", "all_pairs_distances", "build_graph",
    "complete_graph", "count_full_subgraphs", "cycle_graph", "f4_graph",
    "read_graph", "write_graph", "BudgetExceededError", "ChainBasis",
    "enumerate_trails", "landmark_set", "trail_length", "BoundaryMatrix",
    "boundary_matrix", "connecting_map", "face_map", "HomologyResult",
    "check_lesnotsplit_criterion", "compute_homology", "kernel_basis",
    "les_consistency_check", "matrix_rank_exact",
    "verify_vanishing_consequences",
    "ErParams", "RggParams", "edge_probability_rgg", "p_from_q",
    "sample_er", "sample_rgg", "torus_distance", "write_point_cloud",
    "ClassGraph", "CliqueBoundReport", "Decomposition", "LocalCollection",
    "MinimalClassGraph", "StructureGraph", "clique_lower_bound",
    "collection_kernel_basis", "contract_class_graph", "decompose_cycle",
    "emh22_rank", "emh22_upper_bound", "local_collections",
    "minimal_class_graph", "structure_graph", "verify_restricted_y_class",
    "CellSummary", "ExperimentRecord", "SweepConfig", "clt_experiment",
    "ratio_experiment", "run_sweep", "run_trial", "summary_csv",
    "threshold_crossing", "trials_csv",
]

__version__ = "0.1.0"
