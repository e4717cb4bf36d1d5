"""Graph symmetry toolkit: cherry statistics on random trees, automorphism
groups, and coherent-algebra stabilization, backed by a C++ core."""

from qsym._core import (
    Graph,
    asymptotic_moments,
    automorphism_order,
    cayley_count,
    classify,
    exact_moments,
    find_cherries,
    graph6_decode,
    graph6_encode,
    prufer_decode,
    prufer_encode,
    run_graph_experiment,
    run_tree_experiment,
    sample_gnp,
    sample_tree,
    wilson_interval,
    wl2_stabilize,
)

__all__ = [
    "Graph",
    "asymptotic_moments",
    "automorphism_order",
    "cayley_count",
    "classify",
    "exact_moments",
    "find_cherries",
    "graph6_decode",
    "graph6_encode",
    "prufer_decode",
    "prufer_encode",
    "run_graph_experiment",
    "run_tree_experiment",
    "sample_gnp",
    "sample_tree",
    "wilson_interval",
    "wl2_stabilize",
]

__version__ = "0.1.0"
