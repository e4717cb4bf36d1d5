#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsym {

// Monte Carlo sweep over uniform random labeled trees: cherry statistics,
// classification outcomes, and the exact-formula reference values per n.
// Trial i of size n always uses the generator seeded from (master_seed, n, i),
// and per-row statistics are merged from integer accumulators, so the output
// is byte-identical for any worker count.
struct TreeExperimentConfig {
    std::vector<int> n_values;
    std::uint64_t trials = 10000;
    std::uint64_t master_seed = 1;
    int workers = 1;
    int brute_cap = 10;
    // The coherent-algebra step is off by default in this sweep: on a large
    // tree that lacks a disjoint cherry pair it costs O(n^3) per sample and
    // the tree engine already settles the classical side.
    int wl_cap = 0;
};

struct TreeExperimentRow {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    double mean_cherries = 0.0;
    double p_geq_1 = 0.0;
    double p_geq_2 = 0.0;
    double wilson99_lo_p_geq_2 = 0.0;
    double wilson99_hi_p_geq_2 = 0.0;
    double frac_quantum_symmetric = 0.0;
    double frac_symmetric = 0.0;  // nontrivial automorphism group observed
    double exact_e_cn = 0.0;
    double chebyshev_lower_bound = 0.0;
    bool has_chebyshev = false;  // second-moment formulas need n >= 7
};

std::vector<TreeExperimentRow> run_tree_experiment(const TreeExperimentConfig& config);

std::string to_csv(const std::vector<TreeExperimentRow>& rows);

// G(n,p) sweep reporting how often the coherent algebra is already full.
struct GraphExperimentConfig {
    std::vector<int> n_values;
    std::uint64_t samples = 200;
    std::uint64_t master_seed = 1;
    double edge_probability = 0.5;
    int workers = 1;
    int wl_cap = 256;
};

struct GraphExperimentRow {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t master_seed = 0;
    double edge_probability = 0.5;
    double frac_full = 0.0;
    double wilson99_lo_full = 0.0;
    double wilson99_hi_full = 0.0;
    double mean_classes_over_n2 = 0.0;
};

std::vector<GraphExperimentRow> run_graph_experiment(const GraphExperimentConfig& config);

std::string to_csv(const std::vector<GraphExperimentRow>& rows);

// Fixed deterministic float formatting for the CSV surfaces ("%.10g", no
// locale dependence).
std::string format_double(double x);

}  // namespace qsym
