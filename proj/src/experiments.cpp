#include "qsym/experiments.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsym/cherry_stats.hpp"
#include "qsym/coherent.hpp"
#include "qsym/prng.hpp"
#include "qsym/symmetry.hpp"
#include "qsym/tree_gen.hpp"

namespace qsym {

namespace {

// Distinguishes the graph-sampling stream from the tree-sampling stream for
// the same n under one master seed.
constexpr std::uint64_t kGraphStreamTag = 1ULL << 32;

struct TreeTally {
    std::uint64_t sum_cherries = 0;
    std::uint64_t geq_1 = 0;
    std::uint64_t geq_2 = 0;
    std::uint64_t quantum_symmetric = 0;
    std::uint64_t symmetric = 0;

    void merge(const TreeTally& other) {
        sum_cherries += other.sum_cherries;
        geq_1 += other.geq_1;
        geq_2 += other.geq_2;
        quantum_symmetric += other.quantum_symmetric;
        symmetric += other.symmetric;
    }
};

template <typename Tally, typename PerSample>
Tally run_partitioned(std::uint64_t count, int workers, const PerSample& per_sample) {
    std::vector<Tally> partial(workers);
    auto run_range = [&](int w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) per_sample(i, partial[w]);
    };
    const std::uint64_t chunk = count / workers;
    const std::uint64_t rem = count % workers;
    std::vector<std::thread> pool;
    std::uint64_t lo = 0;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
        pool.emplace_back(run_range, w, lo, hi);
        lo = hi;
    }
    for (auto& th : pool) th.join();
    Tally total;
    for (const Tally& t : partial) total.merge(t);
    return total;
}

double frac(std::uint64_t part, std::uint64_t whole) {
    return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

// Exact rationals stay affordable far past the sweep sizes used here; beyond
// the cutoff the log-space path takes over.
constexpr int kExactMomentCutoff = 512;

}  // namespace

std::vector<TreeExperimentRow> run_tree_experiment(const TreeExperimentConfig& config) {
    if (config.workers < 1) throw std::invalid_argument("tree experiment: workers must be positive");
    for (int n : config.n_values)
        if (n < 2) throw std::invalid_argument("tree experiment: n must be at least 2");

    std::vector<TreeExperimentRow> rows;
    rows.reserve(config.n_values.size());
    for (int n : config.n_values) {
        const ClassifyOptions options{config.brute_cap, config.wl_cap};
        auto per_sample = [&](std::uint64_t i, TreeTally& tally) {
            SplitMix64 rng(derive_seed(config.master_seed, static_cast<std::uint64_t>(n), i));
            const Graph tree = sample_uniform_tree(n, rng);
            const std::size_t cherries = find_cherries(tree).size();
            tally.sum_cherries += cherries;
            if (cherries >= 1) ++tally.geq_1;
            if (cherries >= 2) ++tally.geq_2;
            const QuantumSymmetryVerdict verdict = classify(tree, options);
            if (verdict.status == QuantumStatus::kQuantumSymmetric) {
                ++tally.quantum_symmetric;
                ++tally.symmetric;
            } else if (verdict.aut_order && *verdict.aut_order > 1) {
                ++tally.symmetric;
            }
        };
        const TreeTally tally =
            run_partitioned<TreeTally>(config.trials, config.workers, per_sample);

        TreeExperimentRow row;
        row.n = n;
        row.trials = config.trials;
        row.master_seed = config.master_seed;
        row.mean_cherries = frac(tally.sum_cherries, config.trials);
        row.p_geq_1 = frac(tally.geq_1, config.trials);
        row.p_geq_2 = frac(tally.geq_2, config.trials);
        const WilsonInterval ci = wilson_interval(tally.geq_2, config.trials, kWilsonZ99);
        row.wilson99_lo_p_geq_2 = ci.lo;
        row.wilson99_hi_p_geq_2 = ci.hi;
        row.frac_quantum_symmetric = frac(tally.quantum_symmetric, config.trials);
        row.frac_symmetric = frac(tally.symmetric, config.trials);
        if (n >= 4 && n <= kExactMomentCutoff) {
            const MomentReport report = exact_moments(n);
            row.exact_e_cn = mpq_get_d(report.e_cn.get_mpq_t());
            if (report.chebyshev_two_cherries) {
                row.chebyshev_lower_bound = mpq_get_d(report.chebyshev_two_cherries->get_mpq_t());
                row.has_chebyshev = true;
            }
        } else if (n > kExactMomentCutoff) {
            const AsymptoticMoments m = asymptotic_moments(n);
            row.exact_e_cn = m.e_cn;
            row.chebyshev_lower_bound = m.chebyshev_two_cherries;
            row.has_chebyshev = true;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string to_csv(const std::vector<TreeExperimentRow>& rows) {
    std::ostringstream out;
    out << "n,trials,master_seed,mean_cherries,p_geq_1,p_geq_2,wilson99_lo_p_geq_2,"
           "wilson99_hi_p_geq_2,frac_quantum_symmetric,frac_symmetric,exact_e_cn,"
           "chebyshev_lower_bound\n";
    for (const TreeExperimentRow& r : rows) {
        out << r.n << ',' << r.trials << ',' << r.master_seed << ','
            << format_double(r.mean_cherries) << ',' << format_double(r.p_geq_1) << ','
            << format_double(r.p_geq_2) << ',' << format_double(r.wilson99_lo_p_geq_2) << ','
            << format_double(r.wilson99_hi_p_geq_2) << ','
            << format_double(r.frac_quantum_symmetric) << ',' << format_double(r.frac_symmetric)
            << ',' << format_double(r.exact_e_cn) << ','
            << (r.has_chebyshev ? format_double(r.chebyshev_lower_bound) : std::string()) << '\n';
    }
    return out.str();
}

std::vector<GraphExperimentRow> run_graph_experiment(const GraphExperimentConfig& config) {
    if (config.workers < 1)
        throw std::invalid_argument("graph experiment: workers must be positive");
    if (!(config.edge_probability >= 0.0 && config.edge_probability <= 1.0))
        throw std::invalid_argument("graph experiment: edge probability must lie in [0,1]");
    for (int n : config.n_values) {
        if (n < 1) throw std::invalid_argument("graph experiment: n must be positive");
        if (n > config.wl_cap)
            throw std::invalid_argument("graph experiment: n exceeds the stabilization cap");
    }

    struct GraphTally {
        std::uint64_t full = 0;
        std::uint64_t class_sum = 0;

        void merge(const GraphTally& other) {
            full += other.full;
            class_sum += other.class_sum;
        }
    };

    std::vector<GraphExperimentRow> rows;
    rows.reserve(config.n_values.size());
    for (int n : config.n_values) {
        auto per_sample = [&](std::uint64_t i, GraphTally& tally) {
            SplitMix64 rng(derive_seed(config.master_seed,
                                       kGraphStreamTag | static_cast<std::uint64_t>(n), i));
            const Graph g = sample_gnp(n, config.edge_probability, rng);
            const CoherentConfiguration conf = wl2_stabilize(g, config.wl_cap);
            tally.class_sum += static_cast<std::uint64_t>(conf.num_classes);
            if (is_full(conf)) ++tally.full;
        };
        const GraphTally tally =
            run_partitioned<GraphTally>(config.samples, config.workers, per_sample);

        GraphExperimentRow row;
        row.n = n;
        row.samples = config.samples;
        row.master_seed = config.master_seed;
        row.edge_probability = config.edge_probability;
        row.frac_full = frac(tally.full, config.samples);
        const WilsonInterval ci = wilson_interval(tally.full, config.samples, kWilsonZ99);
        row.wilson99_lo_full = ci.lo;
        row.wilson99_hi_full = ci.hi;
        row.mean_classes_over_n2 =
            frac(tally.class_sum, config.samples) / (static_cast<double>(n) * n);
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(const std::vector<GraphExperimentRow>& rows) {
    std::ostringstream out;
    out << "n,samples,master_seed,edge_probability,frac_full,wilson99_lo_full,"
           "wilson99_hi_full,mean_classes_over_n2\n";
    for (const GraphExperimentRow& r : rows) {
        out << r.n << ',' << r.samples << ',' << r.master_seed << ','
            << format_double(r.edge_probability) << ',' << format_double(r.frac_full) << ','
            << format_double(r.wilson99_lo_full) << ',' << format_double(r.wilson99_hi_full)
            << ',' << format_double(r.mean_classes_over_n2) << '\n';
    }
    return out.str();
}

}  // namespace qsym
