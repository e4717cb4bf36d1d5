#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qsym/graph.hpp"

namespace qsym {

// Triple (u1,u2,v): u1 < u2 both of degree 1 and adjacent to v, deg(v) = 3.
struct Cherry {
    int u1;
    int u2;
    int v;

    friend bool operator==(const Cherry&, const Cherry&) = default;
};

// All cherries of g, normalized u1 < u2, in lexicographic order. Works on any
// graph; the degree conditions are checked locally.
std::vector<Cherry> find_cherries(const Graph& g);

bool is_cherry(const Graph& g, const Cherry& c);

// Probability that a fixed distinct triple carries a cherry in a uniform
// random labeled tree: (n-3)^(n-4) / n^(n-2). Requires n >= 4.
mpq_class expectation_epsilon(int n);

enum class OverlapCase {
    kAllDistinct,      // six distinct vertices: (n-6)^(n-6) / n^(n-2), n >= 7
    kIdenticalCherry,  // the same triple twice: equals expectation_epsilon
    kOther,            // any partial overlap: probability 0
};

mpq_class expectation_epsilon_pair(int n, OverlapCase c);

// Exact moments of the cherry count C_n over uniform random labeled trees.
// The first moment needs n >= 4; the second-moment fields are filled for
// n >= 7 only and left empty below that instead of returning anything
// uncertain. All values are exact rationals.
//
// Note on the second moment: summing E[eps_s eps_t] over ordered pairs of
// normalized slots gives one diagonal copy per slot, so
//   E[C_n^2] = 1/4 * n!/(n-6)! * (n-6)^(n-6) / n^(n-2)  +  E[C_n].
// (Writing 2*E[C_n] for the diagonal double-counts it: the mirrored index
// assignment is excluded by the i2 < i1 normalization. The enumeration
// oracle pins the sums at n=7 to 7980/16807, and E[C_7] = 6720/16807 with
// C_7 <= 2 makes any larger second moment impossible.)
struct MomentReport {
    int n = 0;
    mpq_class e_cn;
    std::optional<mpq_class> e_cn_sq;
    std::optional<mpq_class> var_cn;
    std::optional<mpq_class> var_cn_minus_1;           // equals var_cn (shift invariance)
    std::optional<mpq_class> var_ratio;                // Var[C_n] / E[C_n]^2
    std::optional<mpq_class> shifted_var_ratio;        // Var[C_n-1] / E[C_n-1]^2
    std::optional<mpq_class> chebyshev_two_cherries;   // 1 - var_ratio - shifted_var_ratio
};

MomentReport exact_moments(int n);

// Same quantities evaluated in log space (log1p/expm1 against the dominant
// cancellations), safe up to n around 10^6 where the exact powers have
// megabytes of digits. Requires n >= 7.
struct AsymptoticMoments {
    int n = 0;
    double e_cn = 0.0;
    double e_cn_sq = 0.0;
    double var_cn = 0.0;
    double var_ratio = 0.0;
    double shifted_var_ratio = 0.0;
    double chebyshev_two_cherries = 0.0;
};

AsymptoticMoments asymptotic_moments(int n);

// Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

// z for two-sided 99% coverage, fixed project-wide.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

// Monte Carlo over uniform random labeled trees. Sampling is counter-based:
// trial i uses a generator seeded from (master_seed, n, i), so the summary is
// identical no matter how trials are partitioned across workers.
struct TrialSummary {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    std::map<int, std::uint64_t> counts_hist;  // cherry count -> frequency
    double mean = 0.0;
    double p_geq_1 = 0.0;
    double p_geq_2 = 0.0;
    WilsonInterval ci_geq_1;
    WilsonInterval ci_geq_2;
};

TrialSummary monte_carlo_cherries(int n, std::uint64_t trials, std::uint64_t master_seed,
                                  int workers = 1);

}  // namespace qsym
