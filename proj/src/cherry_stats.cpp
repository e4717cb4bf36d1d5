#include "qsym/cherry_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "qsym/prng.hpp"
#include "qsym/tree_gen.hpp"

namespace qsym {

namespace {

mpz_class pow_z(long base, long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

std::vector<Cherry> find_cherries(const Graph& g) {
    std::vector<Cherry> out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) != 3) continue;
        int leaves[3];
        int k = 0;
        for (int u : g.neighbors(v))
            if (g.degree(u) == 1) leaves[k++] = u;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) out.push_back({leaves[i], leaves[j], v});
    }
    std::sort(out.begin(), out.end(), [](const Cherry& a, const Cherry& b) {
        return std::tie(a.u1, a.u2, a.v) < std::tie(b.u1, b.u2, b.v);
    });
    return out;
}

bool is_cherry(const Graph& g, const Cherry& c) {
    return c.u1 < c.u2 && c.u1 != c.v && c.u2 != c.v && g.has_edge(c.u1, c.v) &&
           g.has_edge(c.u2, c.v) && g.degree(c.u1) == 1 && g.degree(c.u2) == 1 &&
           g.degree(c.v) == 3;
}

mpq_class expectation_epsilon(int n) {
    if (n < 4) throw std::invalid_argument("expectation_epsilon: n must be at least 4");
    return ratio(pow_z(n - 3, n - 4), pow_z(n, n - 2));
}

mpq_class expectation_epsilon_pair(int n, OverlapCase c) {
    switch (c) {
        case OverlapCase::kAllDistinct:
            if (n < 7)
                throw std::invalid_argument(
                    "expectation_epsilon_pair: the all-distinct case needs n >= 7");
            return ratio(pow_z(n - 6, n - 6), pow_z(n, n - 2));
        case OverlapCase::kIdenticalCherry:
            return expectation_epsilon(n);
        case OverlapCase::kOther:
            return mpq_class(0);
    }
    throw std::invalid_argument("expectation_epsilon_pair: unknown case");
}

MomentReport exact_moments(int n) {
    if (n < 4) throw std::invalid_argument("exact_moments: n must be at least 4");
    MomentReport r;
    r.n = n;
    const mpz_class denom = pow_z(n, n - 2);
    const mpz_class slots = mpz_class(n) * (n - 1) * (n - 2) / 2;
    r.e_cn = ratio(slots * pow_z(n - 3, n - 4), denom);
    if (n < 7) return r;

    mpz_class falling = 1;
    for (int k = 0; k < 6; ++k) falling *= n - k;
    const mpq_class pairs_term = ratio(falling / 4 * pow_z(n - 6, n - 6), denom);
    r.e_cn_sq = pairs_term + r.e_cn;
    r.var_cn = *r.e_cn_sq - r.e_cn * r.e_cn;
    r.var_cn_minus_1 = r.var_cn;
    r.var_ratio = *r.var_cn / (r.e_cn * r.e_cn);
    const mpq_class shifted_mean = r.e_cn - 1;
    if (shifted_mean != 0) {
        r.shifted_var_ratio = *r.var_cn_minus_1 / (shifted_mean * shifted_mean);
        r.chebyshev_two_cherries = 1 - *r.var_ratio - *r.shifted_var_ratio;
    }
    return r;
}

AsymptoticMoments asymptotic_moments(int n) {
    if (n < 7) throw std::invalid_argument("asymptotic_moments: n must be at least 7");
    AsymptoticMoments r;
    r.n = n;
    const double nd = n;
    const double log_shrink = std::log1p(-3.0 / nd);
    r.e_cn = (nd * (nd - 1) * (nd - 2) / (2.0 * nd * nd)) * std::exp((n - 4) * log_shrink);

    // Ratio of the disjoint-pair term to E^2 stays near 1, so evaluate its log
    // and recover the variance ratio through expm1 to keep the cancellation
    // out of the subtraction.
    const double poly = (nd - 3) * (nd - 4) * (nd - 5) / (nd * (nd - 1) * (nd - 2));
    const double log_pair_over_e2 =
        std::log(poly) + (n - 6) * std::log1p(-3.0 / (nd - 3)) - (n - 2) * log_shrink;
    r.var_ratio = std::expm1(log_pair_over_e2) + 1.0 / r.e_cn;
    r.var_cn = r.var_ratio * r.e_cn * r.e_cn;
    r.e_cn_sq = r.var_cn + r.e_cn * r.e_cn;
    const double shifted = r.e_cn - 1.0;
    r.shifted_var_ratio = r.var_cn / (shifted * shifted);
    r.chebyshev_two_cherries = 1.0 - r.var_ratio - r.shifted_var_ratio;
    return r;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double t = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / t;
    const double z2t = z * z / t;
    const double center = (p + z2t / 2.0) / (1.0 + z2t);
    const double half = z * std::sqrt(p * (1.0 - p) / t + z2t / (4.0 * t)) / (1.0 + z2t);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

long long count_cherries(const Graph& g) {
    long long c = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) != 3) continue;
        int leaves = 0;
        for (int u : g.neighbors(v))
            if (g.degree(u) == 1) ++leaves;
        c += leaves * (leaves - 1) / 2;
    }
    return c;
}

}  // namespace

TrialSummary monte_carlo_cherries(int n, std::uint64_t trials, std::uint64_t master_seed,
                                  int workers) {
    if (n < 2) throw std::invalid_argument("monte_carlo_cherries: n must be at least 2");
    if (workers < 1) throw std::invalid_argument("monte_carlo_cherries: workers must be positive");

    std::vector<std::map<int, std::uint64_t>> partial(workers);
    auto run_range = [&](int w, std::uint64_t lo, std::uint64_t hi) {
        auto& hist = partial[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            SplitMix64 rng(derive_seed(master_seed, static_cast<std::uint64_t>(n), i));
            const Graph t = sample_uniform_tree(n, rng);
            ++hist[static_cast<int>(count_cherries(t))];
        }
    };
    const std::uint64_t chunk = trials / workers;
    const std::uint64_t rem = trials % workers;
    std::vector<std::thread> pool;
    std::uint64_t lo = 0;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
        pool.emplace_back(run_range, w, lo, hi);
        lo = hi;
    }
    for (auto& th : pool) th.join();

    TrialSummary s;
    s.n = n;
    s.trials = trials;
    s.master_seed = master_seed;
    for (const auto& hist : partial)
        for (const auto& [c, f] : hist) s.counts_hist[c] += f;

    std::uint64_t total = 0, geq1 = 0, geq2 = 0;
    for (const auto& [c, f] : s.counts_hist) {
        total += static_cast<std::uint64_t>(c) * f;
        if (c >= 1) geq1 += f;
        if (c >= 2) geq2 += f;
    }
    if (trials > 0) {
        s.mean = static_cast<double>(total) / static_cast<double>(trials);
        s.p_geq_1 = static_cast<double>(geq1) / static_cast<double>(trials);
        s.p_geq_2 = static_cast<double>(geq2) / static_cast<double>(trials);
    }
    s.ci_geq_1 = wilson_interval(geq1, trials, kWilsonZ99);
    s.ci_geq_2 = wilson_interval(geq2, trials, kWilsonZ99);
    return s;
}

}  // namespace qsym
