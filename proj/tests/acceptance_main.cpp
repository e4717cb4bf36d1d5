// Acceptance gate: one line per check, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include <gmpxx.h>

#include "qsym/cherry_stats.hpp"
#include "qsym/coherent.hpp"
#include "qsym/experiments.hpp"
#include "qsym/graph.hpp"
#include "qsym/prng.hpp"
#include "qsym/symmetry.hpp"
#include "qsym/tree_gen.hpp"

using namespace qsym;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

mpz_class pow_z(long base, long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

// edges of an 8-vertex tree fit 7 * 6 bits, an injective key
std::uint64_t edge_key(const Graph& t) {
    std::uint64_t k = 0;
    for (const auto& [u, v] : t.edges()) k = (k << 6) | static_cast<std::uint64_t>(u * 8 + v);
    return k;
}

void check_enumeration_and_roundtrips() {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    for (int n = 2; n <= 8 && ok; ++n) {
        std::unordered_set<std::uint64_t> seen;
        long count = 0;
        bool valid = true, roundtrip = true;
        enumerate_all_trees(n, [&](const Graph& t, const std::vector<int>& seq) {
            ++count;
            valid = valid && t.is_tree();
            roundtrip = roundtrip && prufer_encode(t) == seq;
            seen.insert(edge_key(t));
        });
        const mpz_class expected = cayley_count(n);
        if (!valid || !roundtrip || expected != count ||
            seen.size() != static_cast<std::size_t>(count)) {
            ok = false;
            detail = "n=" + std::to_string(n) + " count=" + std::to_string(count) + " distinct=" +
                     std::to_string(seen.size()) + " expected=" + expected.get_str() +
                     (valid ? "" : " invalid-tree") + (roundtrip ? "" : " roundtrip-broken");
        }
    }
    const double dt = seconds_since(t0);
    if (ok && dt >= 60.0) {
        ok = false;
        detail = "n=8 sweep too slow: " + fmt(dt) + " s";
    }
    if (ok) detail = "262144 distinct trees at n=8, all round trips identities, " + fmt(dt) + " s";
    report(ok, "tree enumeration counts and round trips (n=2..8)", detail);
}

void check_cherry_position_uniformity() {
    bool ok = true;
    std::string detail = "per-position counts";
    for (int n = 4; n <= 6; ++n) {
        std::map<std::tuple<int, int, int>, long> per_slot;
        enumerate_all_trees(n, [&](const Graph& t, const std::vector<int>&) {
            for (const auto& c : find_cherries(t)) per_slot[{c.u1, c.u2, c.v}]++;
        });
        const mpz_class expected = pow_z(n - 3, n - 4);
        for (int u1 = 0; u1 < n && ok; ++u1)
            for (int u2 = u1 + 1; u2 < n && ok; ++u2)
                for (int v = 0; v < n; ++v) {
                    if (v == u1 || v == u2) continue;
                    const auto it = per_slot.find({u1, u2, v});
                    const long got = it == per_slot.end() ? 0 : it->second;
                    if (expected != got) {
                        ok = false;
                        detail = "n=" + std::to_string(n) + " position (" + std::to_string(u1) +
                                 "," + std::to_string(u2) + "," + std::to_string(v) + ") count " +
                                 std::to_string(got) + " != " + expected.get_str();
                        break;
                    }
                }
        if (ok) detail += " " + expected.get_str();
    }
    report(ok, "every cherry position carried by (n-3)^(n-4) trees (n=4,5,6)", detail);
}

void check_cherry_sums() {
    // frozen sums from independent exhaustive sweeps
    const long frozen_c[] = {12, 60, 540, 6720, 105000};
    const long frozen_c2_7 = 7980, frozen_c2_8 = 125160;
    bool ok = true;
    std::string detail;
    for (int n = 4; n <= 8 && ok; ++n) {
        mpz_class total_c = 0, total_c2 = 0;
        enumerate_all_trees(n, [&](const Graph& t, const std::vector<int>&) {
            const long k = static_cast<long>(find_cherries(t).size());
            total_c += k;
            total_c2 += k * k;
        });
        MomentReport m = exact_moments(n);
        const mpq_class want_c = m.e_cn * mpq_class(cayley_count(n));
        if (total_c != frozen_c[n - 4] || want_c.get_den() != 1 || want_c.get_num() != total_c) {
            ok = false;
            detail = "n=" + std::to_string(n) + " sum C = " + total_c.get_str() +
                     ", formula gives " + want_c.get_str();
            break;
        }
        if (n >= 7) {
            const long frozen = n == 7 ? frozen_c2_7 : frozen_c2_8;
            const mpq_class want_c2 = *m.e_cn_sq * mpq_class(cayley_count(n));
            if (total_c2 != frozen || want_c2.get_den() != 1 || want_c2.get_num() != total_c2) {
                ok = false;
                detail = "n=" + std::to_string(n) + " sum C^2 = " + total_c2.get_str() +
                         ", formula gives " + want_c2.get_str();
                break;
            }
        }
    }
    if (ok)
        detail = "sum C matches n^(n-2) E[C] for n=4..8, sum C^2 matches for n=7 (7980) and "
                 "n=8 (125160)";
    report(ok, "enumerated cherry sums equal the exact moments", detail);
}

void check_variance_decay() {
    bool ok = true;
    std::string detail;

    // cross-check the two evaluation paths where the rationals stay affordable
    double worst = 0.0;
    for (int n = 7; n <= 64; ++n) {
        MomentReport ex = exact_moments(n);
        AsymptoticMoments as = asymptotic_moments(n);
        const double r1 = ex.var_ratio->get_d(), r2 = ex.shifted_var_ratio->get_d();
        worst = std::max(worst, std::fabs(as.var_ratio - r1) / r1);
        worst = std::max(worst, std::fabs(as.shifted_var_ratio - r2) / r2);
    }
    if (worst > 1e-10) {
        ok = false;
        detail = "paths disagree, worst relative error " + fmt(worst);
    }

    // exact rationals along the affordable part of the grid
    mpq_class prev_q1(-1), prev_q2(-1);
    for (long n = 10; n <= 10000 && ok; n *= 10) {
        MomentReport m = exact_moments(static_cast<int>(n));
        if (prev_q1 >= 0 && (*m.var_ratio >= prev_q1 || *m.shifted_var_ratio >= prev_q2)) {
            ok = false;
            detail = "exact ratios fail to decrease at n=" + std::to_string(n);
        }
        prev_q1 = *m.var_ratio;
        prev_q2 = *m.shifted_var_ratio;
    }

    // full decade grid in log space
    double p1 = 1e300, p2 = 1e300, last1 = 0, last2 = 0;
    for (long n = 10; n <= 1000000 && ok; n *= 10) {
        AsymptoticMoments a = asymptotic_moments(static_cast<int>(n));
        if (a.var_ratio >= p1 || a.shifted_var_ratio >= p2) {
            ok = false;
            detail = "ratios fail to decrease at n=" + std::to_string(n);
        }
        p1 = a.var_ratio;
        p2 = a.shifted_var_ratio;
        last1 = a.var_ratio;
        last2 = a.shifted_var_ratio;
    }
    if (ok && (last1 >= 1e-4 || last2 >= 1e-4)) {
        ok = false;
        detail = "ratios at n=10^6 not below 1e-4: " + fmt(last1) + ", " + fmt(last2);
    }
    if (ok)
        detail = "strictly decreasing on {10..10^6}, " + fmt(last1) + " and " + fmt(last2) +
                 " at 10^6, paths agree to " + fmt(worst);
    report(ok, "variance ratios decay along the decade grid", detail);
}

std::vector<TreeExperimentRow> g_sweep_rows;

void check_two_cherries_trend() {
    const auto t0 = std::chrono::steady_clock::now();
    TreeExperimentConfig cfg;
    cfg.n_values = {20, 50, 100, 200, 500};
    cfg.trials = 10000;
    cfg.master_seed = 424242;
    cfg.workers = 8;
    g_sweep_rows = run_tree_experiment(cfg);
    const double dt = seconds_since(t0);

    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < g_sweep_rows.size(); ++i) {
        const auto& r = g_sweep_rows[i];
        if (i > 0 && r.wilson99_hi_p_geq_2 < g_sweep_rows[i - 1].wilson99_lo_p_geq_2) {
            ok = false;
            detail = "significant decrease of p_geq_2 at n=" + std::to_string(r.n);
        }
        if (r.has_chebyshev && r.p_geq_2 < r.chebyshev_lower_bound) {
            ok = false;
            detail = "chebyshev bound violated at n=" + std::to_string(r.n) + ": " +
                     fmt(r.p_geq_2) + " < " + fmt(r.chebyshev_lower_bound);
        }
    }
    if (ok && dt >= 300.0) {
        ok = false;
        detail = "sweep too slow: " + fmt(dt) + " s";
    }
    if (ok) {
        std::ostringstream s;
        s << "p_geq_2 =";
        for (const auto& r : g_sweep_rows) s << ' ' << fmt(r.p_geq_2);
        s << " over n = {20,50,100,200,500}, bounds respected, " << fmt(dt) << " s";
        detail = s.str();
    }
    report(ok, "two cherries become the norm as trees grow", detail);
}

void check_quantum_symmetric_fraction() {
    bool ok = !g_sweep_rows.empty();
    std::string detail = ok ? "" : "sweep unavailable";
    for (const auto& r : g_sweep_rows) {
        if (r.frac_quantum_symmetric < r.p_geq_2) {
            ok = false;
            detail = "fraction below p_geq_2 at n=" + std::to_string(r.n);
        }
        if (r.n == 500 && r.frac_quantum_symmetric <= 0.95) {
            ok = false;
            detail = "fraction at n=500 is " + fmt(r.frac_quantum_symmetric);
        }
    }

    // independent certificate soundness: rebuild trees from fixed seeds and
    // verify the produced pair move disjoint vertex sets
    long certified = 0;
    for (int i = 0; i < 200 && ok; ++i) {
        SplitMix64 rng(derive_seed(9001, 500, static_cast<std::uint64_t>(i)));
        Graph t = sample_uniform_tree(500, rng);
        if (find_cherries(t).size() < 2) continue;
        QuantumSymmetryVerdict v = classify(t, {.brute_cap = 10, .wl_cap = 0});
        if (v.status != QuantumStatus::kQuantumSymmetric || !v.certificate_pair) {
            ok = false;
            detail = "tree with two cherries not certified quantum symmetric";
            break;
        }
        const auto& [a, b] = *v.certificate_pair;
        bool sound = is_automorphism(t, a) && is_automorphism(t, b) &&
                     a != identity_permutation(500) && b != identity_permutation(500);
        for (int vx = 0; vx < 500 && sound; ++vx) sound = !(a[vx] != vx && b[vx] != vx);
        if (!sound) {
            ok = false;
            detail = "certificate failed independent verification";
            break;
        }
        ++certified;
    }
    if (ok)
        detail = "fraction >= p_geq_2 at every n, " + fmt(g_sweep_rows.back().frac_quantum_symmetric) +
                 " at n=500, " + std::to_string(certified) + "/200 spot certificates sound";
    report(ok, "disjoint cherry pairs certify quantum symmetry", detail);
}

void check_full_algebra_trend() {
    GraphExperimentConfig cfg;
    cfg.n_values = {10, 20, 30};
    cfg.samples = 200;
    cfg.master_seed = 77;
    cfg.workers = 8;
    const auto rows = run_graph_experiment(cfg);

    bool ok = true;
    std::string detail;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].wilson99_hi_full < rows[i - 1].wilson99_lo_full) {
            ok = false;
            detail = "significant decrease of the full fraction at n=" + std::to_string(rows[i].n);
        }

    // every full instance at n=10 must have a trivial group
    long full_count = 0, violations = 0;
    for (int i = 0; i < 200; ++i) {
        SplitMix64 rng(derive_seed(31337, 10, static_cast<std::uint64_t>(i)));
        Graph g = sample_gnp(10, 0.5, rng);
        if (!is_full(wl2_stabilize(g))) continue;
        ++full_count;
        if (brute_force_automorphisms(g).group_order != 1) ++violations;
    }
    if (violations != 0) {
        ok = false;
        detail = std::to_string(violations) + " full instances with nontrivial group";
    }
    if (ok) {
        std::ostringstream s;
        s << "full fraction =";
        for (const auto& r : rows) s << ' ' << fmt(r.frac_full);
        s << " over n = {10,20,30}; " << full_count << "/200 full at n=10, all with trivial group";
        detail = s.str();
    }
    report(ok, "random graphs stabilize to the full coherent algebra", detail);
}

void check_coherence_axioms() {
    bool ok = true;
    std::string detail;
    long checked = 0, refined = 0;

    // every labeled graph on up to 5 vertices
    for (int n = 1; n <= 5 && ok; ++n) {
        const int bits = n * (n - 1) / 2;
        for (long mask = 0; mask < (1L << bits) && ok; ++mask) {
            std::vector<std::pair<int, int>> edges;
            int b = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++b)
                    if (mask & (1L << b)) edges.push_back({u, v});
            Graph g(n, edges);
            CoherentConfiguration w = wl2_stabilize(g);
            OrbitalConfiguration o = orbital_configuration(g);
            AxiomViolation viol;
            if (!verify_coherence_axioms(w, &viol) || !verify_coherence_axioms(o, &viol) ||
                !partition_refines(o, w)) {
                ok = false;
                detail = "n=" + std::to_string(n) + " mask=" + std::to_string(mask) +
                         " axiom=" + viol.axiom;
            }
            ++checked;
            ++refined;
        }
    }

    // 500 random graphs up to n = 40, refinement cross-checked within the
    // brute-force range
    for (int i = 0; i < 500 && ok; ++i) {
        SplitMix64 rng(derive_seed(271828, 40, static_cast<std::uint64_t>(i)));
        const int n = 1 + static_cast<int>(rng.next_below(40));
        const double p = 0.1 + 0.8 * rng.next_unit();
        Graph g = sample_gnp(n, p, rng);
        CoherentConfiguration w = wl2_stabilize(g);
        if (!verify_coherence_axioms(w)) {
            ok = false;
            detail = "axioms fail on a random graph with n=" + std::to_string(n);
        }
        ++checked;
        if (ok && n <= 10) {
            if (!partition_refines(orbital_configuration(g), w)) {
                ok = false;
                detail = "refinement fails on a random graph with n=" + std::to_string(n);
            }
            ++refined;
        }
    }
    if (ok)
        detail = std::to_string(checked) + " configurations pass, orbital refinement on " +
                 std::to_string(refined) + " brute-force-feasible instances";
    report(ok, "stabilized configurations satisfy the coherence axioms", detail);
}

void check_tree_engine_agreement() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    long trees = 0, with_cherry = 0;
    enumerate_all_trees(8, [&](const Graph& t, const std::vector<int>&) {
        if (!ok) return;
        ++trees;
        long brute = 0;
        for_each_automorphism(t, 8, [&](const Permutation&) { ++brute; });
        AutomorphismReport ahu = tree_automorphism_order(t);
        if (ahu.group_order != brute) {
            ok = false;
            detail = "order mismatch " + ahu.group_order.get_str() + " vs " +
                     std::to_string(brute) + " on tree " + format_edge_list(t);
            return;
        }
        if (!find_cherries(t).empty()) {
            ++with_cherry;
            if (ahu.group_order < 2) {
                ok = false;
                detail = "cherry present but trivial group on tree " + format_edge_list(t);
            }
        }
    });
    const double dt = seconds_since(t0);
    if (ok)
        detail = std::to_string(trees) + " trees agree, " + std::to_string(with_cherry) +
                 " with a cherry all symmetric, " + fmt(dt) + " s";
    report(ok, "tree engine equals brute force on all 8-vertex trees", detail);
}

void check_cli_determinism() {
    const std::string base = std::string(QSYM_CLI_PATH) +
                             " tree-experiment --n 20 50 100 --trials 10000 --seed 424242";
    bool ok = true;
    std::string detail;
    std::vector<std::string> outputs;
    for (int workers : {1, 4, 8}) {
        const std::string path = "acceptance_w" + std::to_string(workers) + ".csv";
        const std::string cmd = base + " --workers " + std::to_string(workers) + " --out " + path;
        const int rc = std::system(cmd.c_str());
        if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
            ok = false;
            detail = "command failed with workers=" + std::to_string(workers);
            break;
        }
        std::ifstream f(path, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        outputs.push_back(s.str());
    }
    if (ok) {
        if (outputs[0].empty() || outputs[0].rfind("n,trials,", 0) != 0) {
            ok = false;
            detail = "unexpected CSV shape";
        } else if (outputs[1] != outputs[0] || outputs[2] != outputs[0]) {
            ok = false;
            detail = "byte difference between worker counts";
        } else {
            detail = "identical " + std::to_string(outputs[0].size()) +
                     " CSV bytes under 1, 4 and 8 workers";
        }
    }
    report(ok, "identical seeds give identical CSV bytes under any worker count", detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    check_enumeration_and_roundtrips();
    check_cherry_position_uniformity();
    check_cherry_sums();
    check_variance_decay();
    check_two_cherries_trend();
    check_quantum_symmetric_fraction();
    check_full_algebra_trend();
    check_coherence_axioms();
    check_tree_engine_agreement();
    check_cli_determinism();
    std::cout << "acceptance: " << (10 - g_failures) << "/10 checks passed in "
              << fmt(seconds_since(t0)) << " s" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
