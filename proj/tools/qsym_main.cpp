#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "CLI11.hpp"
#include "qsym/cherry_stats.hpp"
#include "qsym/experiments.hpp"
#include "qsym/graph.hpp"
#include "qsym/graph6.hpp"
#include "qsym/prng.hpp"
#include "qsym/symmetry.hpp"
#include "qsym/tree_gen.hpp"

namespace {

using namespace qsym;

// --n accepts plain integers and a..b ranges, repeatable
std::vector<int> expand_n_values(const std::vector<std::string>& specs, std::string& error) {
    std::vector<int> out;
    for (const auto& s : specs) {
        const auto dots = s.find("..");
        try {
            if (dots == std::string::npos) {
                std::size_t used = 0;
                const int v = std::stoi(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                out.push_back(v);
            } else {
                std::size_t used = 0;
                const std::string left = s.substr(0, dots), right = s.substr(dots + 2);
                const int a = std::stoi(left, &used);
                if (used != left.size()) throw std::invalid_argument(s);
                const int b = std::stoi(right, &used);
                if (used != right.size()) throw std::invalid_argument(s);
                if (a > b) throw std::invalid_argument(s);
                for (int v = a; v <= b; ++v) out.push_back(v);
            }
        } catch (const std::exception&) {
            error = "--n: expected an integer or a..b, got '" + s + "'";
            return {};
        }
    }
    if (out.empty()) error = "--n: at least one value required";
    return out;
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 1;
    }
    return fn(f);
}

std::string cycle_string(const Permutation& p) {
    std::string s;
    std::vector<char> done(p.size(), 0);
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (done[i] || p[i] == i) continue;
        s += '(';
        int j = i;
        bool first = true;
        while (!done[j]) {
            done[j] = 1;
            if (!first) s += ' ';
            s += std::to_string(j);
            first = false;
            j = p[j];
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

mpz_class pow_z(long base, long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

int run_verify_formulas(int n_max, int cap_enum, std::ostream& out) {
    bool ok = true;
    auto report = [&](int n, const std::string& what, const mpz_class& got,
                      const mpz_class& want) {
        const bool match = got == want;
        ok = ok && match;
        out << "n=" << n << ' ' << what << '=' << got.get_str() << " expected=" << want.get_str()
            << (match ? " ok" : " MISMATCH") << '\n';
    };

    for (int n = 3; n <= n_max; ++n) {
        mpz_class count = 0, total_c = 0, total_c2 = 0;
        std::map<std::tuple<int, int, int>, long> per_slot;
        enumerate_all_trees(
            n,
            [&](const Graph& t, const std::vector<int>&) {
                ++count;
                const auto cs = find_cherries(t);
                const long k = static_cast<long>(cs.size());
                total_c += k;
                total_c2 += k * k;
                for (const auto& c : cs) per_slot[{c.u1, c.u2, c.v}]++;
            },
            cap_enum);
        report(n, "trees", count, cayley_count(n));
        if (n < 4) continue;

        MomentReport m = exact_moments(n);
        mpq_class expected_c = m.e_cn * mpq_class(cayley_count(n));
        report(n, "cherry_total", total_c,
               expected_c.get_den() == 1 ? expected_c.get_num() : mpz_class(-1));

        // every admissible position (u1 < u2, stem distinct) carries the same
        // number of trees
        const mpz_class per_position = pow_z(n - 3, n - 4);
        long positions = 0;
        bool uniform = true;
        for (int u1 = 0; u1 < n; ++u1)
            for (int u2 = u1 + 1; u2 < n; ++u2)
                for (int v = 0; v < n; ++v) {
                    if (v == u1 || v == u2) continue;
                    ++positions;
                    const auto it = per_slot.find({u1, u2, v});
                    const long got = it == per_slot.end() ? 0 : it->second;
                    if (got != per_position) uniform = false;
                }
        ok = ok && uniform;
        out << "n=" << n << " cherry_positions=" << positions
            << " count_each=" << per_position.get_str() << (uniform ? " ok" : " MISMATCH")
            << '\n';

        if (n >= 7) {
            mpq_class expected_c2 = *m.e_cn_sq * mpq_class(cayley_count(n));
            report(n, "cherry_sq_total", total_c2,
                   expected_c2.get_den() == 1 ? expected_c2.get_num() : mpz_class(-1));
        }
    }
    out << (ok ? "all formula checks passed" : "formula checks FAILED") << '\n';
    return ok ? 0 : 1;
}

std::string format_chebyshev(const TreeExperimentRow& r) {
    return r.has_chebyshev ? format_double(r.chebyshev_lower_bound) : std::string("-");
}

void render_tree_text(const std::vector<TreeExperimentRow>& rows, std::ostream& out) {
    for (const auto& r : rows)
        out << "n=" << r.n << " trials=" << r.trials << " mean_cherries="
            << format_double(r.mean_cherries) << " p_geq_1=" << format_double(r.p_geq_1)
            << " p_geq_2=" << format_double(r.p_geq_2) << " ci99_p_geq_2=["
            << format_double(r.wilson99_lo_p_geq_2) << ',' << format_double(r.wilson99_hi_p_geq_2)
            << "] frac_quantum_symmetric=" << format_double(r.frac_quantum_symmetric)
            << " frac_symmetric=" << format_double(r.frac_symmetric)
            << " exact_e_cn=" << format_double(r.exact_e_cn)
            << " chebyshev_lower_bound=" << format_chebyshev(r) << '\n';
}

void render_graph_text(const std::vector<GraphExperimentRow>& rows, std::ostream& out) {
    for (const auto& r : rows)
        out << "n=" << r.n << " samples=" << r.samples
            << " edge_probability=" << format_double(r.edge_probability)
            << " frac_full=" << format_double(r.frac_full) << " ci99_frac_full=["
            << format_double(r.wilson99_lo_full) << ',' << format_double(r.wilson99_hi_full)
            << "] mean_classes_over_n2=" << format_double(r.mean_classes_over_n2) << '\n';
}

int run_classify(std::istream& in, const ClassifyOptions& opts, std::ostream& out) {
    std::string line;
    long idx = 0;
    bool any_error = false;
    while (std::getline(in, line)) {
        ++idx;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
            const Graph g = graph6_decode(line);
            const QuantumSymmetryVerdict v = classify(g, opts);
            out << idx << " n=" << g.num_vertices();
            if (v.aut_order)
                out << " classical=" << (*v.aut_order > 1 ? "SYMMETRIC" : "ASYMMETRIC")
                    << " aut_order=" << v.aut_order->get_str();
            else if (v.status == QuantumStatus::kQuantumSymmetric)
                out << " classical=SYMMETRIC";
            else
                out << " classical=UNKNOWN";
            out << " quantum=" << to_string(v.status);
            if (v.wl_num_classes) out << " wl_classes=" << *v.wl_num_classes;
            if (v.certificate_pair)
                out << " certificate=" << cycle_string(v.certificate_pair->first) << '|'
                    << cycle_string(v.certificate_pair->second);
            out << '\n';
        } catch (const std::invalid_argument& e) {
            std::cerr << "line " << idx << ": " << e.what() << '\n';
            any_error = true;
        }
    }
    return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cherry statistics, automorphisms and coherent algebras of graphs"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand(
        "verify-formulas", "check the exact cherry-count formulas by exhaustive enumeration");
    int n_max = 8;
    int verify_cap_enum = 9;
    std::string verify_out;
    verify->add_option("--n-max", n_max, "largest n to enumerate (default 8)");
    verify->add_option("--cap-enum", verify_cap_enum, "enumeration size cap (default 9)");
    verify->add_option("--out", verify_out, "write the report to a file");

    auto* tree = app.add_subcommand("tree-experiment",
                                    "sample uniform random labeled trees and classify them");
    std::vector<std::string> tree_n;
    TreeExperimentConfig tree_cfg;
    std::string tree_format = "csv", tree_out;
    tree->add_option("--n", tree_n, "sizes, integers or a..b ranges")->required()->expected(-1);
    tree->add_option("--trials", tree_cfg.trials, "samples per size (default 10000)");
    tree->add_option("--seed", tree_cfg.master_seed, "master seed")->required();
    tree->add_option("--workers", tree_cfg.workers, "worker threads (default 1)");
    tree->add_option("--cap-brute", tree_cfg.brute_cap, "brute-force cap (default 10)");
    tree->add_option("--cap-wl", tree_cfg.wl_cap,
                     "coherent-algebra cap for this sweep (default 0 = off)");
    tree->add_option("--format", tree_format, "csv or text")
        ->check(CLI::IsMember({"csv", "text"}));
    tree->add_option("--out", tree_out, "write rows to a file");

    auto* graph = app.add_subcommand("graph-experiment",
                                     "sample G(n,p) and measure coherent-algebra fullness");
    std::vector<std::string> graph_n;
    GraphExperimentConfig graph_cfg;
    std::string graph_format = "csv", graph_out;
    graph->add_option("--n", graph_n, "sizes, integers or a..b ranges")->required()->expected(-1);
    graph->add_option("--samples", graph_cfg.samples, "samples per size (default 200)");
    graph->add_option("--p", graph_cfg.edge_probability, "edge probability (default 0.5)");
    graph->add_option("--seed", graph_cfg.master_seed, "master seed")->required();
    graph->add_option("--workers", graph_cfg.workers, "worker threads (default 1)");
    graph->add_option("--cap-wl", graph_cfg.wl_cap, "stabilization cap (default 256)");
    graph->add_option("--format", graph_format, "csv or text")
        ->check(CLI::IsMember({"csv", "text"}));
    graph->add_option("--out", graph_out, "write rows to a file");

    auto* cls = app.add_subcommand("classify",
                                   "classify graph6 lines from a file or standard input");
    ClassifyOptions cls_opts;
    std::string cls_in, cls_out;
    cls->add_option("--in", cls_in, "input file (default: standard input)");
    cls->add_option("--cap-brute", cls_opts.brute_cap, "brute-force cap (default 10)");
    cls->add_option("--cap-wl", cls_opts.wl_cap, "stabilization cap (default 256)");
    cls->add_option("--out", cls_out, "write verdict lines to a file");

    auto* sample = app.add_subcommand("sample-trees", "emit uniform random trees as graph6");
    int sample_n = 0;
    std::uint64_t sample_count = 10, sample_seed = 0;
    std::string sample_out;
    sample->add_option("--n", sample_n, "tree size")->required();
    sample->add_option("--count", sample_count, "number of trees (default 10)");
    sample->add_option("--seed", sample_seed, "master seed")->required();
    sample->add_option("--out", sample_out, "write graph6 lines to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            if (n_max < 4 || n_max > verify_cap_enum) {
                std::cerr << "verify-formulas: --n-max must lie in 4..cap-enum\n";
                return 2;
            }
            return with_output(verify_out,
                               [&](std::ostream& o) { return run_verify_formulas(n_max, verify_cap_enum, o); });
        }
        if (tree->parsed()) {
            std::string err;
            tree_cfg.n_values = expand_n_values(tree_n, err);
            if (!err.empty()) {
                std::cerr << err << '\n';
                return 2;
            }
            const auto rows = run_tree_experiment(tree_cfg);
            return with_output(tree_out, [&](std::ostream& o) {
                if (tree_format == "csv")
                    o << to_csv(rows);
                else
                    render_tree_text(rows, o);
                return 0;
            });
        }
        if (graph->parsed()) {
            std::string err;
            graph_cfg.n_values = expand_n_values(graph_n, err);
            if (!err.empty()) {
                std::cerr << err << '\n';
                return 2;
            }
            const auto rows = run_graph_experiment(graph_cfg);
            return with_output(graph_out, [&](std::ostream& o) {
                if (graph_format == "csv")
                    o << to_csv(rows);
                else
                    render_graph_text(rows, o);
                return 0;
            });
        }
        if (cls->parsed()) {
            if (!cls_in.empty()) {
                std::ifstream f(cls_in);
                if (!f) {
                    std::cerr << "error: cannot open '" << cls_in << "'\n";
                    return 1;
                }
                return with_output(cls_out,
                                   [&](std::ostream& o) { return run_classify(f, cls_opts, o); });
            }
            return with_output(cls_out,
                               [&](std::ostream& o) { return run_classify(std::cin, cls_opts, o); });
        }
        if (sample->parsed()) {
            if (sample_n < 2) {
                std::cerr << "sample-trees: --n must be at least 2\n";
                return 2;
            }
            return with_output(sample_out, [&](std::ostream& o) {
                for (std::uint64_t i = 0; i < sample_count; ++i) {
                    SplitMix64 rng(derive_seed(sample_seed, static_cast<std::uint64_t>(sample_n), i));
                    o << graph6_encode(sample_uniform_tree(sample_n, rng)) << '\n';
                }
                return 0;
            });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
