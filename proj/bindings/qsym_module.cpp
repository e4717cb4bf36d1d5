#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qsym/cherry_stats.hpp"
#include "qsym/coherent.hpp"
#include "qsym/experiments.hpp"
#include "qsym/graph.hpp"
#include "qsym/graph6.hpp"
#include "qsym/prng.hpp"
#include "qsym/symmetry.hpp"
#include "qsym/tree_gen.hpp"

namespace py = pybind11;
using namespace qsym;

namespace {

py::object py_int(const mpz_class& z) {
    return py::reinterpret_steal<py::object>(
        PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object py_fraction(const mpq_class& q) {
    return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

py::object opt_fraction(const std::optional<mpq_class>& q) {
    return q ? py_fraction(*q) : py::none();
}

py::dict moments_dict(const MomentReport& m) {
    py::dict d;
    d["n"] = m.n;
    d["e_cn"] = py_fraction(m.e_cn);
    d["e_cn_sq"] = opt_fraction(m.e_cn_sq);
    d["var_cn"] = opt_fraction(m.var_cn);
    d["var_ratio"] = opt_fraction(m.var_ratio);
    d["shifted_var_ratio"] = opt_fraction(m.shifted_var_ratio);
    d["chebyshev_two_cherries"] = opt_fraction(m.chebyshev_two_cherries);
    return d;
}

py::dict verdict_dict(const QuantumSymmetryVerdict& v) {
    py::dict d;
    d["status"] = to_string(v.status);
    d["certificate"] = v.certificate_pair
                           ? py::cast(*v.certificate_pair)
                           : py::object(py::none());
    d["wl_classes"] = v.wl_num_classes ? py::cast(*v.wl_num_classes) : py::object(py::none());
    d["aut_order"] = v.aut_order ? py_int(*v.aut_order) : py::object(py::none());
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "graph symmetry toolkit: cherries, automorphisms, coherent algebras";

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("n"),
             py::arg("edges"))
        .def_property_readonly("n", &Graph::num_vertices)
        .def_property_readonly("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("is_tree", &Graph::is_tree)
        .def("is_connected", &Graph::is_connected)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.num_vertices()) + ", edges=" +
                   format_edge_list(g) + ")";
        });

    m.def("graph6_decode", &graph6_decode, py::arg("text"));
    m.def("graph6_encode", &graph6_encode, py::arg("graph"));

    m.def("cayley_count", [](int n) { return py_int(cayley_count(n)); }, py::arg("n"));
    m.def("prufer_decode", &prufer_decode, py::arg("seq"), py::arg("n"));
    m.def("prufer_encode", &prufer_encode, py::arg("tree"));
    m.def(
        "sample_tree",
        [](int n, std::uint64_t seed) {
            SplitMix64 rng(seed);
            return sample_uniform_tree(n, rng);
        },
        py::arg("n"), py::arg("seed"));
    m.def(
        "sample_gnp",
        [](int n, double p, std::uint64_t seed) {
            SplitMix64 rng(seed);
            return sample_gnp(n, p, rng);
        },
        py::arg("n"), py::arg("p"), py::arg("seed"));

    m.def(
        "find_cherries",
        [](const Graph& g) {
            std::vector<std::tuple<int, int, int>> out;
            for (const auto& c : find_cherries(g)) out.emplace_back(c.u1, c.u2, c.v);
            return out;
        },
        py::arg("graph"));

    m.def("exact_moments", [](int n) { return moments_dict(exact_moments(n)); }, py::arg("n"));
    m.def(
        "asymptotic_moments",
        [](int n) {
            AsymptoticMoments a = asymptotic_moments(n);
            py::dict d;
            d["n"] = a.n;
            d["e_cn"] = a.e_cn;
            d["var_ratio"] = a.var_ratio;
            d["shifted_var_ratio"] = a.shifted_var_ratio;
            d["chebyshev_two_cherries"] = a.chebyshev_two_cherries;
            return d;
        },
        py::arg("n"));
    m.def(
        "wilson_interval",
        [](std::uint64_t successes, std::uint64_t trials, double z) {
            WilsonInterval w = wilson_interval(successes, trials, z);
            return std::make_pair(w.lo, w.hi);
        },
        py::arg("successes"), py::arg("trials"), py::arg("z") = kWilsonZ99);

    m.def(
        "automorphism_order",
        [](const Graph& g, int brute_cap) {
            return py_int(g.is_tree() ? tree_automorphism_order(g).group_order
                                      : brute_force_automorphisms(g, brute_cap).group_order);
        },
        py::arg("graph"), py::arg("brute_cap") = 10,
        "Exact |Aut(G)|: O(n log n) engine for trees, backtracking otherwise.");

    m.def(
        "wl2_stabilize",
        [](const Graph& g, int cap) {
            CoherentConfiguration c = wl2_stabilize(g, cap);
            py::dict d;
            d["num_classes"] = c.num_classes;
            d["rounds"] = c.rounds;
            d["full"] = is_full(c);
            d["class_of"] = c.class_of;
            return d;
        },
        py::arg("graph"), py::arg("cap") = 256);

    m.def(
        "classify",
        [](const Graph& g, int brute_cap, int wl_cap) {
            return verdict_dict(classify(g, {brute_cap, wl_cap}));
        },
        py::arg("graph"), py::arg("brute_cap") = 10, py::arg("wl_cap") = 256);

    m.def(
        "run_tree_experiment",
        [](const std::vector<int>& n_values, std::uint64_t trials, std::uint64_t seed,
           int workers, int brute_cap, int wl_cap) {
            TreeExperimentConfig cfg;
            cfg.n_values = n_values;
            cfg.trials = trials;
            cfg.master_seed = seed;
            cfg.workers = workers;
            cfg.brute_cap = brute_cap;
            cfg.wl_cap = wl_cap;
            py::list rows;
            for (const auto& r : run_tree_experiment(cfg)) {
                py::dict d;
                d["n"] = r.n;
                d["trials"] = r.trials;
                d["mean_cherries"] = r.mean_cherries;
                d["p_geq_1"] = r.p_geq_1;
                d["p_geq_2"] = r.p_geq_2;
                d["wilson99_lo_p_geq_2"] = r.wilson99_lo_p_geq_2;
                d["wilson99_hi_p_geq_2"] = r.wilson99_hi_p_geq_2;
                d["frac_quantum_symmetric"] = r.frac_quantum_symmetric;
                d["frac_symmetric"] = r.frac_symmetric;
                d["exact_e_cn"] = r.exact_e_cn;
                d["chebyshev_lower_bound"] =
                    r.has_chebyshev ? py::cast(r.chebyshev_lower_bound) : py::object(py::none());
                rows.append(d);
            }
            return rows;
        },
        py::arg("n_values"), py::arg("trials") = 10000, py::arg("seed") = 1,
        py::arg("workers") = 1, py::arg("brute_cap") = 10, py::arg("wl_cap") = 0);

    m.def(
        "run_graph_experiment",
        [](const std::vector<int>& n_values, std::uint64_t samples, std::uint64_t seed, double p,
           int workers, int wl_cap) {
            GraphExperimentConfig cfg;
            cfg.n_values = n_values;
            cfg.samples = samples;
            cfg.master_seed = seed;
            cfg.edge_probability = p;
            cfg.workers = workers;
            cfg.wl_cap = wl_cap;
            py::list rows;
            for (const auto& r : run_graph_experiment(cfg)) {
                py::dict d;
                d["n"] = r.n;
                d["samples"] = r.samples;
                d["edge_probability"] = r.edge_probability;
                d["frac_full"] = r.frac_full;
                d["wilson99_lo_full"] = r.wilson99_lo_full;
                d["wilson99_hi_full"] = r.wilson99_hi_full;
                d["mean_classes_over_n2"] = r.mean_classes_over_n2;
                rows.append(d);
            }
            return rows;
        },
        py::arg("n_values"), py::arg("samples") = 200, py::arg("seed") = 1, py::arg("p") = 0.5,
        py::arg("workers") = 1, py::arg("wl_cap") = 256);
}
