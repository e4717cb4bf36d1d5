#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qsym/coherent.hpp"
#include "qsym/graph.hpp"
#include "qsym/prng.hpp"
#include "qsym/symmetry.hpp"
#include "qsym/tree_gen.hpp"

using namespace qsym;

namespace {

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph(n, e);
}

// independent closure, used to confirm reported generators really generate
mpz_class closure_size(const std::vector<Permutation>& gens, int n) {
    std::set<Permutation> seen{identity_permutation(n)};
    std::vector<Permutation> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Permutation y = compose(g, x);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return mpz_class(static_cast<unsigned long>(seen.size()));
}

// smallest asymmetric tree: arms of lengths 1, 2 and 3 from vertex 0
const Graph kAsym7(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}});

}  // namespace

TEST_CASE("brute force on named graphs") {
    CHECK(brute_force_automorphisms(path_graph(3)).group_order == 2);
    CHECK(brute_force_automorphisms(Graph(4, {{0, 1}, {0, 2}, {0, 3}})).group_order == 6);

    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(brute_force_automorphisms(k4).group_order == 24);

    Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    AutomorphismReport r = brute_force_automorphisms(c5);
    CHECK(r.group_order == 10);
    CHECK_FALSE(r.is_trivial);
    for (const auto& g : r.generators) CHECK(is_automorphism(c5, g));
    CHECK(closure_size(r.generators, 5) == 10);

    AutomorphismReport t = brute_force_automorphisms(kAsym7);
    CHECK(t.group_order == 1);
    CHECK(t.is_trivial);
    CHECK(t.generators.empty());

    CHECK_THROWS_AS(brute_force_automorphisms(Graph(11, {})), std::invalid_argument);
}

TEST_CASE("for_each_automorphism streams the whole group") {
    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    std::set<Permutation> all;
    for_each_automorphism(c4, 10, [&](const Permutation& p) {
        CHECK(is_automorphism(c4, p));
        all.insert(p);
    });
    CHECK(all.size() == 8);
    CHECK(all.count(identity_permutation(4)) == 1);
}

TEST_CASE("tree engine matches brute force on all 6-vertex trees") {
    enumerate_all_trees(6, [](const Graph& t, const std::vector<int>&) {
        mpz_class brute = 0;
        for_each_automorphism(t, 6, [&](const Permutation&) { ++brute; });
        AutomorphismReport ahu = tree_automorphism_order(t);
        REQUIRE(ahu.group_order == brute);
        for (const auto& g : ahu.generators) REQUIRE(is_automorphism(t, g));
        REQUIRE(closure_size(ahu.generators, 6) == ahu.group_order);
    });
}

TEST_CASE("tree engine on shapes with known groups") {
    CHECK(tree_automorphism_order(path_graph(2)).group_order == 2);
    CHECK(tree_automorphism_order(path_graph(4)).group_order == 2);
    CHECK(tree_automorphism_order(path_graph(9)).group_order == 2);

    // star with 21 leaves: |Aut| = 21!, far beyond 64 bits
    std::vector<std::pair<int, int>> se;
    for (int v = 1; v <= 21; ++v) se.push_back({0, v});
    mpz_class fact21;
    mpz_fac_ui(fact21.get_mpz_t(), 21);
    CHECK(tree_automorphism_order(Graph(22, se)).group_order == fact21);

    Graph dstar(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
    AutomorphismReport d = tree_automorphism_order(dstar);
    CHECK(d.group_order == 8);  // both leaf swaps and the central flip
    CHECK(closure_size(d.generators, 6) == 8);

    AutomorphismReport a = tree_automorphism_order(kAsym7);
    CHECK(a.group_order == 1);
    CHECK(a.generators.empty());

    // stays instant far beyond the brute-force range
    CHECK(tree_automorphism_order(path_graph(20000)).group_order == 2);

    CHECK_THROWS_AS(tree_automorphism_order(Graph(3, {{0, 1}, {1, 2}, {0, 2}})),
                    std::invalid_argument);
}

TEST_CASE("cherry swaps") {
    Graph dstar(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
    auto cs = find_cherries(dstar);
    REQUIRE(cs.size() == 2);
    Permutation s = cherry_swap(cs[0], 6);
    CHECK(s == Permutation{0, 1, 3, 2, 4, 5});
    CHECK(is_automorphism(dstar, s));
    CHECK(compose(s, s) == identity_permutation(6));
    CHECK_THROWS_AS(cherry_swap(Cherry{2, 3, 0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(cherry_swap(Cherry{3, 2, 0}, 6), std::invalid_argument);
}

TEST_CASE("disjoint automorphism pairs") {
    Graph dstar(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
    auto pair = find_disjoint_automorphism_pair(dstar);
    REQUIRE(pair.has_value());
    const auto& [f, g] = *pair;
    CHECK(is_automorphism(dstar, f));
    CHECK(is_automorphism(dstar, g));
    CHECK(f != identity_permutation(6));
    CHECK(g != identity_permutation(6));
    for (int v = 0; v < 6; ++v) CHECK(!(f[v] != v && g[v] != v));

    // a single transposition overall
    CHECK_FALSE(find_disjoint_automorphism_pair(path_graph(4)).has_value());
    // all leaf swaps of a 3-star overlap
    CHECK_FALSE(find_disjoint_automorphism_pair(Graph(4, {{0, 1}, {0, 2}, {0, 3}})).has_value());
    CHECK_FALSE(find_disjoint_automorphism_pair(kAsym7).has_value());

    // no cherries here, found through the brute-force route
    auto kk = find_disjoint_automorphism_pair(Graph(4, {{0, 1}, {2, 3}}));
    REQUIRE(kk.has_value());
    CHECK(is_automorphism(Graph(4, {{0, 1}, {2, 3}}), kk->first));

    // beyond the cap and without cherries the search honestly gives up
    CHECK_FALSE(find_disjoint_automorphism_pair(path_graph(40)).has_value());
}

TEST_CASE("classification pipeline") {
    Graph dstar(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
    QuantumSymmetryVerdict v = classify(dstar);
    CHECK(v.status == QuantumStatus::kQuantumSymmetric);
    REQUIRE(v.certificate_pair.has_value());
    CHECK(is_automorphism(dstar, v.certificate_pair->first));
    CHECK(is_automorphism(dstar, v.certificate_pair->second));

    // two disjoint same-side swaps, no cherries involved
    Graph k33(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    CHECK(classify(k33).status == QuantumStatus::kQuantumSymmetric);

    QuantumSymmetryVerdict s = classify(Graph(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(s.status == QuantumStatus::kSymmetricUndeterminedQuantum);
    REQUIRE(s.aut_order.has_value());
    CHECK(*s.aut_order == 6);

    // same frozen instance as the coherent tests: full algebra, trivial group
    SplitMix64 rng(101);
    Graph g10 = sample_gnp(10, 0.5, rng);
    QuantumSymmetryVerdict a = classify(g10);
    CHECK(a.status == QuantumStatus::kQuantumAsymmetric);
    REQUIRE(a.wl_num_classes.has_value());
    CHECK(*a.wl_num_classes == 100);

    // the tree engine settles the classical side at any size
    QuantumSymmetryVerdict p = classify(path_graph(300), {.brute_cap = 10, .wl_cap = 0});
    CHECK(p.status == QuantumStatus::kSymmetricUndeterminedQuantum);
    REQUIRE(p.aut_order.has_value());
    CHECK(*p.aut_order == 2);

    QuantumSymmetryVerdict t = classify(kAsym7, {.brute_cap = 10, .wl_cap = 0});
    CHECK(t.status == QuantumStatus::kAsymmetricUndeterminedQuantum);
    CHECK(*t.aut_order == 1);

    // a big cycle with every engine disabled stays undecided
    std::vector<std::pair<int, int>> ce;
    for (int i = 0; i < 60; ++i) ce.push_back({i, (i + 1) % 60});
    QuantumSymmetryVerdict u = classify(Graph(60, ce), {.brute_cap = 10, .wl_cap = 0});
    CHECK(u.status == QuantumStatus::kUndetermined);
    CHECK_FALSE(u.aut_order.has_value());
}

TEST_CASE("status names") {
    CHECK(to_string(QuantumStatus::kQuantumSymmetric) == "QUANTUM_SYMMETRIC");
    CHECK(to_string(QuantumStatus::kQuantumAsymmetric) == "QUANTUM_ASYMMETRIC");
    CHECK(to_string(QuantumStatus::kSymmetricUndeterminedQuantum) ==
          "SYMMETRIC_UNDETERMINED_QUANTUM");
    CHECK(to_string(QuantumStatus::kAsymmetricUndeterminedQuantum) ==
          "ASYMMETRIC_UNDETERMINED_QUANTUM");
    CHECK(to_string(QuantumStatus::kUndetermined) == "UNDETERMINED");
}
