#include "qsym/symmetry.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "qsym/coherent.hpp"

namespace qsym {

namespace {

bool is_identity(const Permutation& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

std::set<Permutation> closure(const std::vector<Permutation>& gens, int n) {
    std::set<Permutation> known{identity_permutation(n)};
    std::vector<Permutation> frontier(known.begin(), known.end());
    while (!frontier.empty()) {
        std::vector<Permutation> fresh;
        for (const Permutation& x : frontier) {
            for (const Permutation& h : gens) {
                Permutation y = compose(h, x);
                if (known.insert(y).second) fresh.push_back(std::move(y));
            }
        }
        frontier.swap(fresh);
    }
    return known;
}

}  // namespace

void for_each_automorphism(const Graph& g, int cap,
                           const std::function<void(const Permutation&)>& fn) {
    const int n = g.num_vertices();
    if (n > cap)
        throw std::invalid_argument("for_each_automorphism: n exceeds cap " + std::to_string(cap));
    const std::vector<std::uint8_t> adj = g.adjacency_matrix();
    const std::vector<int> deg = g.degrees();
    Permutation perm(n, -1);
    std::vector<bool> used(n, false);

    auto recurse = [&](auto&& self, int v) -> void {
        if (v == n) {
            fn(perm);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || deg[w] != deg[v]) continue;
            bool ok = true;
            for (int u = 0; u < v; ++u) {
                if (adj[static_cast<std::size_t>(u) * n + v] !=
                    adj[static_cast<std::size_t>(perm[u]) * n + w]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[w] = true;
            perm[v] = w;
            self(self, v + 1);
            perm[v] = -1;
            used[w] = false;
        }
    };
    recurse(recurse, 0);
}

AutomorphismReport brute_force_automorphisms(const Graph& g, int cap) {
    AutomorphismReport report;
    const int n = g.num_vertices();
    unsigned long long count = 0;
    std::set<Permutation> known{identity_permutation(n)};
    for_each_automorphism(g, cap, [&](const Permutation& p) {
        ++count;
        if (!known.count(p)) {
            report.generators.push_back(p);
            known = closure(report.generators, n);
        }
    });
    report.group_order = static_cast<unsigned long>(count);
    report.is_trivial = count == 1;
    return report;
}

namespace {

// Rooted view for the canonical-encoding pass. Bicentral trees get a virtual
// root (id = n) above the two centers so the central flip falls out of the
// same identical-sibling machinery as every other swap.
struct Rooted {
    int n = 0;
    int root = 0;
    std::vector<std::vector<int>> children;
    std::vector<int> bottom_up;  // every node, children before parents
};

std::vector<int> find_centers(const Graph& t) {
    const int n = t.num_vertices();
    if (n == 1) return {0};
    std::vector<int> deg = t.degrees();
    std::vector<int> layer;
    std::vector<bool> removed(n, false);
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1) layer.push_back(v);
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next_layer;
        for (int v : layer) {
            removed[v] = true;
            for (int w : t.neighbors(v))
                if (!removed[w] && --deg[w] == 1) next_layer.push_back(w);
        }
        layer.swap(next_layer);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

Rooted root_at_center(const Graph& t) {
    const int n = t.num_vertices();
    const std::vector<int> centers = find_centers(t);
    Rooted r;
    r.n = n;
    const bool bicentral = centers.size() == 2;
    const int node_count = n + (bicentral ? 1 : 0);
    r.root = bicentral ? n : centers[0];
    r.children.assign(node_count, {});
    std::vector<int> parent(node_count, -1);
    std::vector<int> bfs;
    bfs.reserve(node_count);
    bfs.push_back(r.root);
    parent[r.root] = r.root;
    if (bicentral) {
        for (int c : centers) {
            parent[c] = n;
            r.children[n].push_back(c);
            bfs.push_back(c);
        }
    }
    for (std::size_t i = bicentral ? 1 : 0; i < bfs.size(); ++i) {
        const int v = bfs[i];
        for (int w : t.neighbors(v)) {
            if (parent[w] == -1) {
                parent[w] = v;
                r.children[v].push_back(w);
                bfs.push_back(w);
            }
        }
    }
    r.bottom_up.assign(bfs.rbegin(), bfs.rend());
    return r;
}

}  // namespace

AutomorphismReport tree_automorphism_order(const Graph& t) {
    if (!t.is_tree())
        throw std::invalid_argument("tree_automorphism_order: input is not a tree");
    const int n = t.num_vertices();
    AutomorphismReport report;
    if (n == 1) return report;

    Rooted r = root_at_center(t);

    // Canonical code per node: intern the sorted list of child codes.
    std::map<std::vector<int>, int> intern;
    std::vector<int> code(r.children.size(), -1);
    std::vector<int> child_codes;
    for (int v : r.bottom_up) {
        auto& kids = r.children[v];
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            return std::tie(code[a], a) < std::tie(code[b], b);
        });
        child_codes.clear();
        for (int c : kids) child_codes.push_back(code[c]);
        const auto [it, inserted] = intern.try_emplace(child_codes, static_cast<int>(intern.size()));
        code[v] = it->second;
    }

    // Identical adjacent siblings swap; the pairing walks both subtrees in
    // the shared (code, id) child order, which matches equal codes by
    // position.
    auto map_subtree = [&](auto&& self, int a, int b, Permutation& p) -> void {
        p[a] = b;
        p[b] = a;
        const auto& ka = r.children[a];
        const auto& kb = r.children[b];
        for (std::size_t i = 0; i < ka.size(); ++i) self(self, ka[i], kb[i], p);
    };

    mpz_class order = 1;
    for (std::size_t v = 0; v < r.children.size(); ++v) {
        const auto& kids = r.children[v];
        std::size_t i = 0;
        while (i < kids.size()) {
            std::size_t j = i;
            while (j < kids.size() && code[kids[j]] == code[kids[i]]) {
                if (j > i) {
                    Permutation p = identity_permutation(n);
                    map_subtree(map_subtree, kids[j - 1], kids[j], p);
                    report.generators.push_back(std::move(p));
                }
                ++j;
            }
            mpz_class fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(j - i));
            order *= fact;
            i = j;
        }
    }
    report.group_order = order;
    report.is_trivial = order == 1;
    return report;
}

Permutation cherry_swap(const Cherry& c, int n) {
    if (c.u1 < 0 || c.v < 0 || c.u2 >= n || c.v >= n || c.u1 >= c.u2 || c.u1 == c.v ||
        c.u2 == c.v)
        throw std::invalid_argument("cherry_swap: invalid cherry for n points");
    Permutation p = identity_permutation(n);
    std::swap(p[c.u1], p[c.u2]);
    return p;
}

std::optional<std::pair<Permutation, Permutation>> find_disjoint_automorphism_pair(
    const Graph& g, int brute_cap) {
    const int n = g.num_vertices();
    const std::vector<Cherry> cherries = find_cherries(g);
    for (std::size_t i = 0; i < cherries.size(); ++i) {
        for (std::size_t j = i + 1; j < cherries.size(); ++j) {
            const Cherry &a = cherries[i], &b = cherries[j];
            const int va[3] = {a.u1, a.u2, a.v};
            const int vb[3] = {b.u1, b.u2, b.v};
            bool disjoint = true;
            for (int x : va)
                for (int y : vb)
                    if (x == y) disjoint = false;
            if (disjoint) return std::make_pair(cherry_swap(a, n), cherry_swap(b, n));
        }
    }
    if (n <= brute_cap && n <= 32) {
        std::map<std::uint32_t, Permutation> by_support;
        for_each_automorphism(g, brute_cap, [&](const Permutation& p) {
            std::uint32_t mask = 0;
            for (int v = 0; v < n; ++v)
                if (p[v] != v) mask |= 1u << v;
            if (mask != 0) by_support.try_emplace(mask, p);
        });
        for (auto it1 = by_support.begin(); it1 != by_support.end(); ++it1) {
            for (auto it2 = std::next(it1); it2 != by_support.end(); ++it2) {
                if ((it1->first & it2->first) == 0)
                    return std::make_pair(it1->second, it2->second);
            }
        }
    }
    return std::nullopt;
}

std::string to_string(QuantumStatus s) {
    switch (s) {
        case QuantumStatus::kQuantumSymmetric: return "QUANTUM_SYMMETRIC";
        case QuantumStatus::kQuantumAsymmetric: return "QUANTUM_ASYMMETRIC";
        case QuantumStatus::kSymmetricUndeterminedQuantum: return "SYMMETRIC_UNDETERMINED_QUANTUM";
        case QuantumStatus::kAsymmetricUndeterminedQuantum: return "ASYMMETRIC_UNDETERMINED_QUANTUM";
        case QuantumStatus::kUndetermined: return "UNDETERMINED";
    }
    return "UNDETERMINED";
}

namespace {

std::optional<mpz_class> classical_order(const Graph& g, const ClassifyOptions& options) {
    if (g.is_tree()) return tree_automorphism_order(g).group_order;
    if (g.num_vertices() <= options.brute_cap)
        return brute_force_automorphisms(g, options.brute_cap).group_order;
    return std::nullopt;
}

}  // namespace

QuantumSymmetryVerdict classify(const Graph& g, const ClassifyOptions& options) {
    QuantumSymmetryVerdict verdict;
    if (auto pair = find_disjoint_automorphism_pair(g, options.brute_cap)) {
        const auto& [s, t] = *pair;
        bool sound = is_automorphism(g, s) && is_automorphism(g, t) && !is_identity(s) &&
                     !is_identity(t);
        for (std::size_t v = 0; sound && v < s.size(); ++v)
            if (s[v] != static_cast<int>(v) && t[v] != static_cast<int>(v)) sound = false;
        if (!sound) throw std::logic_error("classify: certificate failed re-verification");
        verdict.status = QuantumStatus::kQuantumSymmetric;
        verdict.certificate_pair = std::move(pair);
        return verdict;
    }

    if (options.wl_cap > 0 && g.num_vertices() <= options.wl_cap) {
        const CoherentConfiguration conf = wl2_stabilize(g, options.wl_cap);
        verdict.wl_num_classes = conf.num_classes;
        if (is_full(conf)) {
            if (auto order = classical_order(g, options)) {
                if (*order != 1)
                    throw std::logic_error(
                        "classify: full coherent algebra with nontrivial automorphisms");
                verdict.aut_order = std::move(*order);
            }
            verdict.status = QuantumStatus::kQuantumAsymmetric;
            return verdict;
        }
    }

    if (auto order = classical_order(g, options)) {
        verdict.status = *order > 1 ? QuantumStatus::kSymmetricUndeterminedQuantum
                                    : QuantumStatus::kAsymmetricUndeterminedQuantum;
        verdict.aut_order = std::move(*order);
        return verdict;
    }
    verdict.status = QuantumStatus::kUndetermined;
    return verdict;
}

}  // namespace qsym
