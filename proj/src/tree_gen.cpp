#include "qsym/tree_gen.hpp"

#include <stdexcept>

namespace qsym {

mpz_class cayley_count(int n) {
    if (n < 1) throw std::invalid_argument("cayley_count: n must be positive");
    if (n <= 2) return 1;
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 2));
    return r;
}

Graph prufer_decode(const std::vector<int>& seq, int n) {
    if (n < 2) throw std::invalid_argument("prufer_decode: n must be at least 2");
    if (static_cast<int>(seq.size()) != n - 2)
        throw std::invalid_argument("prufer_decode: sequence length must be n-2");
    std::vector<int> degree(n, 1);
    for (int x : seq) {
        if (x < 0 || x >= n) throw std::invalid_argument("prufer_decode: entry out of range");
        ++degree[x];
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        edges.emplace_back(leaf, x);
        if (--degree[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return Graph(n, edges);
}

std::vector<int> prufer_encode(const Graph& tree) {
    const int n = tree.num_vertices();
    if (n < 2 || !tree.is_tree()) throw std::invalid_argument("prufer_encode: input is not a tree on >= 2 vertices");
    // Parent pointers toward root n-1; the root is never the smallest leaf.
    std::vector<int> parent(n, -1);
    std::vector<int> stack{n - 1};
    parent[n - 1] = n - 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : tree.neighbors(v)) {
            if (parent[w] == -1) {
                parent[w] = v;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> degree = tree.degrees();
    std::vector<int> seq;
    seq.reserve(n - 2);
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int i = 0; i < n - 2; ++i) {
        const int p = parent[leaf];
        seq.push_back(p);
        if (--degree[p] == 1 && p < ptr) {
            leaf = p;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    return seq;
}

Graph sample_uniform_tree(int n, SplitMix64& rng) {
    if (n < 2) throw std::invalid_argument("sample_uniform_tree: n must be at least 2");
    std::vector<int> seq(n - 2);
    for (int& x : seq) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    return prufer_decode(seq, n);
}

Graph sample_gnp(int n, double p, SplitMix64& rng) {
    if (n < 1) throw std::invalid_argument("sample_gnp: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p must lie in [0,1]");
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (rng.next_unit() < p) edges.emplace_back(u, v);
    return Graph(n, edges);
}

void enumerate_all_trees(int n,
                         const std::function<void(const Graph&, const std::vector<int>&)>& fn,
                         int cap) {
    if (n < 2 || n > cap)
        throw std::invalid_argument("enumerate_all_trees: n must be in 2.." + std::to_string(cap));
    std::vector<int> seq(n - 2, 0);
    for (;;) {
        fn(prufer_decode(seq, n), seq);
        int i = n - 3;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
}

}  // namespace qsym
