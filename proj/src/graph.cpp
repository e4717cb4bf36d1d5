#include "qsym/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsym {

bool is_valid_permutation(const Permutation& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    for (int x : p) {
        if (x < 0 || x >= n || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

Permutation identity_permutation(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
    Permutation r(p.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    adj_.resize(n);
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: loop edge");
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("graph: duplicate edge");
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<bool> seen(n_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

bool Graph::is_tree() const {
    return n_ >= 1 && num_edges() == n_ - 1 && is_connected();
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
}

std::vector<std::uint8_t> Graph::adjacency_matrix() const {
    std::vector<std::uint8_t> a(static_cast<std::size_t>(n_) * n_, 0);
    for (auto [u, v] : edges_) {
        a[static_cast<std::size_t>(u) * n_ + v] = 1;
        a[static_cast<std::size_t>(v) * n_ + u] = 1;
    }
    return a;
}

Graph relabel(const Graph& g, const Permutation& p) {
    if (static_cast<int>(p.size()) != g.num_vertices() || !is_valid_permutation(p))
        throw std::invalid_argument("relabel: not a permutation of the vertex set");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.num_edges());
    for (auto [u, v] : g.edges()) edges.emplace_back(p[u], p[v]);
    return Graph(g.num_vertices(), edges);
}

bool is_automorphism(const Graph& g, const Permutation& p) {
    if (static_cast<int>(p.size()) != g.num_vertices() || !is_valid_permutation(p))
        return false;
    for (auto [u, v] : g.edges())
        if (!g.has_edge(p[u], p[v])) return false;
    return true;
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated input");
        edges.emplace_back(u, v);
    }
    return Graph(n, edges);
}

}  // namespace qsym
