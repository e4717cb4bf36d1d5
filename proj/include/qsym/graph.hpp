#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qsym {

// Permutation of {0,...,n-1}, stored as the image vector: p[i] is where i goes.
using Permutation = std::vector<int>;

bool is_valid_permutation(const Permutation& p);

Permutation identity_permutation(int n);

// Composition acts left of the argument: compose(p, q)[i] == p[q[i]].
Permutation compose(const Permutation& p, const Permutation& q);

Permutation inverse(const Permutation& p);

// Undirected simple graph on vertices 0..n-1. Adjacency lists are kept sorted,
// the edge list is normalized (u < v, lexicographic order), and construction
// rejects loops, duplicate edges and out-of-range endpoints.
class Graph {
public:
    Graph() = default;
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const;
    bool is_connected() const;
    bool is_tree() const;
    std::vector<int> degrees() const;

    // Row-major n*n adjacency matrix of 0/1 entries.
    std::vector<std::uint8_t> adjacency_matrix() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// Image of a graph under a relabeling: edge {u,v} becomes {p[u],p[v]}.
Graph relabel(const Graph& g, const Permutation& p);

// True iff p maps the edge set of g onto itself.
bool is_automorphism(const Graph& g, const Permutation& p);

// Plain text form: first line "n m", then one "u v" line per edge.
std::string format_edge_list(const Graph& g);
Graph parse_edge_list(const std::string& text);

}  // namespace qsym
