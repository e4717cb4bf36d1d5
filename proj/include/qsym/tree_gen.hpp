#pragma once

#include <functional>
#include <vector>

#include <gmpxx.h>

#include "qsym/graph.hpp"
#include "qsym/prng.hpp"

namespace qsym {

// Number of labeled trees on n vertices: n^(n-2) for n >= 2, and 1 for n = 1.
mpz_class cayley_count(int n);

// Builds the labeled tree for a Pruefer sequence of length n-2 with entries in
// 0..n-1, using the O(n) smallest-leaf decoder. n >= 2; n == 2 takes the empty
// sequence.
Graph prufer_decode(const std::vector<int>& seq, int n);

// Inverse of prufer_decode: repeatedly strips the smallest leaf. Requires a
// tree on n >= 2 vertices.
std::vector<int> prufer_encode(const Graph& tree);

// Uniform labeled tree via a uniform Pruefer sequence. n >= 2.
Graph sample_uniform_tree(int n, SplitMix64& rng);

// G(n,p): each unordered pair is an edge independently with probability p.
Graph sample_gnp(int n, double p, SplitMix64& rng);

// Calls fn for every labeled tree on n vertices, in lexicographic order of the
// Pruefer sequence. The cap guards against accidental huge loops; the default
// keeps full enumeration at desk scale (9^7 is about 4.8M trees).
void enumerate_all_trees(int n,
                         const std::function<void(const Graph&, const std::vector<int>&)>& fn,
                         int cap = 9);

}  // namespace qsym
