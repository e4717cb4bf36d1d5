#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qsym/cherry_stats.hpp"
#include "qsym/graph.hpp"

namespace qsym {

struct AutomorphismReport {
    mpz_class group_order = 1;
    std::vector<Permutation> generators;  // generate the full group; empty iff trivial
    bool is_trivial = true;
};

// Streams every automorphism (identity included) in lexicographic image
// order, via backtracking with degree pruning. n must stay within cap.
void for_each_automorphism(const Graph& g, int cap,
                           const std::function<void(const Permutation&)>& fn);

// Exact order plus a greedy generating set (each kept generator enlarges the
// group generated so far, so there are at most log2 |Aut| of them). Memory
// scales with |Aut| for the closure bookkeeping; fine for the small-n graphs
// this is meant for, pathological for complete graphs near the cap.
AutomorphismReport brute_force_automorphisms(const Graph& g, int cap = 10);

// |Aut| of a tree in O(n log n) via canonical rooted encodings at the center
// (bicentral trees get a virtual root over the central edge): identical child
// subtrees at a vertex contribute k! and the generators are the corresponding
// sibling swaps. Works at the n >= 10^3 scale where brute force is hopeless.
AutomorphismReport tree_automorphism_order(const Graph& t);

// The transposition (u1 u2) on n points. Swapping the two leaves of a cherry
// is always an automorphism of the host graph.
Permutation cherry_swap(const Cherry& c, int n);

// Two non-trivial automorphisms with disjoint supports, if the search finds
// them: first via two vertex-disjoint cherries (their leaf swaps), otherwise
// via exhaustive pair search when n is within the brute-force cap. An empty
// result is NOT a proof that no such pair exists.
std::optional<std::pair<Permutation, Permutation>> find_disjoint_automorphism_pair(
    const Graph& g, int brute_cap = 10);

enum class QuantumStatus {
    kQuantumSymmetric,              // certified: disjoint-support automorphism pair
    kQuantumAsymmetric,             // certified: full coherent algebra
    kSymmetricUndeterminedQuantum,  // |Aut| > 1 but neither criterion fired
    kAsymmetricUndeterminedQuantum, // |Aut| = 1 but coherent algebra not full
    kUndetermined,                  // caps prevented even the classical decision
};

std::string to_string(QuantumStatus s);

struct ClassifyOptions {
    int brute_cap = 10;
    int wl_cap = 256;  // 0 disables the coherent-algebra step entirely
};

struct QuantumSymmetryVerdict {
    QuantumStatus status = QuantumStatus::kUndetermined;
    std::optional<std::pair<Permutation, Permutation>> certificate_pair;
    std::optional<int> wl_num_classes;   // present when the stabilization ran
    std::optional<mpz_class> aut_order;  // present when a classical engine ran
};

// Decision pipeline: disjoint pair -> quantum symmetric; full coherent
// algebra -> quantum asymmetric (classically cross-checked where feasible);
// otherwise the classical status alone, quantum side left open.
QuantumSymmetryVerdict classify(const Graph& g, const ClassifyOptions& options = {});

}  // namespace qsym
