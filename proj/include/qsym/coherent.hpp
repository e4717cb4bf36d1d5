#pragma once

#include <string>
#include <vector>

#include "qsym/graph.hpp"

namespace qsym {

// Partition of ordered vertex pairs whose class characteristic matrices span
// a coherent algebra. class_of is row-major n*n; class indices are contiguous
// from 0 and canonically numbered by first occurrence in row-major order.
struct CoherentConfiguration {
    int n = 0;
    int num_classes = 0;
    std::vector<int> class_of;
    int rounds = 0;  // refinement rounds until stable (0 when already stable at init)

    int cls(int u, int v) const { return class_of[static_cast<std::size_t>(u) * n + v]; }
};

// Orbit partition of ordered pairs under the automorphism group; same shape,
// same axioms, and always a refinement of the stabilized configuration.
using OrbitalConfiguration = CoherentConfiguration;

// 2-dimensional Weisfeiler-Lehman stabilization starting from the partition
// {diagonal, edges, non-edges}: each round recolors (u,v) by its old color
// plus the multiset of color pairs (c(u,w), c(w,v)) over all w, until the
// partition stops changing. Signatures are hashed to 64 bits; every bucket is
// re-verified against its representative's full signature and a genuine
// collision falls back to exact signature maps, so the result never depends
// on hash luck.
CoherentConfiguration wl2_stabilize(const Graph& g, int cap = 256);

// Full algebra: every ordered pair is its own class.
inline bool is_full(const CoherentConfiguration& c) {
    return static_cast<long long>(c.num_classes) ==
           static_cast<long long>(c.n) * static_cast<long long>(c.n);
}

// Orbits of the automorphism group acting on ordered pairs, computed from a
// brute-force generating set. Requires n within the brute-force cap.
OrbitalConfiguration orbital_configuration(const Graph& g, int brute_cap = 10);

struct AxiomViolation {
    std::string axiom;           // "partition", "diagonal", "transpose" or "intersection"
    int class_a = -1;
    int class_b = -1;            // second class for transpose/intersection findings
    int u = -1;
    int v = -1;                  // witness pair
};

// Checks the four configuration axioms: valid partition, diagonal a union of
// classes, transpose-closure, and constancy of intersection numbers within
// each class. On failure fills *violation (if given) with a located witness.
bool verify_coherence_axioms(const CoherentConfiguration& c, AxiomViolation* violation = nullptr);

// True iff every class of fine lies inside a single class of coarse.
bool partition_refines(const CoherentConfiguration& fine, const CoherentConfiguration& coarse);

}  // namespace qsym
