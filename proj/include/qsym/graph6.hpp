#pragma once

#include <string>

#include "qsym/graph.hpp"

namespace qsym {

// graph6 codec (McKay's format): printable bytes 63..126, vertex count header
// followed by the upper triangle of the adjacency matrix in column order,
// packed big-endian into 6-bit groups. Supports the extended headers for
// n >= 63 and the optional ">>graph6<<" prefix on decode.

std::string graph6_encode(const Graph& g);

// Throws std::invalid_argument with the byte offset of the first problem.
Graph graph6_decode(const std::string& s);

}  // namespace qsym
