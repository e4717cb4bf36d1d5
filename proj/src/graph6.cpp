#include "qsym/graph6.hpp"

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace qsym {

namespace {

constexpr char kHeader[] = ">>graph6<<";

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
    throw std::invalid_argument("graph6: " + what + " at byte " + std::to_string(offset));
}

int value_at(const std::string& s, std::size_t pos, std::size_t base) {
    if (pos >= s.size()) fail("truncated input", base + pos);
    const unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) fail("byte out of range 63..126", base + pos);
    return c - 63;
}

void append_chunks(std::string& out, std::uint64_t value, int chunks) {
    for (int i = chunks - 1; i >= 0; --i)
        out.push_back(static_cast<char>(((value >> (6 * i)) & 63) + 63));
}

}  // namespace

std::string graph6_encode(const Graph& g) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.num_vertices());
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        append_chunks(out, n, 3);
    } else {
        out.push_back(126);
        out.push_back(126);
        append_chunks(out, n, 6);
    }
    int acc = 0, nbits = 0;
    for (std::uint64_t v = 1; v < n; ++v) {
        for (std::uint64_t u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.has_edge(static_cast<int>(u), static_cast<int>(v)) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

Graph graph6_decode(const std::string& input) {
    std::string_view sv(input);
    if (sv.substr(0, sizeof(kHeader) - 1) == kHeader) sv.remove_prefix(sizeof(kHeader) - 1);
    const std::string s(sv);
    const std::size_t base = input.size() - s.size();

    if (s.empty()) fail("empty input", base);
    std::size_t pos = 0;
    std::uint64_t n = 0;
    if (static_cast<unsigned char>(s[pos]) == 126) {
        ++pos;
        int chunks = 3;
        if (pos < s.size() && static_cast<unsigned char>(s[pos]) == 126) {
            ++pos;
            chunks = 6;
        }
        for (int i = 0; i < chunks; ++i) n = (n << 6) | static_cast<std::uint64_t>(value_at(s, pos++, base));
    } else {
        n = static_cast<std::uint64_t>(value_at(s, pos++, base));
    }
    if (n > 100000) fail("vertex count too large", base);

    const std::uint64_t nbits = n * (n - 1) / 2;
    const std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
    if (s.size() - pos < nbytes) fail("truncated adjacency data", base + s.size());
    if (s.size() - pos > nbytes) fail("trailing data", base + pos + nbytes);

    std::vector<std::pair<int, int>> edges;
    std::uint64_t bit = 0;
    int u = 0, v = 1;
    for (std::size_t i = 0; i < nbytes; ++i) {
        const int x = value_at(s, pos + i, base);
        for (int k = 5; k >= 0; --k, ++bit) {
            const int b = (x >> k) & 1;
            if (bit >= nbits) {
                if (b != 0) fail("nonzero padding bit", base + pos + i);
                continue;
            }
            if (b) edges.emplace_back(u, v);
            if (++u == v) {
                u = 0;
                ++v;
            }
        }
    }
    return Graph(static_cast<int>(n), edges);
}

}  // namespace qsym
