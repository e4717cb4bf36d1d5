#include "qsym/coherent.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "qsym/prng.hpp"
#include "qsym/symmetry.hpp"

namespace qsym {

namespace {

std::uint64_t hash_words(std::uint64_t seed, const std::vector<std::uint64_t>& words) {
    std::uint64_t h = mix64(seed ^ 0x9ae16a3b2f90404fULL);
    for (std::uint64_t w : words) h = mix64(h ^ w);
    return h;
}

// Members of each class id, via counting sort over pair indices.
struct ClassIndex {
    std::vector<std::size_t> offset;  // k+1 entries
    std::vector<std::uint32_t> member;

    template <typename Ids>
    ClassIndex(const Ids& ids, std::uint32_t k) {
        offset.assign(k + 1, 0);
        for (auto id : ids) ++offset[id + 1];
        for (std::uint32_t c = 0; c < k; ++c) offset[c + 1] += offset[c];
        member.resize(ids.size());
        std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
        for (std::uint32_t p = 0; p < ids.size(); ++p) member[cursor[ids[p]]++] = p;
    }
};

}  // namespace

CoherentConfiguration wl2_stabilize(const Graph& g, int cap) {
    const int n = g.num_vertices();
    if (n < 1) throw std::invalid_argument("wl2_stabilize: graph must have at least one vertex");
    if (n > cap)
        throw std::invalid_argument("wl2_stabilize: n exceeds cap " + std::to_string(cap));

    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<std::uint32_t> cur(nn);
    std::uint32_t k = 0;
    {
        int remap[3] = {-1, -1, -1};
        std::size_t p = 0;
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v, ++p) {
                const int raw = u == v ? 0 : (g.has_edge(u, v) ? 1 : 2);
                if (remap[raw] < 0) remap[raw] = static_cast<int>(k++);
                cur[p] = static_cast<std::uint32_t>(remap[raw]);
            }
        }
    }

    // Sorted multiset of the codes (c(u,w), c(w,v)); the pair's own color is
    // carried separately as a prefix.
    std::vector<std::uint64_t> sig, rep_sig;
    auto signature = [&](std::uint32_t p, std::vector<std::uint64_t>& out) {
        const std::uint32_t u = p / n, v = p % n;
        out.clear();
        for (int w = 0; w < n; ++w)
            out.push_back(static_cast<std::uint64_t>(cur[u * n + w]) * k + cur[w * n + v]);
        std::sort(out.begin(), out.end());
    };

    int rounds = 0;
    std::vector<std::uint32_t> next(nn);
    std::vector<std::uint64_t> hashes(nn);
    while (k < nn) {
        for (std::uint32_t p = 0; p < nn; ++p) {
            signature(p, sig);
            hashes[p] = hash_words(cur[p], sig);
        }
        std::uint32_t k2 = 0;
        std::unordered_map<std::uint64_t, std::uint32_t> ids;
        ids.reserve(2 * nn);
        for (std::uint32_t p = 0; p < nn; ++p) {
            auto [it, inserted] = ids.try_emplace(hashes[p], k2);
            if (inserted) ++k2;
            next[p] = it->second;
        }

        // Bucket verification: every member must carry its representative's
        // exact signature, otherwise two signatures collided in the hash.
        bool collided = false;
        if (k2 < nn) {
            const ClassIndex index(next, k2);
            for (std::uint32_t c = 0; c < k2 && !collided; ++c) {
                const std::size_t lo = index.offset[c], hi = index.offset[c + 1];
                if (hi - lo <= 1) continue;
                const std::uint32_t rep = index.member[lo];
                signature(rep, rep_sig);
                for (std::size_t i = lo + 1; i < hi; ++i) {
                    const std::uint32_t p = index.member[i];
                    signature(p, sig);
                    if (cur[p] != cur[rep] || sig != rep_sig) {
                        collided = true;
                        break;
                    }
                }
            }
        }
        if (collided) {
            std::map<std::pair<std::uint32_t, std::vector<std::uint64_t>>, std::uint32_t> exact;
            k2 = 0;
            for (std::uint32_t p = 0; p < nn; ++p) {
                signature(p, sig);
                auto [it, inserted] = exact.try_emplace({cur[p], sig}, k2);
                if (inserted) ++k2;
                next[p] = it->second;
            }
        }

        if (k2 < k) throw std::logic_error("wl2_stabilize: refinement lost classes");
        if (k2 == k && std::equal(cur.begin(), cur.end(), next.begin())) break;
        cur.swap(next);
        k = k2;
        ++rounds;
        if (rounds > static_cast<int>(nn) + 1)
            throw std::logic_error("wl2_stabilize: failed to stabilize");
    }

    CoherentConfiguration c;
    c.n = n;
    c.num_classes = static_cast<int>(k);
    c.class_of.assign(cur.begin(), cur.end());
    c.rounds = rounds;
    return c;
}

OrbitalConfiguration orbital_configuration(const Graph& g, int brute_cap) {
    const int n = g.num_vertices();
    if (n < 1)
        throw std::invalid_argument("orbital_configuration: graph must have at least one vertex");
    const AutomorphismReport aut = brute_force_automorphisms(g, brute_cap);

    const std::size_t nn = static_cast<std::size_t>(n) * n;
    OrbitalConfiguration c;
    c.n = n;
    c.class_of.assign(nn, -1);
    int next_id = 0;
    std::vector<std::uint32_t> queue;
    for (std::uint32_t start = 0; start < nn; ++start) {
        if (c.class_of[start] >= 0) continue;
        c.class_of[start] = next_id;
        queue.assign(1, start);
        while (!queue.empty()) {
            const std::uint32_t p = queue.back();
            queue.pop_back();
            const int u = static_cast<int>(p) / n, v = static_cast<int>(p) % n;
            for (const Permutation& s : aut.generators) {
                const std::uint32_t q = static_cast<std::uint32_t>(s[u]) * n + s[v];
                if (c.class_of[q] < 0) {
                    c.class_of[q] = next_id;
                    queue.push_back(q);
                }
            }
        }
        ++next_id;
    }
    c.num_classes = next_id;
    return c;
}

bool verify_coherence_axioms(const CoherentConfiguration& c, AxiomViolation* violation) {
    const int n = c.n;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    const int k = c.num_classes;
    auto fail = [&](AxiomViolation v) {
        if (violation) *violation = std::move(v);
        return false;
    };

    if (n < 1 || k < 1 || c.class_of.size() != nn) return fail({"partition"});
    std::vector<bool> seen(k, false);
    for (std::size_t p = 0; p < nn; ++p) {
        const int id = c.class_of[p];
        if (id < 0 || id >= k)
            return fail({"partition", id, -1, static_cast<int>(p) / n, static_cast<int>(p) % n});
        seen[id] = true;
    }
    for (int id = 0; id < k; ++id)
        if (!seen[id]) return fail({"partition", id});

    std::vector<signed char> diag_kind(k, -1);
    for (std::size_t p = 0; p < nn; ++p) {
        const int u = static_cast<int>(p) / n, v = static_cast<int>(p) % n;
        const signed char kind = u == v ? 1 : 0;
        signed char& expected = diag_kind[c.class_of[p]];
        if (expected < 0)
            expected = kind;
        else if (expected != kind)
            return fail({"diagonal", c.class_of[p], -1, u, v});
    }

    std::vector<int> transpose_of(k, -1);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            const int a = c.cls(u, v), b = c.cls(v, u);
            if (transpose_of[a] < 0)
                transpose_of[a] = b;
            else if (transpose_of[a] != b)
                return fail({"transpose", a, b, u, v});
        }
    }

    // Intersection numbers: within one class every pair must see the same
    // multiset of (class(u,w), class(w,v)) codes; compare members against the
    // class representative.
    std::vector<std::uint32_t> ids(c.class_of.begin(), c.class_of.end());
    const ClassIndex index(ids, static_cast<std::uint32_t>(k));
    std::vector<std::uint64_t> rep_sig, sig;
    auto signature = [&](std::uint32_t p, std::vector<std::uint64_t>& out) {
        const std::uint32_t u = p / n, v = p % n;
        out.clear();
        for (int w = 0; w < n; ++w)
            out.push_back(static_cast<std::uint64_t>(c.class_of[u * n + w]) * k +
                          c.class_of[w * n + v]);
        std::sort(out.begin(), out.end());
    };
    for (int cls = 0; cls < k; ++cls) {
        const std::size_t lo = index.offset[cls], hi = index.offset[cls + 1];
        if (hi - lo <= 1) continue;
        const std::uint32_t rep = index.member[lo];
        signature(rep, rep_sig);
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const std::uint32_t p = index.member[i];
            signature(p, sig);
            if (sig != rep_sig)
                return fail({"intersection", cls, -1, static_cast<int>(p) / n,
                             static_cast<int>(p) % n});
        }
    }
    return true;
}

bool partition_refines(const CoherentConfiguration& fine, const CoherentConfiguration& coarse) {
    if (fine.n != coarse.n || fine.class_of.size() != coarse.class_of.size()) return false;
    std::vector<int> image(fine.num_classes, -1);
    for (std::size_t p = 0; p < fine.class_of.size(); ++p) {
        int& img = image[fine.class_of[p]];
        if (img < 0)
            img = coarse.class_of[p];
        else if (img != coarse.class_of[p])
            return false;
    }
    return true;
}

}  // namespace qsym
