// Vertices of the Odd graph O_{m+1}, graph distance, triple types and the
// orbit index set of the base-vertex stabilizer.
//
// Vertices are the m-subsets of S = {1,...,2m+1}, held as bitmasks (bit k-1
// stands for element k).  The canonical vertex order is ascending
// lexicographic on the sorted element tuple, so the base vertex {1,...,m}
// always sits at index 0.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "otw/rational.hpp"

namespace otw {

using Subset = std::uint32_t;

constexpr int kMaxM = 8;  // C(17,8) = 24310 vertices is the practical ceiling

inline int popcount(Subset s) { return std::popcount(s); }

/// Bitmask of the closed interval {lo,...,hi}; empty when lo > hi.
inline Subset interval_mask(int lo, int hi) {
    if (lo > hi) return 0;
    return ((Subset{1} << hi) - 1) & ~((Subset{1} << (lo - 1)) - 1);
}

inline std::vector<int> subset_elements(Subset s) {
    std::vector<int> out;
    for (int k = 1; s; ++k, s >>= 1)
        if (s & 1) out.push_back(k);
    return out;
}

struct GraphContext {
    int m = 0;
    int ground_set_size = 0;            // 2m+1
    long long vertex_count = 0;         // C(2m+1, m)
    Subset base_vertex = 0;             // {1,...,m}, index 0
    std::vector<Subset> vertices;       // canonical order
    std::unordered_map<Subset, int> index;

    int index_of(Subset s) const {
        auto it = index.find(s);
        if (it == index.end())
            throw std::invalid_argument("subset is not a vertex of O_{m+1}");
        return it->second;
    }
};

/// All m-subsets of {1,...,2m+1} in canonical order.  m is capped at 8:
/// the downstream exact algebra works with |X|^2 objects.
inline GraphContext enum_vertices(int m) {
    if (m < 1 || m > kMaxM)
        throw std::invalid_argument("m must be in [1, " +
                                    std::to_string(kMaxM) + "], got " +
                                    std::to_string(m));
    GraphContext ctx;
    ctx.m = m;
    ctx.ground_set_size = 2 * m + 1;
    ctx.base_vertex = interval_mask(1, m);

    // lexicographic combination enumeration over sorted element tuples
    std::vector<int> c(m);
    for (int i = 0; i < m; ++i) c[i] = i + 1;
    const int n = ctx.ground_set_size;
    while (true) {
        Subset s = 0;
        for (int e : c) s |= Subset{1} << (e - 1);
        ctx.vertices.push_back(s);
        int i = m - 1;
        while (i >= 0 && c[i] == n - (m - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
    }
    ctx.vertex_count = static_cast<long long>(ctx.vertices.size());
    ctx.index.reserve(ctx.vertices.size());
    for (int i = 0; i < static_cast<int>(ctx.vertices.size()); ++i)
        ctx.index.emplace(ctx.vertices[i], i);
    return ctx;
}

/// Path-length distance in O_{m+1}; depends only on |x ∩ y|.
inline int graph_distance(Subset x, Subset y, const GraphContext& ctx) {
    const int k = popcount(x & y);
    if (k <= (ctx.m - 1) / 2) return 2 * k + 1;
    return 2 * ctx.m - 2 * k;
}

struct TripleType {
    int i = 0, j = 0, t = 0, p = 0;
    auto operator<=>(const TripleType&) const = default;
    std::string str() const {
        return "(" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(t) + "," + std::to_string(p) + ")";
    }
};

inline TripleType triple_type(Subset x, Subset y, Subset z) {
    return TripleType{popcount(x & y), popcount(x & z), popcount(y & z),
                      popcount(x & y & z)};
}

/// Closed-form membership test for the orbit index set.
inline bool in_index_set(const TripleType& tt, int m) {
    const int i = tt.i, j = tt.j, t = tt.t, p = tt.p;
    if (i < 0 || i > m || j < 0 || j > m) return false;
    if (t < std::max(i + j - m, m - 1 - i - j) || t > m - std::abs(i - j))
        return false;
    const int plo = std::max({0, i + j - m, i + t - m, j + t - m});
    const int phi = std::min({i, j, t, i + j + t + 1 - m});
    return plo <= p && p <= phi;
}

struct TypeIndexSet {
    int m = 0;
    std::vector<TripleType> types;  // lexicographic by (i,j,t,p)

    int index_of(const TripleType& tt) const {
        auto it = std::lower_bound(types.begin(), types.end(), tt);
        if (it == types.end() || *it != tt)
            throw std::invalid_argument("type " + tt.str() +
                                        " is not in the index set");
        return static_cast<int>(it - types.begin());
    }
    long long size() const { return static_cast<long long>(types.size()); }
};

/// All admissible (i,j,t,p), lexicographically ordered.  |types| = C(m+4,4).
inline TypeIndexSet enum_valid_types(int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    TypeIndexSet out;
    out.m = m;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
            const int tlo = std::max(i + j - m, m - 1 - i - j);
            const int thi = m - std::abs(i - j);
            for (int t = tlo; t <= thi; ++t) {
                const int plo = std::max({0, i + j - m, i + t - m, j + t - m});
                const int phi = std::min({i, j, t, i + j + t + 1 - m});
                for (int p = plo; p <= phi; ++p)
                    out.types.push_back(TripleType{i, j, t, p});
            }
        }
    std::sort(out.types.begin(), out.types.end());
    return out;
}

/// The fixed representative triple of the orbit labelled tt: every triple of
/// that type is carried onto this one by a ground-set permutation.
inline std::array<Subset, 3> orbit_representative(const TripleType& tt, int m) {
    if (m < 1 || m > kMaxM)
        throw std::invalid_argument("m must be in [1, " +
                                    std::to_string(kMaxM) + "]");
    if (!in_index_set(tt, m))
        throw std::invalid_argument("type " + tt.str() +
                                    " is not admissible for m=" +
                                    std::to_string(m));
    const int i = tt.i, j = tt.j, t = tt.t, p = tt.p;
    const Subset x = interval_mask(1, m);
    const Subset y = interval_mask(1, i) | interval_mask(m + 1, 2 * m - i);
    const Subset z = interval_mask(1, p) | interval_mask(i + 1, i + j - p) |
                     interval_mask(m + 1, m + t - p) |
                     interval_mask(2 * m - i + 1, 3 * m - i - j - t + p);
    return {x, y, z};
}

}  // namespace otw
