// The 0/1 orbit matrices M^{t,p}_{i,j} spanning the centralizer algebra of
// the base-vertex stabilizer, and their integer structure constants.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "otw/matrix.hpp"
#include "otw/odd_graph.hpp"

namespace otw {

struct OrbitBasis {
    TypeIndexSet types;
    std::vector<SparseMat> mats;                   // indexed like types.types
    std::vector<std::array<int, 2>> rep_pair;      // (x,y) with type(x0,x,y)=tt

    const SparseMat& at(const TripleType& tt) const {
        return mats[types.index_of(tt)];
    }
};

/// Bucket every ordered pair (x,y) by the type of (x0,x,y).  Each admissible
/// type must receive at least one pair; a pair whose type falls outside the
/// index set means the closed-form inequalities are wrong.
inline OrbitBasis build_orbit_basis(const GraphContext& ctx,
                                    const TypeIndexSet& types) {
    const int n = static_cast<int>(ctx.vertex_count);
    OrbitBasis ob;
    ob.types = types;
    ob.mats.assign(types.types.size(), SparseMat(n, n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const TripleType tt =
                triple_type(ctx.base_vertex, ctx.vertices[x], ctx.vertices[y]);
            int idx;
            try {
                idx = ob.types.index_of(tt);
            } catch (const std::invalid_argument&) {
                throw std::runtime_error("pair type " + tt.str() +
                                         " is outside the index set");
            }
            ob.mats[idx].data[x].emplace_back(y, 1);
        }
    ob.rep_pair.resize(types.types.size());
    for (std::size_t c = 0; c < types.types.size(); ++c) {
        if (ob.mats[c].is_zero())
            throw std::runtime_error("empty orbit for type " +
                                     types.types[c].str());
        const auto rep = orbit_representative(types.types[c], ctx.m);
        ob.rep_pair[c] = {ctx.index_of(rep[1]), ctx.index_of(rep[2])};
    }
    return ob;
}

/// Coordinates of a centralizer-algebra element in the orbit basis, read off
/// one representative entry per orbit.  Only valid for matrices constant on
/// orbits; reconstruction is cross-checked in the tests.
inline QVec orbit_coordinates(const OrbitBasis& ob, const SparseMat& x) {
    QVec coords(ob.types.types.size());
    for (std::size_t c = 0; c < coords.size(); ++c)
        coords[c] = x.entry(ob.rep_pair[c][0], ob.rep_pair[c][1]);
    return coords;
}

struct StructureConstants {
    int ntypes = 0;
    // table[a][b] = sparse list of (c, coefficient) with
    // M_a * M_b = sum_c coeff * M_c
    std::vector<std::vector<std::vector<std::pair<int, long long>>>> table;

    /// Product of two coordinate vectors in the centralizer algebra.
    QVec multiply(const QVec& u, const QVec& v) const {
        QVec out(ntypes, Rational(0));
        for (int a = 0; a < ntypes; ++a) {
            if (u[a] == 0) continue;
            for (int b = 0; b < ntypes; ++b) {
                if (v[b] == 0) continue;
                const Rational uv = u[a] * v[b];
                for (const auto& [c, k] : table[a][b]) out[c] += uv * to_rat(k);
            }
        }
        return out;
    }
};

/// One pass per output type: the (x,y)-entry of M_a * M_b depends only on the
/// orbit of (x0,x,y), so counting walks through one representative pair per
/// orbit determines every coefficient at once.
inline StructureConstants structure_constants(const OrbitBasis& ob,
                                              const GraphContext& ctx) {
    const int nt = static_cast<int>(ob.types.types.size());
    const int n = static_cast<int>(ctx.vertex_count);
    StructureConstants sc;
    sc.ntypes = nt;
    sc.table.assign(nt, std::vector<std::vector<std::pair<int, long long>>>(nt));
    std::vector<std::vector<long long>> cnt(nt, std::vector<long long>(nt, 0));
    for (int c = 0; c < nt; ++c) {
        for (auto& row : cnt) std::fill(row.begin(), row.end(), 0);
        const Subset x = ctx.vertices[ob.rep_pair[c][0]];
        const Subset y = ctx.vertices[ob.rep_pair[c][1]];
        for (int zi = 0; zi < n; ++zi) {
            const Subset z = ctx.vertices[zi];
            const int a = ob.types.index_of(triple_type(ctx.base_vertex, x, z));
            const int b = ob.types.index_of(triple_type(ctx.base_vertex, z, y));
            ++cnt[a][b];
        }
        for (int a = 0; a < nt; ++a)
            for (int b = 0; b < nt; ++b)
                if (cnt[a][b] != 0) sc.table[a][b].emplace_back(c, cnt[a][b]);
    }
    return sc;
}

}  // namespace otw
