// Distance matrices, intersection numbers and dual idempotents of O_{m+1}.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "otw/matrix.hpp"
#include "otw/odd_graph.hpp"

namespace otw {

struct DistanceMatrices {
    int m = 0;
    std::vector<SparseMat> a;  // a[i] = i-th distance matrix, 0 <= i <= m
    // p[h][i][j] = |{z : d(x,z)=i, d(z,y)=j}| for any pair at distance h
    std::vector<std::vector<std::vector<long long>>> p;
    std::vector<long long> sphere_size;  // k_i = |{y : d(x0,y)=i}|
};

inline DistanceMatrices build_distance_matrices(const GraphContext& ctx) {
    const int m = ctx.m;
    const int n = static_cast<int>(ctx.vertex_count);
    DistanceMatrices dm;
    dm.m = m;
    dm.a.assign(m + 1, SparseMat(n, n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int d = graph_distance(ctx.vertices[x], ctx.vertices[y], ctx);
            dm.a[d].data[x].emplace_back(y, 1);
        }

    dm.sphere_size.assign(m + 1, 0);
    for (int y = 0; y < n; ++y)
        ++dm.sphere_size[graph_distance(ctx.base_vertex, ctx.vertices[y], ctx)];

    // intersection numbers from one representative pair per distance;
    // pair-independence is distance-regularity (cross-checked in tests)
    dm.p.assign(m + 1, std::vector<std::vector<long long>>(
                           m + 1, std::vector<long long>(m + 1, 0)));
    for (int h = 0; h <= m; ++h) {
        int y = -1;
        for (int cand = 0; cand < n; ++cand)
            if (graph_distance(ctx.base_vertex, ctx.vertices[cand], ctx) == h) {
                y = cand;
                break;
            }
        if (y < 0)
            throw std::runtime_error("no vertex at distance " +
                                     std::to_string(h) + " from the base");
        for (int z = 0; z < n; ++z) {
            const int i = graph_distance(ctx.base_vertex, ctx.vertices[z], ctx);
            const int j = graph_distance(ctx.vertices[z], ctx.vertices[y], ctx);
            ++dm.p[h][i][j];
        }
    }
    return dm;
}

struct DualIdempotents {
    std::vector<SparseMat> estar;        // diagonal 0/1 projectors E*_i
    std::vector<int> dist_from_base;     // per vertex index
    std::vector<std::vector<int>> spheres;  // vertex indices per distance
};

inline DualIdempotents build_dual_idempotents(const GraphContext& ctx,
                                              const DistanceMatrices& dm) {
    const int m = ctx.m;
    const int n = static_cast<int>(ctx.vertex_count);
    DualIdempotents dual;
    dual.estar.assign(m + 1, SparseMat(n, n));
    dual.dist_from_base.resize(n);
    dual.spheres.assign(m + 1, {});
    for (int y = 0; y < n; ++y) {
        const int d = graph_distance(ctx.base_vertex, ctx.vertices[y], ctx);
        dual.dist_from_base[y] = d;
        dual.spheres[d].push_back(y);
        dual.estar[d].data[y].emplace_back(y, 1);
    }
    (void)dm;
    return dual;
}

/// Restrict v to the distance-i sphere (the action of E*_i).
inline QVec estar_apply(const DualIdempotents& dual, int i, const QVec& v) {
    QVec out(v.size(), Rational(0));
    if (i < 0 || i >= static_cast<int>(dual.estar.size())) return out;
    for (std::size_t y = 0; y < v.size(); ++y)
        if (dual.dist_from_base[y] == i) out[y] = v[y];
    return out;
}

}  // namespace otw
