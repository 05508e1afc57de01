// Exact verification of the generator identities, the centralizer property,
// the generated-algebra dimension and the ladder-product identities.
#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "otw/linalg.hpp"
#include "otw/orbit_basis.hpp"
#include "otw/scheme.hpp"

namespace otw {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;

    void fail(const std::string& what) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

/// E*_i, E*_{i+1} A1 E*_i (and transposes), E*_m A1 E*_m, and the resulting
/// expression of A1 as a sum of orbit matrices, all as exact identities.
inline CheckResult verify_prop35(const GraphContext& ctx,
                                 const DistanceMatrices& dm,
                                 const DualIdempotents& dual,
                                 const OrbitBasis& ob) {
    const int m = ctx.m;
    CheckResult res{"prop35"};
    const SparseMat& a1 = dm.a[1];

    auto diag_type = [&](int i) {
        return (i % 2 == 0)
                   ? TripleType{(2 * m - i) / 2, (2 * m - i) / 2, m, (2 * m - i) / 2}
                   : TripleType{(i - 1) / 2, (i - 1) / 2, m, (i - 1) / 2};
    };
    auto raising_type = [&](int i) {  // E*_{i+1} A1 E*_i
        return (i % 2 == 0)
                   ? TripleType{i / 2, (2 * m - i) / 2, 0, 0}
                   : TripleType{(2 * m - i - 1) / 2, (i - 1) / 2, 0, 0};
    };

    for (int i = 0; i <= m; ++i)
        if (!(dual.estar[i] == ob.at(diag_type(i))))
            res.fail("E*_" + std::to_string(i) + " mismatch (eq 5)");

    SparseMat sum(a1.rows, a1.cols);
    for (int i = 0; i < m; ++i) {
        const SparseMat up = dual.estar[i + 1] * (a1 * dual.estar[i]);
        const TripleType tt = raising_type(i);
        if (!(up == ob.at(tt)))
            res.fail("E*_{i+1} A1 E*_i mismatch at i=" + std::to_string(i));
        const TripleType tp{tt.j, tt.i, tt.t, tt.p};
        if (!(up.transpose() == ob.at(tp)))
            res.fail("transpose mismatch at i=" + std::to_string(i));
        sum = sum + ob.at(tt) + ob.at(tp);
    }
    const TripleType loop{m / 2, m / 2, 0, 0};
    if (!(dual.estar[m] * (a1 * dual.estar[m]) == ob.at(loop)))
        res.fail("E*_m A1 E*_m mismatch");
    sum = sum + ob.at(loop);
    if (!(sum == a1)) res.fail("A1 reconstruction failed (item v)");
    return res;
}

namespace detail {

/// Vertex permutation induced by a ground-set permutation sigma (1-based).
inline std::vector<int> vertex_permutation(const GraphContext& ctx,
                                           const std::vector<int>& sigma) {
    std::vector<int> vp(ctx.vertex_count);
    for (int x = 0; x < static_cast<int>(ctx.vertex_count); ++x) {
        Subset s = ctx.vertices[x], img = 0;
        for (int e = 1; s; ++e, s >>= 1)
            if (s & 1) img |= Subset{1} << (sigma[e - 1] - 1);
        vp[x] = ctx.index_of(img);
    }
    return vp;
}

inline bool invariant_under(const SparseMat& mat, const std::vector<int>& vp) {
    for (int x = 0; x < mat.rows; ++x)
        for (const auto& [y, v] : mat.data[x]) {
            (void)v;
            if (mat.entry(vp[x], vp[y]) != 1) return false;
        }
    return true;
}

/// Generators of Sym({1..m}) x Sym({m+1..2m+1}) as ground-set permutations.
inline std::vector<std::vector<int>> stabilizer_generators(int m) {
    const int n = 2 * m + 1;
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 1);
    std::vector<std::vector<int>> gens;
    if (m >= 2) {
        auto t = id;
        std::swap(t[0], t[1]);  // (1 2)
        gens.push_back(t);
        auto c = id;            // (1 2 ... m)
        for (int e = 1; e <= m; ++e) c[e - 1] = e % m + 1;
        gens.push_back(c);
    }
    {
        auto t = id;
        std::swap(t[m], t[m + 1]);  // (m+1 m+2)
        gens.push_back(t);
        auto c = id;                // (m+1 ... 2m+1)
        for (int e = m + 1; e <= n; ++e) c[e - 1] = (e - m) % (m + 1) + m + 1;
        gens.push_back(c);
    }
    return gens;
}

}  // namespace detail

/// Every orbit matrix commutes with the permutation matrices of the
/// stabilizer generators.
inline CheckResult verify_centralizer(const GraphContext& ctx,
                                      const OrbitBasis& ob) {
    CheckResult res{"centralizer"};
    for (const auto& sigma : detail::stabilizer_generators(ctx.m)) {
        const std::vector<int> vp = detail::vertex_permutation(ctx, sigma);
        for (std::size_t c = 0; c < ob.mats.size(); ++c)
            if (!detail::invariant_under(ob.mats[c], vp))
                res.fail("element " + ob.types.types[c].str() +
                         " not invariant under a stabilizer generator");
    }
    return res;
}

/// Brute force: the orbit partition of (x,y) pairs under the full stabilizer
/// group must equal the triple-type fibers.  Enumerates the whole group, so
/// only suitable for small m.
inline CheckResult stabilizer_orbit_oracle(const GraphContext& ctx) {
    CheckResult res{"stabilizer-orbit-oracle"};
    const int m = ctx.m;
    const int n = static_cast<int>(ctx.vertex_count);
    std::vector<int> left(m), right(m + 1);
    std::iota(left.begin(), left.end(), 1);
    std::iota(right.begin(), right.end(), m + 1);
    std::vector<std::vector<int>> vperms;
    std::sort(left.begin(), left.end());
    do {
        std::vector<int> r = right;
        do {
            std::vector<int> sigma(2 * m + 1);
            for (int e = 0; e < m; ++e) sigma[e] = left[e];
            for (int e = 0; e <= m; ++e) sigma[m + e] = r[e];
            vperms.push_back(detail::vertex_permutation(ctx, sigma));
        } while (std::next_permutation(r.begin(), r.end()));
    } while (std::next_permutation(left.begin(), left.end()));

    // union-find over ordered pairs
    std::vector<int> parent(static_cast<std::size_t>(n) * n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& vp : vperms)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const int a = find(x * n + y);
                const int b = find(vp[x] * n + vp[y]);
                if (a != b) parent[a] = b;
            }
    // orbits vs. triple-type fibers
    std::map<int, TripleType> orbit_type;
    for (int x = 0; x < n && res.ok; ++x)
        for (int y = 0; y < n; ++y) {
            const TripleType tt =
                triple_type(ctx.base_vertex, ctx.vertices[x], ctx.vertices[y]);
            const int root = find(x * n + y);
            auto [it, inserted] = orbit_type.emplace(root, tt);
            if (!inserted && it->second != tt) {
                res.fail("one group orbit meets two type fibers");
                break;
            }
        }
    std::set<TripleType> seen;
    for (const auto& [root, tt] : orbit_type)
        if (!seen.insert(tt).second)
            res.fail("type " + tt.str() + " splits into several orbits");
    return res;
}

/// Close the span of {I, A1, E*_0..E*_m} under the structure-constant
/// product; the result must exhaust the centralizer algebra.
inline CheckResult verify_generation(const GraphContext& ctx,
                                     const DistanceMatrices& dm,
                                     const DualIdempotents& dual,
                                     const OrbitBasis& ob,
                                     const StructureConstants& sc) {
    CheckResult res{"generation"};
    const int nt = sc.ntypes;
    SpanBasis span(nt);
    std::vector<QVec> elements;
    auto add = [&](QVec v) {
        if (span.insert(v)) {
            elements.push_back(std::move(v));
            return true;
        }
        return false;
    };
    add(orbit_coordinates(ob, SparseMat::identity(dm.a[0].rows)));
    add(orbit_coordinates(ob, dm.a[1]));
    for (const auto& e : dual.estar) add(orbit_coordinates(ob, e));

    std::size_t processed = 0;
    while (processed < elements.size() && span.size() < nt) {
        const QVec cur = elements[processed++];
        for (std::size_t k = 0; k < elements.size(); ++k) {
            add(sc.multiply(cur, elements[k]));
            add(sc.multiply(elements[k], cur));
            if (span.size() == nt) break;
        }
    }
    const long long expect = binomial(ctx.m + 4, 4);
    if (span.size() != expect)
        res.fail("closure dimension " + std::to_string(span.size()) +
                 " != C(m+4,4) = " + std::to_string(expect));
    res.detail = "dim " + std::to_string(span.size());
    return res;
}

/// The alternating products E*_{i+k} A1 ... A1 E*_i against their closed
/// forms, for every admissible (i,k).
inline CheckResult verify_lemma51(const GraphContext& ctx,
                                  const DistanceMatrices& dm,
                                  const DualIdempotents& dual,
                                  const OrbitBasis& ob) {
    const int m = ctx.m;
    CheckResult res{"lemma51"};
    for (int i = 0; i <= m; ++i)
        for (int k = 1; i + k <= m; ++k) {
            SparseMat prod = dual.estar[i];
            for (int s = i + 1; s <= i + k; ++s)
                prod = dual.estar[s] * (dm.a[1] * prod);
            Rational coeff;
            TripleType tt;
            if (k % 2 == 1) {
                const Rational f = factorial((k - 1) / 2);
                coeff = f * f * rat_frac(k + 1, 2);
                tt = (i % 2 == 0)
                         ? TripleType{(i + k - 1) / 2, (2 * m - i) / 2,
                                      (k - 1) / 2, (k - 1) / 2}
                         : TripleType{(2 * m - i - k) / 2, (i - 1) / 2,
                                      (k - 1) / 2, 0};
            } else {
                const Rational f = factorial(k / 2);
                coeff = f * f;
                tt = (i % 2 == 0)
                         ? TripleType{(2 * m - i - k) / 2, (2 * m - i) / 2,
                                      (2 * m - k) / 2, (2 * m - i - k) / 2}
                         : TripleType{(i + k - 1) / 2, (i - 1) / 2,
                                      (2 * m - k) / 2, (i - 1) / 2};
            }
            if (!(prod == coeff * ob.at(tt)))
                res.fail("mismatch at (i,k)=(" + std::to_string(i) + "," +
                         std::to_string(k) + ")");
        }
    return res;
}

}  // namespace otw
