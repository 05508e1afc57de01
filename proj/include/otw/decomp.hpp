// Decomposition of the standard module into homogeneous components: the
// admissible (dual endpoint, diameter) pairs, the endpoint spaces L_nu, the
// projected seed spaces, the ladder bases b_{(nu,mu,xi,k)}, representation
// blocks and the block-diagonalization report.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "otw/linalg.hpp"
#include "otw/orbit_basis.hpp"
#include "otw/scheme.hpp"
#include "otw/spectral.hpp"

namespace otw {

struct UpsilonSet {
    int m = 0;
    std::vector<std::pair<int, int>> pairs;  // (mu, d), d descending then mu

    bool contains(int mu, int d) const {
        for (const auto& [a, b] : pairs)
            if (a == mu && b == d) return true;
        return false;
    }
};

/// Pairs (mu,d) with 0 <= d <= m and ceil((m-d)/2) <= mu <= m-d; the integer
/// form of the half-open lower bound.  |pairs| = floor((m+2)^2/4).
inline UpsilonSet build_upsilon(int m) {
    if (m < 3)
        throw std::invalid_argument(
            "decomposition requires m >= 3, got " + std::to_string(m));
    UpsilonSet u;
    u.m = m;
    for (int d = m; d >= 0; --d)
        for (int mu = (m - d + 1) / 2; mu <= m - d; ++mu)
            u.pairs.emplace_back(mu, d);
    const long long expect = ((m + 2) * (m + 2)) / 4;
    if (static_cast<long long>(u.pairs.size()) != expect)
        throw std::runtime_error("upsilon size mismatch");
    return u;
}

/// Basis of {xi supported on the distance-nu sphere : E*_{nu-1} A1 E*_nu xi
/// = 0}, computed from the sphere-restricted block of A1.
inline std::vector<QVec> compute_L_nu(int nu, const GraphContext& ctx,
                                      const DualIdempotents& dual) {
    const int n = static_cast<int>(ctx.vertex_count);
    const auto& sphere = dual.spheres[nu];
    std::vector<QVec> out;
    if (nu == 0) {
        QVec v(n, Rational(0));
        v[sphere.front()] = 1;
        out.push_back(std::move(v));
        return out;
    }
    const auto& above = dual.spheres[nu - 1];
    SparseMat block(static_cast<int>(above.size()),
                    static_cast<int>(sphere.size()));
    for (std::size_t r = 0; r < above.size(); ++r)
        for (std::size_t c = 0; c < sphere.size(); ++c)
            if ((ctx.vertices[above[r]] & ctx.vertices[sphere[c]]) == 0)
                block.data[r].emplace_back(static_cast<int>(c), 1);
    for (const QVec& k : kernel_basis(block)) {
        QVec v(n, Rational(0));
        for (std::size_t c = 0; c < sphere.size(); ++c) v[sphere[c]] = k[c];
        out.push_back(std::move(v));
    }
    return out;
}

struct SeedSpace {
    int nu = 0;
    int mu = 0;
    std::vector<QVec> basis;            // orthogonal, unnormalized
    std::vector<Rational> squared_norms;
};

/// Seed space of (mu, m-nu): project L_nu orthogonally away from the seed
/// spaces of all smaller admissible mu, then apply E*_nu E_mu and
/// orthogonalize.  On the deflated complement, E*_nu E_mu kills every module
/// class with dual endpoint > mu (its E_mu part vanishes) and maps the
/// mu-class seeds onto themselves, so the image is exactly
/// E*_nu W_{(mu,m-nu)}.
inline SeedSpace project_Lambda(int nu, int mu, const std::vector<QVec>& lnu,
                                const std::vector<const SeedSpace*>& lower,
                                const SpectralData& sd,
                                const DualIdempotents& dual,
                                const DistanceMatrices& dm) {
    std::vector<QVec> images;
    for (const QVec& v : lnu) {
        QVec w = v;
        for (const SeedSpace* s : lower)
            for (std::size_t i = 0; i < s->basis.size(); ++i) {
                const Rational c = dot(w, s->basis[i]) / s->squared_norms[i];
                if (c == 0) continue;
                for (std::size_t k = 0; k < w.size(); ++k)
                    if (s->basis[i][k] != 0) w[k] -= c * s->basis[i][k];
            }
        w = estar_apply(dual, nu, idempotent_apply(sd, mu, w, dm));
        if (!is_zero(w)) images.push_back(std::move(w));
    }
    SeedSpace s;
    s.nu = nu;
    s.mu = mu;
    for (auto& [vec, n2] : gram_schmidt(images)) {
        s.basis.push_back(std::move(vec));
        s.squared_norms.push_back(std::move(n2));
    }
    return s;
}

/// Orbit matrix carrying a seed on sphere nu to sphere k, by the parity of
/// nu and k - nu.
inline TripleType b_vector_type(int nu, int k, int m) {
    if (nu % 2 == 0) {
        if ((k - nu) % 2 == 1)
            return TripleType{(k - 1) / 2, (2 * m - nu) / 2, (k - nu - 1) / 2,
                              (k - nu - 1) / 2};
        return TripleType{(2 * m - k) / 2, (2 * m - nu) / 2,
                          (2 * m - k + nu) / 2, (2 * m - k) / 2};
    }
    if ((k - nu) % 2 == 1)
        return TripleType{(2 * m - k) / 2, (nu - 1) / 2, (k - nu - 1) / 2, 0};
    return TripleType{(k - 1) / 2, (nu - 1) / 2, (2 * m - k + nu) / 2,
                      (nu - 1) / 2};
}

/// The d+1 ladder vectors of the irreducible module seeded by xi.  All must
/// be nonzero and pairwise orthogonal.
inline std::vector<QVec> build_b_vectors(int nu, int mu, const QVec& xi,
                                         const OrbitBasis& ob, int m) {
    std::vector<QVec> bs;
    for (int k = nu; k <= m; ++k) {
        QVec b = ob.at(b_vector_type(nu, k, m)).apply(xi);
        if (is_zero(b))
            throw std::runtime_error(
                "zero ladder vector at (nu,mu,k)=(" + std::to_string(nu) + "," +
                std::to_string(mu) + "," + std::to_string(k) + ")");
        bs.push_back(std::move(b));
    }
    for (std::size_t a = 0; a < bs.size(); ++a)
        for (std::size_t b = a + 1; b < bs.size(); ++b)
            if (dot(bs[a], bs[b]) != 0)
                throw std::runtime_error("ladder vectors not orthogonal at nu=" +
                                         std::to_string(nu));
    return bs;
}

struct HomogeneousComponent {
    int mu = 0;
    int d = 0;
    int nu = 0;  // endpoint, nu = m - d
    long long multiplicity = 0;
    SeedSpace seeds;
    std::vector<std::vector<QVec>> modules;        // per seed, d+1 b-vectors
    std::vector<std::vector<Rational>> module_norms;
};

struct BlockDiagReport {
    int m = 0;
    long long vertex_count = 0;
    long long dim_t = 0;
    std::vector<std::pair<int, int>> pairs;        // mirrors UpsilonSet order
    std::vector<long long> multiplicities;         // per pair
    long long center_dimension = 0;                // filled by block check
    bool multiplicity_crosscheck_ok = false;
};

struct Decomposition {
    UpsilonSet upsilon;
    std::vector<HomogeneousComponent> components;  // canonical Upsilon order
    BlockDiagReport report;
};

namespace detail {

/// Exact pairwise-orthogonality check over the whole collection; vectors are
/// bucketed by their supporting sphere (different spheres are trivially
/// orthogonal), which keeps the Gram check full yet cheap.
inline void check_global_orthogonality(const Decomposition& dec,
                                       const DualIdempotents& dual) {
    const int m = static_cast<int>(dual.estar.size()) - 1;
    std::vector<std::vector<const QVec*>> by_sphere(m + 1);
    for (const auto& comp : dec.components)
        for (const auto& mod : comp.modules)
            for (std::size_t k = 0; k < mod.size(); ++k) {
                const int sphere = comp.nu + static_cast<int>(k);
                for (std::size_t y = 0; y < mod[k].size(); ++y)
                    if (mod[k][y] != 0 && dual.dist_from_base[y] != sphere)
                        throw std::runtime_error(
                            "ladder vector leaves its sphere");
                by_sphere[sphere].push_back(&mod[k]);
            }
    for (const auto& bucket : by_sphere)
        for (std::size_t a = 0; a < bucket.size(); ++a)
            for (std::size_t b = a + 1; b < bucket.size(); ++b)
                if (dot(*bucket[a], *bucket[b]) != 0)
                    throw std::runtime_error(
                        "assembled basis is not orthogonal");
}

}  // namespace detail

/// Full decomposition pipeline: L_nu kernels, seed projections, ladder
/// bases, exact orthogonality and the dimension accounting.
inline Decomposition decompose(const GraphContext& ctx,
                               const DistanceMatrices& dm,
                               const DualIdempotents& dual,
                               const OrbitBasis& ob, const SpectralData& sd) {
    const int m = ctx.m;
    Decomposition dec;
    dec.upsilon = build_upsilon(m);

    for (int nu = 0; nu <= m; ++nu) {
        const int d = m - nu;
        const std::vector<QVec> lnu = compute_L_nu(nu, ctx, dual);
        long long seeds_found = 0;
        std::vector<const SeedSpace*> lower;
        const std::size_t first_of_nu = dec.components.size();
        for (int mu = (nu + 1) / 2; mu <= nu; ++mu) {
            lower.clear();
            for (std::size_t c = first_of_nu; c < dec.components.size(); ++c)
                lower.push_back(&dec.components[c].seeds);
            HomogeneousComponent comp;
            comp.mu = mu;
            comp.d = d;
            comp.nu = nu;
            comp.seeds = project_Lambda(nu, mu, lnu, lower, sd, dual, dm);
            comp.multiplicity = static_cast<long long>(comp.seeds.basis.size());
            if (comp.multiplicity == 0)
                throw std::runtime_error("empty seed space for (mu,d)=(" +
                                         std::to_string(mu) + "," +
                                         std::to_string(d) + ")");
            seeds_found += comp.multiplicity;
            for (const QVec& xi : comp.seeds.basis) {
                auto bs = build_b_vectors(nu, mu, xi, ob, m);
                std::vector<Rational> norms;
                for (const auto& b : bs) norms.push_back(dot(b, b));
                comp.modules.push_back(std::move(bs));
                comp.module_norms.push_back(std::move(norms));
            }
            dec.components.push_back(std::move(comp));
        }
        if (seeds_found != static_cast<long long>(lnu.size()))
            throw std::runtime_error("seed count does not exhaust L_" +
                                     std::to_string(nu));
    }

    detail::check_global_orthogonality(dec, dual);

    BlockDiagReport& rep = dec.report;
    rep.m = m;
    rep.vertex_count = ctx.vertex_count;
    rep.dim_t = static_cast<long long>(ob.types.types.size());
    long long vec_total = 0, sq_total = 0;
    for (const auto& comp : dec.components) {
        rep.pairs.emplace_back(comp.mu, comp.d);
        rep.multiplicities.push_back(comp.multiplicity);
        vec_total += comp.multiplicity * (comp.d + 1);
        sq_total += static_cast<long long>(comp.d + 1) * (comp.d + 1);
    }
    if (vec_total != ctx.vertex_count)
        throw std::runtime_error("multiplicity accounting != C(2m+1,m)");
    if (sq_total != rep.dim_t)
        throw std::runtime_error("sum of squared block sizes != dim T");

    // per-eigenvalue multiplicity vs. dual-thin support accounting
    rep.multiplicity_crosscheck_ok = true;
    for (int i = 0; i <= m; ++i) {
        long long acc = 0;
        for (const auto& comp : dec.components)
            if (comp.mu <= i && i <= comp.mu + comp.d) acc += comp.multiplicity;
        if (acc != sd.multiplicities[i]) rep.multiplicity_crosscheck_ok = false;
    }
    return dec;
}

/// Dimension of the (mu, m-nu) seed projection for an arbitrary mu, with
/// deflation against every admissible class below mu; zero for pairs outside
/// Upsilon (the negative control).
inline int diagnostic_projection_dim(int nu, int mu, const GraphContext& ctx,
                                     const DistanceMatrices& dm,
                                     const DualIdempotents& dual,
                                     const SpectralData& sd) {
    const auto lnu = compute_L_nu(nu, ctx, dual);
    const int lo = (nu + 1) / 2;
    std::vector<SeedSpace> admissible;
    std::vector<const SeedSpace*> lower;
    for (int j = lo; j <= nu && j < mu; ++j) {
        lower.clear();
        for (const SeedSpace& s : admissible) lower.push_back(&s);
        admissible.push_back(project_Lambda(nu, j, lnu, lower, sd, dual, dm));
    }
    lower.clear();
    for (const SeedSpace& s : admissible) lower.push_back(&s);
    return static_cast<int>(
        project_Lambda(nu, mu, lnu, lower, sd, dual, dm).basis.size());
}

/// Representation block of one algebra element on one module: coefficients
/// R[l][k] with element*b_k = sum_l R[l][k] b_l, plus an exact residual
/// check that the module is invariant.
inline DenseMat representation_block(const SparseMat& element,
                                     const std::vector<QVec>& bs,
                                     const std::vector<Rational>& norms) {
    const int dim = static_cast<int>(bs.size());
    DenseMat r(dim, QVec(dim, Rational(0)));
    for (int k = 0; k < dim; ++k) {
        QVec w = element.apply(bs[k]);
        for (int l = 0; l < dim; ++l) {
            r[l][k] = dot(w, bs[l]) / norms[l];
            if (r[l][k] == 0) continue;
            for (std::size_t y = 0; y < w.size(); ++y)
                if (bs[l][y] != 0) w[y] -= r[l][k] * bs[l][y];
        }
        if (!is_zero(w))
            throw std::runtime_error("vector escaped its module");
    }
    return r;
}

struct BlockStructureResult {
    bool ok = true;
    std::string detail;
    long long center_dimension = 0;
    // blocks[element][component] in canonical orders (first seed of each
    // component; seeds are checked entry-identical)
    std::vector<std::vector<DenseMat>> blocks;
};

/// The three exact block-diagonalization checks: zero residuals everywhere,
/// entry-identical blocks across the seeds of each component, and
/// injectivity of the element -> blocks map.  Also computes the dimension of
/// the center as the space of elements acting as scalars on every block.
inline BlockStructureResult verify_block_structure(const Decomposition& dec,
                                                   const OrbitBasis& ob) {
    BlockStructureResult res;
    const int nt = static_cast<int>(ob.mats.size());
    res.blocks.resize(nt);
    for (int e = 0; e < nt; ++e) {
        for (const auto& comp : dec.components) {
            std::optional<DenseMat> first;
            for (std::size_t s = 0; s < comp.modules.size(); ++s) {
                DenseMat r;
                try {
                    r = representation_block(ob.mats[e], comp.modules[s],
                                             comp.module_norms[s]);
                } catch (const std::runtime_error&) {
                    res.ok = false;
                    res.detail = "element " + ob.types.types[e].str() +
                                 " escapes component (mu,d)=(" +
                                 std::to_string(comp.mu) + "," +
                                 std::to_string(comp.d) + ")";
                    return res;
                }
                if (!first)
                    first = std::move(r);
                else if (r != *first) {
                    res.ok = false;
                    res.detail = "blocks differ across seeds for element " +
                                 ob.types.types[e].str();
                    return res;
                }
            }
            res.blocks[e].push_back(std::move(*first));
        }
    }

    // injectivity of element -> concatenated blocks
    const int ncomp = static_cast<int>(dec.components.size());
    int width = 0;
    for (const auto& comp : dec.components) width += (comp.d + 1) * (comp.d + 1);
    DenseMat flat(nt, QVec(width, Rational(0)));
    for (int e = 0; e < nt; ++e) {
        int off = 0;
        for (int c = 0; c < ncomp; ++c) {
            const DenseMat& b = res.blocks[e][c];
            const int dim = static_cast<int>(b.size());
            for (int r = 0; r < dim; ++r)
                for (int s = 0; s < dim; ++s) flat[e][off + r * dim + s] = b[r][s];
            off += dim * dim;
        }
    }
    if (rank(flat) != nt) {
        res.ok = false;
        res.detail = "element -> blocks map is not injective";
        return res;
    }

    // center: kernel of { (u, lambda) : sum_e u_e B_e = lambda_c I on every
    // component }; its dimension is the number of isomorphism classes
    DenseMat sys(width, QVec(nt + ncomp, Rational(0)));
    {
        int off = 0;
        for (int c = 0; c < ncomp; ++c) {
            const int dim = dec.components[c].d + 1;
            for (int r = 0; r < dim; ++r)
                for (int s = 0; s < dim; ++s) {
                    const int row = off + r * dim + s;
                    for (int e = 0; e < nt; ++e)
                        sys[row][e] = res.blocks[e][c][r][s];
                    if (r == s) sys[row][nt + c] = -1;
                }
            off += dim * dim;
        }
    }
    res.center_dimension =
        static_cast<long long>(kernel_basis(std::move(sys)).size());
    return res;
}

}  // namespace otw
