// Primitive idempotents, Krein parameters and the Q-polynomial ordering.
//
// Bose-Mesner elements are carried as profiles: the coefficient vector over
// the distance-matrix basis, which is also the entry value per distance
// class.  The eigenvalue search runs on the multiply-by-A1 operator in this
// (m+1)-dimensional coordinate space; rank deficiency there is equivalent to
// rank(A1 - theta*I) < |X| and stays exact at every m.
#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "otw/linalg.hpp"
#include "otw/matrix.hpp"
#include "otw/scheme.hpp"

namespace otw {

struct SpectralData {
    int m = 0;
    long long n = 0;                       // |X|
    std::vector<long long> eigenvalues;    // Q-polynomial order
    std::vector<QVec> profiles;            // profiles[i][k]: coeff of A_k in E_i
    std::vector<long long> multiplicities; // trace(E_i)
    std::vector<std::vector<QVec>> krein;  // krein[i][j][h] = q^h_{ij}, Q-order
    std::vector<int> q_ordering;           // positions in the ascending
                                           // eigenvalue list, E_0 first
    std::vector<std::vector<long long>> valid_orderings;  // eigenvalue sequences
};

/// Product of two Bose-Mesner profiles via the intersection numbers.
inline QVec bose_mesner_product(const QVec& u, const QVec& v,
                                const DistanceMatrices& dm) {
    const int m = dm.m;
    QVec out(m + 1, Rational(0));
    for (int k = 0; k <= m; ++k) {
        if (u[k] == 0) continue;
        for (int l = 0; l <= m; ++l) {
            if (v[l] == 0) continue;
            const Rational uv = u[k] * v[l];
            for (int h = 0; h <= m; ++h)
                if (dm.p[h][k][l] != 0) out[h] += uv * to_rat(dm.p[h][k][l]);
        }
    }
    return out;
}

namespace detail {

/// Multiply-by-A1 operator in distance-matrix coordinates.
inline DenseMat a1_operator(const DistanceMatrices& dm) {
    const int m = dm.m;
    DenseMat b(m + 1, QVec(m + 1, Rational(0)));
    for (int h = 0; h <= m; ++h)
        for (int j = 0; j <= m; ++j) b[h][j] = to_rat(dm.p[h][1][j]);
    return b;
}

/// Krein parameters q^h_{ij} of an (unordered) idempotent family, solved
/// exactly from the entrywise products of profiles.
inline std::vector<std::vector<QVec>> krein_table(
    const std::vector<QVec>& profiles, long long n) {
    const int cnt = static_cast<int>(profiles.size());
    const int len = static_cast<int>(profiles[0].size());
    DenseMat s(len, QVec(cnt, Rational(0)));
    for (int k = 0; k < len; ++k)
        for (int h = 0; h < cnt; ++h) s[k][h] = profiles[h][k];
    std::vector<std::vector<QVec>> q(cnt, std::vector<QVec>(cnt));
    for (int i = 0; i < cnt; ++i)
        for (int j = 0; j < cnt; ++j) {
            QVec rhs(len);
            for (int k = 0; k < len; ++k)
                rhs[k] = to_rat(n) * profiles[i][k] * profiles[j][k];
            auto sol = solve(s, rhs);
            if (!sol)
                throw std::runtime_error(
                    "entrywise product escaped the Bose-Mesner algebra");
            for (const auto& v : *sol)
                if (v < 0)
                    throw std::runtime_error(
                        "negative Krein parameter q^h_{" + std::to_string(i) +
                        "," + std::to_string(j) + "}");
            q[i][j] = *sol;
        }
    return q;
}

/// Tridiagonal-support test for the ordering given by perm: q^h_{1j} must be
/// nonzero exactly when |h - j| = 1.
inline bool q_polynomial_ordering_valid(
    const std::vector<std::vector<QVec>>& q, const std::vector<int>& perm) {
    const int cnt = static_cast<int>(perm.size());
    for (int h = 0; h < cnt; ++h)
        for (int j = 0; j < cnt; ++j) {
            const Rational& val = q[perm[1]][perm[j]][perm[h]];
            const int gap = std::abs(h - j);
            if (gap == 1 && val == 0) return false;
            if (gap > 1 && val != 0) return false;
        }
    return true;
}

}  // namespace detail

/// Eigenvalues, idempotent profiles, multiplicities, Krein parameters and
/// the canonical Q-polynomial ordering.  All identities are verified exactly
/// before returning; any failure is a fatal inconsistency.
inline SpectralData build_spectral(const DistanceMatrices& dm) {
    const int m = dm.m;
    SpectralData sd;
    sd.m = m;
    {
        long long n = 0;
        for (long long k : dm.sphere_size) n += k;
        sd.n = n;
    }
    const DenseMat b = detail::a1_operator(dm);

    // integer eigenvalue scan
    std::vector<long long> eig;
    for (long long theta = -(m + 1); theta <= m + 1; ++theta) {
        DenseMat shifted = b;
        for (int k = 0; k <= m; ++k) shifted[k][k] -= to_rat(theta);
        if (rank(std::move(shifted)) < m + 1) eig.push_back(theta);
    }
    if (static_cast<int>(eig.size()) != m + 1)
        throw std::runtime_error("expected " + std::to_string(m + 1) +
                                 " integer eigenvalues, found " +
                                 std::to_string(eig.size()));

    // E_i as the Lagrange interpolation polynomial in A1, evaluated on the
    // profile of the identity
    std::vector<QVec> profiles;
    for (int i = 0; i <= m; ++i) {
        QVec c(m + 1, Rational(0));
        c[0] = 1;
        for (int j = 0; j <= m; ++j) {
            if (j == i) continue;
            QVec next(m + 1, Rational(0));
            const Rational denom = to_rat(eig[i]) - to_rat(eig[j]);
            for (int h = 0; h <= m; ++h) {
                Rational acc = -to_rat(eig[j]) * c[h];
                for (int k = 0; k <= m; ++k)
                    if (b[h][k] != 0 && c[k] != 0) acc += b[h][k] * c[k];
                next[h] = acc / denom;
            }
            c = std::move(next);
        }
        profiles.push_back(std::move(c));
    }

    // exact sanity: sum = I, orthogonal idempotents, eigenvector property
    {
        QVec total(m + 1, Rational(0));
        for (const auto& c : profiles)
            for (int k = 0; k <= m; ++k) total[k] += c[k];
        if (total[0] != 1) throw std::runtime_error("idempotents do not sum to I");
        for (int k = 1; k <= m; ++k)
            if (total[k] != 0)
                throw std::runtime_error("idempotents do not sum to I");
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                const QVec prod = bose_mesner_product(profiles[i], profiles[j], dm);
                for (int k = 0; k <= m; ++k) {
                    const Rational want = (i == j) ? profiles[i][k] : Rational(0);
                    if (prod[k] != want)
                        throw std::runtime_error("E_i E_j identity failed");
                }
            }
        for (int i = 0; i <= m; ++i)
            for (int h = 0; h <= m; ++h) {
                Rational acc = 0;
                for (int k = 0; k <= m; ++k)
                    if (b[h][k] != 0) acc += b[h][k] * profiles[i][k];
                if (acc != to_rat(eig[i]) * profiles[i][h])
                    throw std::runtime_error("A1 E_i = theta E_i failed");
            }
    }

    const auto q = detail::krein_table(profiles, sd.n);

    // E_0 of any Q-polynomial ordering is J/n
    int all_ones = -1;
    for (int i = 0; i <= m; ++i) {
        bool flat = true;
        for (int k = 0; k <= m; ++k)
            if (profiles[i][k] != rat_frac(1, sd.n)) flat = false;
        if (flat) all_ones = i;
    }
    if (all_ones < 0) throw std::runtime_error("no J/n eigenprojector found");
    if (eig[all_ones] != m + 1)
        throw std::runtime_error("Perron eigenvalue is not the valency");

    // exhaustive search over orderings fixing E_0
    std::vector<int> rest;
    for (int i = 0; i <= m; ++i)
        if (i != all_ones) rest.push_back(i);
    std::sort(rest.begin(), rest.end());
    std::vector<std::vector<int>> valid;
    do {
        std::vector<int> perm{all_ones};
        perm.insert(perm.end(), rest.begin(), rest.end());
        if (detail::q_polynomial_ordering_valid(q, perm)) valid.push_back(perm);
    } while (std::next_permutation(rest.begin(), rest.end()));
    if (valid.empty())
        throw std::runtime_error("no Q-polynomial ordering exists");
    // canonical choice: lexicographically smallest eigenvalue sequence
    std::sort(valid.begin(), valid.end(),
              [&](const std::vector<int>& x, const std::vector<int>& y) {
                  for (int k = 0; k <= m; ++k)
                      if (eig[x[k]] != eig[y[k]]) return eig[x[k]] < eig[y[k]];
                  return false;
              });
    for (const auto& perm : valid) {
        std::vector<long long> seq;
        for (int idx : perm) seq.push_back(eig[idx]);
        sd.valid_orderings.push_back(std::move(seq));
    }
    sd.q_ordering = valid.front();

    for (int i = 0; i <= m; ++i) {
        const int src = sd.q_ordering[i];
        sd.eigenvalues.push_back(eig[src]);
        sd.profiles.push_back(profiles[src]);
        const Rational tr = to_rat(sd.n) * profiles[src][0];
        if (tr.get_den() != 1)
            throw std::runtime_error("non-integer idempotent trace");
        sd.multiplicities.push_back(static_cast<long long>(tr.get_num().get_si()));
    }
    sd.krein.assign(m + 1, std::vector<QVec>(m + 1, QVec(m + 1)));
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j)
            for (int h = 0; h <= m; ++h)
                sd.krein[i][j][h] =
                    q[sd.q_ordering[i]][sd.q_ordering[j]][sd.q_ordering[h]];
    return sd;
}

/// Apply E_i (Q-ordered) to a vector via the distance matrices.
inline QVec idempotent_apply(const SpectralData& sd, int i, const QVec& v,
                             const DistanceMatrices& dm) {
    QVec out(v.size(), Rational(0));
    for (int k = 0; k <= sd.m; ++k) {
        const Rational& c = sd.profiles[i][k];
        if (c == 0) continue;
        const QVec av = dm.a[k].apply(v);
        for (std::size_t r = 0; r < out.size(); ++r)
            if (av[r] != 0) out[r] += c * av[r];
    }
    return out;
}

/// E_i as an explicit (dense) matrix; intended for small m only.
inline SparseMat idempotent_matrix(const SpectralData& sd, int i,
                                   const DistanceMatrices& dm) {
    SparseMat e(dm.a[0].rows, dm.a[0].cols);
    for (int k = 0; k <= sd.m; ++k)
        if (sd.profiles[i][k] != 0) e = e + (sd.profiles[i][k] * dm.a[k]);
    return e;
}

}  // namespace otw
