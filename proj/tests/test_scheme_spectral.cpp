#include <catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "otw/linalg.hpp"
#include "otw/odd_graph.hpp"
#include "otw/scheme.hpp"
#include "otw/spectral.hpp"

using namespace otw;

namespace {

SparseMat all_ones(int n) {
    SparseMat j(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) j.data[r].emplace_back(c, 1);
    return j;
}

/// Independent multiplicity oracle: dim ker(A1 - theta I) by full elimination.
int eigen_mult(const DistanceMatrices& dm, long long theta) {
    DenseMat a = dm.a[1].to_dense();
    for (std::size_t v = 0; v < a.size(); ++v) a[v][v] -= to_rat(theta);
    return static_cast<int>(kernel_basis(a).size());
}

}  // namespace

TEST_CASE("distance matrices form an association scheme") {
    for (int m = 1; m <= 3; ++m) {
        const GraphContext ctx = enum_vertices(m);
        const DistanceMatrices dm = build_distance_matrices(ctx);
        const int n = static_cast<int>(ctx.vertex_count);

        CHECK(dm.a[0] == SparseMat::identity(n));
        SparseMat sum(n, n);
        for (int i = 0; i <= m; ++i) {
            sum = sum + dm.a[i];
            CHECK(dm.a[i].transpose() == dm.a[i]);
        }
        CHECK(sum == all_ones(n));

        // full Bose-Mesner check: A_i A_j = sum_h p^h_{ij} A_h, which also
        // certifies that the one-representative intersection numbers are
        // pair-independent (distance regularity)
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                SparseMat expect(n, n);
                for (int h = 0; h <= m; ++h)
                    expect = expect + (to_rat(dm.p[h][i][j]) * dm.a[h]);
                CHECK((dm.a[i] * dm.a[j]) == expect);
            }

        // all-pairs recount of every p^h_{ij}
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const int h =
                    graph_distance(ctx.vertices[x], ctx.vertices[y], ctx);
                std::vector<std::vector<long long>> cnt(
                    m + 1, std::vector<long long>(m + 1, 0));
                for (int z = 0; z < n; ++z)
                    ++cnt[graph_distance(ctx.vertices[x], ctx.vertices[z], ctx)]
                         [graph_distance(ctx.vertices[z], ctx.vertices[y], ctx)];
                for (int i = 0; i <= m; ++i)
                    for (int j = 0; j <= m; ++j)
                        CHECK(cnt[i][j] == dm.p[h][i][j]);
            }
    }
}

TEST_CASE("sphere sizes") {
    const DistanceMatrices d3 = build_distance_matrices(enum_vertices(3));
    CHECK(d3.sphere_size == std::vector<long long>{1, 4, 12, 18});
    const DistanceMatrices d2 = build_distance_matrices(enum_vertices(2));
    CHECK(d2.sphere_size == std::vector<long long>{1, 3, 6});
    for (int m = 1; m <= 5; ++m) {
        const DistanceMatrices dm = build_distance_matrices(enum_vertices(m));
        long long total = 0;
        for (long long k : dm.sphere_size) total += k;
        CHECK(total == binomial(2 * m + 1, m));
        CHECK(dm.sphere_size[1] == m + 1);  // valency
    }
}

TEST_CASE("dual idempotents") {
    const GraphContext ctx = enum_vertices(3);
    const DistanceMatrices dm = build_distance_matrices(ctx);
    const DualIdempotents dual = build_dual_idempotents(ctx, dm);
    const int n = static_cast<int>(ctx.vertex_count);

    SparseMat sum(n, n);
    for (int i = 0; i <= 3; ++i) {
        sum = sum + dual.estar[i];
        for (int j = 0; j <= 3; ++j) {
            const SparseMat prod = dual.estar[i] * dual.estar[j];
            if (i == j)
                CHECK(prod == dual.estar[i]);
            else
                CHECK(prod.is_zero());
        }
        CHECK(dual.estar[i].nnz() == dm.sphere_size[i]);
    }
    CHECK(sum == SparseMat::identity(n));
    CHECK(dual.estar[0].entry(0, 0) == 1);  // base vertex at index 0

    QVec v(n, Rational(1));
    const QVec v1 = estar_apply(dual, 1, v);
    Rational support = 0;
    for (const auto& x : v1) support += x;
    CHECK(support == to_rat(dm.sphere_size[1]));
}

TEST_CASE("Petersen spectrum") {
    const GraphContext ctx = enum_vertices(2);
    const DistanceMatrices dm = build_distance_matrices(ctx);
    const SpectralData sd = build_spectral(dm);

    std::set<std::pair<long long, long long>> got;
    for (int i = 0; i <= 2; ++i)
        got.emplace(sd.eigenvalues[i], sd.multiplicities[i]);
    CHECK(got == std::set<std::pair<long long, long long>>{
                     {3, 1}, {-2, 4}, {1, 5}});

    // oracle: multiplicities by full-matrix kernel dimension
    for (int i = 0; i <= 2; ++i)
        CHECK(eigen_mult(dm, sd.eigenvalues[i]) == sd.multiplicities[i]);

    // full-matrix idempotent identities at this size
    const int n = 10;
    SparseMat sum(n, n);
    for (int i = 0; i <= 2; ++i) {
        const SparseMat ei = idempotent_matrix(sd, i, dm);
        sum = sum + ei;
        CHECK((ei * ei) == ei);
        for (int j = 0; j < i; ++j)
            CHECK((ei * idempotent_matrix(sd, j, dm)).is_zero());
        CHECK((dm.a[1] * ei) == (to_rat(sd.eigenvalues[i]) * ei));
    }
    CHECK(sum == SparseMat::identity(n));
    CHECK(sd.eigenvalues[0] == 3);  // Q-order starts with the Perron value
}

TEST_CASE("O_4 spectrum") {
    const DistanceMatrices dm = build_distance_matrices(enum_vertices(3));
    const SpectralData sd = build_spectral(dm);
    CHECK(sd.eigenvalues == std::vector<long long>{4, -3, 2, -1});
    CHECK(sd.multiplicities == std::vector<long long>{1, 6, 14, 14});
    for (int i = 0; i <= 3; ++i)
        CHECK(eigen_mult(dm, sd.eigenvalues[i]) == sd.multiplicities[i]);
}

TEST_CASE("spectral invariants across m") {
    for (int m = 1; m <= 5; ++m) {
        const DistanceMatrices dm = build_distance_matrices(enum_vertices(m));
        const SpectralData sd = build_spectral(dm);

        CHECK(static_cast<int>(sd.eigenvalues.size()) == m + 1);
        CHECK(std::set<long long>(sd.eigenvalues.begin(), sd.eigenvalues.end())
                  .size() == static_cast<std::size_t>(m + 1));
        long long total = 0;
        for (long long mult : sd.multiplicities) {
            CHECK(mult > 0);
            total += mult;
        }
        CHECK(total == sd.n);
        CHECK(sd.eigenvalues[0] == m + 1);
        CHECK(sd.multiplicities[0] == 1);
        // trace of A1 vanishes: sum of theta_i * mult_i = 0
        Rational tr = 0;
        for (int i = 0; i <= m; ++i)
            tr += to_rat(sd.eigenvalues[i]) * to_rat(sd.multiplicities[i]);
        CHECK(tr == 0);

        // Krein parameters: nonnegative (enforced), symmetric, q^h_{0j} = d_hj
        CHECK(!sd.valid_orderings.empty());
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j)
                for (int h = 0; h <= m; ++h) {
                    CHECK(sd.krein[i][j][h] >= 0);
                    CHECK(sd.krein[i][j][h] == sd.krein[j][i][h]);
                    if (i == 0)
                        CHECK(sd.krein[i][j][h] ==
                              (h == j ? Rational(1) : Rational(0)));
                }
        // tridiagonal support of q^h_{1j} in the chosen ordering
        for (int h = 0; h <= m; ++h)
            for (int j = 0; j <= m; ++j) {
                if (std::abs(h - j) == 1) CHECK(sd.krein[1][j][h] != 0);
                if (std::abs(h - j) > 1) CHECK(sd.krein[1][j][h] == 0);
            }
        // canonical ordering is the lex-smallest valid sequence
        for (const auto& seq : sd.valid_orderings)
            CHECK(sd.eigenvalues <= seq);
    }
}
