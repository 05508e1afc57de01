#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "otw/odd_graph.hpp"

using namespace otw;

namespace {

Subset from_elems(std::initializer_list<int> elems) {
    Subset s = 0;
    for (int e : elems) s |= Subset{1} << (e - 1);
    return s;
}

/// Independent oracle: every triple type that actually occurs, by scanning
/// all ordered triples.
std::set<TripleType> brute_force_types(const GraphContext& ctx) {
    std::set<TripleType> seen;
    for (Subset x : ctx.vertices)
        for (Subset y : ctx.vertices)
            for (Subset z : ctx.vertices) seen.insert(triple_type(x, y, z));
    return seen;
}

}  // namespace

TEST_CASE("vertex enumeration") {
    CHECK(enum_vertices(1).vertex_count == 3);
    CHECK(enum_vertices(2).vertex_count == 10);   // Petersen graph
    CHECK(enum_vertices(3).vertex_count == 35);

    const GraphContext ctx = enum_vertices(3);
    CHECK(ctx.ground_set_size == 7);
    CHECK(ctx.vertices[0] == ctx.base_vertex);
    CHECK(ctx.base_vertex == from_elems({1, 2, 3}));
    for (Subset v : ctx.vertices) CHECK(popcount(v) == 3);
    // canonical order: ascending as sorted element tuples
    auto sorted = ctx.vertices;
    std::sort(sorted.begin(), sorted.end(), [](Subset a, Subset b) {
        return subset_elements(a) < subset_elements(b);
    });
    CHECK(sorted == ctx.vertices);
    CHECK(std::set<Subset>(ctx.vertices.begin(), ctx.vertices.end()).size() ==
          35);

    CHECK_THROWS_AS(enum_vertices(0), std::invalid_argument);
    CHECK_THROWS_AS(enum_vertices(9), std::invalid_argument);
}

TEST_CASE("graph distance") {
    const GraphContext ctx = enum_vertices(3);
    CHECK(graph_distance(from_elems({1, 2, 3}), from_elems({4, 5, 6}), ctx) == 1);
    CHECK(graph_distance(from_elems({1, 2, 3}), from_elems({1, 2, 4}), ctx) == 2);
    CHECK(graph_distance(from_elems({1, 2, 3}), from_elems({1, 4, 5}), ctx) == 3);

    for (int m : {2, 3}) {
        const GraphContext c = enum_vertices(m);
        for (Subset x : c.vertices)
            for (Subset y : c.vertices) {
                const int d = graph_distance(x, y, c);
                CHECK(d == graph_distance(y, x, c));
                CHECK(d >= 0);
                CHECK(d <= m);
                if (x == y) CHECK(d == 0);
                CHECK((d == 1) == ((x & y) == 0));
            }
    }
}

TEST_CASE("triple types") {
    CHECK(triple_type(from_elems({1}), from_elems({2}), from_elems({2})) ==
          TripleType{0, 0, 1, 0});
    CHECK(triple_type(from_elems({1, 2, 3}), from_elems({1, 4, 5}),
                      from_elems({1, 6, 7})) == TripleType{1, 1, 1, 1});
    CHECK(triple_type(from_elems({1, 2}), from_elems({3, 4}),
                      from_elems({3, 5})) == TripleType{0, 0, 1, 0});
}

TEST_CASE("type index set") {
    const TypeIndexSet t1 = enum_valid_types(1);
    const std::vector<TripleType> expect{{0, 0, 0, 0},
                                         {0, 0, 1, 0},
                                         {0, 1, 0, 0},
                                         {1, 0, 0, 0},
                                         {1, 1, 1, 1}};
    CHECK(t1.types == expect);

    CHECK(enum_valid_types(2).size() == 15);
    CHECK(enum_valid_types(3).size() == 35);
    CHECK(enum_valid_types(4).size() == 70);
    CHECK(enum_valid_types(5).size() == 126);
    CHECK(enum_valid_types(6).size() == 210);
    for (int m = 1; m <= 6; ++m)
        CHECK(enum_valid_types(m).size() == binomial(m + 4, 4));

    // the closed form matches the brute-force occurrence set
    for (int m = 1; m <= 3; ++m) {
        const auto brute = brute_force_types(enum_vertices(m));
        const TypeIndexSet types = enum_valid_types(m);
        CHECK(std::set<TripleType>(types.types.begin(), types.types.end()) ==
              brute);
    }
}

TEST_CASE("partition property") {
    // every ordered triple lands in exactly one admissible type
    for (int m = 1; m <= 4; ++m) {
        const GraphContext ctx = enum_vertices(m);
        const TypeIndexSet types = enum_valid_types(m);
        bool all_in = true;
        for (Subset x : ctx.vertices)
            for (Subset y : ctx.vertices)
                for (Subset z : ctx.vertices)
                    if (!in_index_set(triple_type(x, y, z), m)) all_in = false;
        CHECK(all_in);
        for (const TripleType& tt : types.types) CHECK(in_index_set(tt, m));
    }
}

TEST_CASE("orbit representatives") {
    const auto r = orbit_representative(TripleType{1, 1, 1, 1}, 3);
    CHECK(r[0] == from_elems({1, 2, 3}));
    CHECK(r[1] == from_elems({1, 4, 5}));
    CHECK(r[2] == from_elems({1, 6, 7}));

    const auto r1 = orbit_representative(TripleType{1, 1, 1, 1}, 1);
    CHECK(r1[0] == from_elems({1}));
    CHECK(r1[1] == from_elems({1}));
    CHECK(r1[2] == from_elems({1}));

    for (int m : {2, 4}) {
        const auto rm = orbit_representative(TripleType{m, m, m, m}, m);
        CHECK(rm[0] == rm[1]);
        CHECK(rm[1] == rm[2]);
        CHECK(rm[0] == interval_mask(1, m));
    }

    for (int m = 1; m <= 6; ++m)
        for (const TripleType& tt : enum_valid_types(m).types) {
            const auto rep = orbit_representative(tt, m);
            CHECK(popcount(rep[0]) == m);
            CHECK(popcount(rep[1]) == m);
            CHECK(popcount(rep[2]) == m);
            CHECK(triple_type(rep[0], rep[1], rep[2]) == tt);
        }

    CHECK_THROWS_AS(orbit_representative(TripleType{0, 0, 0, 0}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(orbit_representative(TripleType{2, 0, 0, 0}, 1),
                    std::invalid_argument);
}

TEST_CASE("diagonal group action oracle (m=2)") {
    // fibers of triple_type = orbits of Sym(5) acting diagonally on X^3
    const GraphContext ctx = enum_vertices(2);
    const int n = static_cast<int>(ctx.vertex_count);
    std::vector<int> perm{1, 2, 3, 4, 5};
    std::sort(perm.begin(), perm.end());
    std::map<std::array<int, 3>, std::array<int, 3>> canon;
    do {
        std::vector<int> vp(n);
        for (int x = 0; x < n; ++x) {
            Subset s = ctx.vertices[x], img = 0;
            for (int e = 1; s; ++e, s >>= 1)
                if (s & 1) img |= Subset{1} << (perm[e - 1] - 1);
            vp[x] = ctx.index_of(img);
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    const std::array<int, 3> key{x, y, z};
                    const std::array<int, 3> img{vp[x], vp[y], vp[z]};
                    auto [it, ins] = canon.emplace(key, img);
                    if (!ins) it->second = std::min(it->second, img);
                }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<std::array<int, 3>, TripleType> orbit_to_type;
    std::map<TripleType, std::set<std::array<int, 3>>> type_to_orbits;
    bool consistent = true;
    for (const auto& [triple, rep] : canon) {
        const TripleType tt =
            triple_type(ctx.vertices[triple[0]], ctx.vertices[triple[1]],
                        ctx.vertices[triple[2]]);
        auto [it, ins] = orbit_to_type.emplace(rep, tt);
        if (!ins && it->second != tt) consistent = false;
        type_to_orbits[tt].insert(rep);
    }
    CHECK(consistent);  // each orbit has a single type
    for (const auto& [tt, orbits] : type_to_orbits)
        CHECK(orbits.size() == 1);  // each type is a single orbit
}
