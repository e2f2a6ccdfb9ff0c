#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "nodallab/graph.hpp"
#include "nodallab/rng.hpp"

using namespace nodallab;

TEST_CASE("edge list construction canonicalizes and validates") {
    Graph g = Graph::from_edge_list(4, {{3, 1}, {0, 2}, {2, 1}});
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    CHECK(g.has_edge(1, 3));
    CHECK(g.has_edge(3, 1));
    CHECK(!g.has_edge(0, 3));
    CHECK(g.degree(2) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(!g.regular_degree().has_value());

    CHECK_THROWS_AS(Graph::from_edge_list(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edge_list(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edge_list(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edge_list(-1, {}), std::invalid_argument);
}

TEST_CASE("adjacency views are sorted and consistent with edges") {
    Graph g = fixtures::petersen();
    CHECK(g.regular_degree() == 3);
    int total = 0;
    for (int v = 0; v < 10; ++v) {
        auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        total += static_cast<int>(nb.size());
        for (int w : nb) CHECK(g.has_edge(v, w));
    }
    CHECK(total == 2 * g.edge_count());
}

TEST_CASE("content hash separates graphs and tracks equality") {
    Graph a = fixtures::cycle(6), b = fixtures::cycle(6), c = fixtures::path(6);
    CHECK(a.content_hash() == b.content_hash());
    CHECK(a.content_hash() != c.content_hash());
    CHECK(fixtures::complete(4).content_hash() !=
          Graph::from_edge_list(5, fixtures::complete(4).edges()).content_hash());
}

TEST_CASE("random regular graphs: validation, regularity, determinism") {
    CHECK_THROWS_AS(random_regular(5, 3, 1), std::invalid_argument);  // odd n*d
    CHECK_THROWS_AS(random_regular(4, 4, 1), std::invalid_argument);  // d > n-1
    CHECK_THROWS_AS(random_regular(4, -1, 1), std::invalid_argument);

    Graph empty = random_regular(6, 0, 1);
    CHECK(empty.edge_count() == 0);

    for (auto [n, d] : {std::pair{8, 3}, {9, 4}, {20, 7}, {50, 3}, {12, 11}, {40, 20}}) {
        Graph g = random_regular(n, d, 99);
        CHECK(g.vertex_count() == n);
        CHECK(g.regular_degree() == d);
        CHECK(g.edge_count() == n * d / 2);
    }

    CHECK(random_regular(30, 3, 5).content_hash() == random_regular(30, 3, 5).content_hash());
    CHECK(random_regular(30, 3, 5).content_hash() != random_regular(30, 3, 6).content_hash());

    // Dense case: rejection alone would essentially never finish here, the
    // swap repair must.
    Graph dense = random_regular(120, 100, 7);
    CHECK(dense.regular_degree() == 100);
}

TEST_CASE("girth on named graphs") {
    CHECK(girth(fixtures::complete(4)) == 3);
    CHECK(girth(fixtures::cycle(6)) == 6);
    CHECK(girth(fixtures::petersen()) == 5);
    CHECK(girth(fixtures::path(7)) == kInfiniteGirth);
    CHECK(girth(fixtures::star(5)) == kInfiniteGirth);
    CHECK(girth(fixtures::complete_bipartite(3, 3)) == 4);
    CHECK(girth(fixtures::hypercube3()) == 4);
    CHECK(girth(Graph::from_edge_list(3, {})) == kInfiniteGirth);
}

TEST_CASE("girth matches the brute-force oracle on the catalog and fuzz") {
    for (const Graph& g : fixtures::catalog()) CHECK(girth(g) == fixtures::brute_girth(g));
    for (int i = 0; i < 200; ++i) {
        Graph g = fixtures::random_simple(3 + i % 10, 0.15 + 0.05 * (i % 8), 1000 + i);
        CAPTURE(i);
        CHECK(girth(g) == fixtures::brute_girth(g));
    }
}

TEST_CASE("bicycle-free radius") {
    // K4: already the radius-1 ball at any vertex holds three cycles.
    auto k4 = bicycle_free_radius(fixtures::complete(4));
    CHECK(k4.radius == 0);
    CHECK(!k4.diameter_capped);

    // Petersen: radius-1 balls are stars, radius-2 balls are everything.
    auto pet = bicycle_free_radius(fixtures::petersen());
    CHECK(pet.radius == 1);
    CHECK(!pet.diameter_capped);

    // A single cycle never collects two of them.
    auto c6 = bicycle_free_radius(fixtures::cycle(6));
    CHECK(c6.radius == fixtures::cycle(6).diameter());
    CHECK(c6.diameter_capped);

    auto tree = bicycle_free_radius(fixtures::path(9));
    CHECK(tree.radius == 8);
    CHECK(tree.diameter_capped);
}

TEST_CASE("balls and induced components") {
    Graph c6 = fixtures::cycle(6);
    VertexSet b = ball(c6, VertexSet::of({0}, 6), 2);
    CHECK(b.members == std::vector<int>{0, 1, 2, 4, 5});
    CHECK(ball(c6, VertexSet::of({0, 3}, 6), 1).members == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(ball(c6, VertexSet::of({5}, 6), 0).members == std::vector<int>{5});

    ComponentPartition parts = components(c6, VertexSet::of({0, 1, 3, 4}, 6));
    REQUIRE(parts.blocks.size() == 2);
    CHECK(parts.blocks[0].members == std::vector<int>{0, 1});
    CHECK(parts.blocks[1].members == std::vector<int>{3, 4});
}

TEST_CASE("induced components match a DFS oracle on fuzzed subsets") {
    rng::SplitMix64 gen(3);
    for (int i = 0; i < 120; ++i) {
        Graph g = fixtures::random_simple(4 + i % 9, 0.3, 500 + i);
        std::vector<int> keep;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (gen.next() & 1) keep.push_back(v);
        auto want = fixtures::dfs_components(g, keep);
        ComponentPartition got = components(g, VertexSet::of(keep, g.vertex_count()));
        REQUIRE(got.blocks.size() == want.size());
        for (std::size_t b = 0; b < want.size(); ++b) CHECK(got.blocks[b].members == want[b]);
    }
}

TEST_CASE("short cycle enumeration: counts and canonical form") {
    // K4: four triangles, three quadrilaterals.
    CycleList k4 = short_cycles(fixtures::complete(4), 4);
    CHECK(k4.complete);
    CHECK(k4.cycles.size() == 7);

    // K5 by length: 10 triangles, 15 C4s, 12 C5s.
    CHECK(short_cycles(fixtures::complete(5), 3).cycles.size() == 10);
    CHECK(short_cycles(fixtures::complete(5), 4).cycles.size() == 25);
    CHECK(short_cycles(fixtures::complete(5), 5).cycles.size() == 37);

    CycleList pent = short_cycles(fixtures::petersen(), 5);
    CHECK(pent.complete);
    CHECK(pent.cycles.size() == 12);  // the pentagons
    for (const auto& cyc : pent.cycles) {
        REQUIRE(cyc.size() == 5);
        // Canonical: smallest vertex first, then its smaller cycle-neighbor.
        CHECK(*std::min_element(cyc.begin(), cyc.end()) == cyc[0]);
        CHECK(cyc[1] < cyc.back());
        std::set<int> uniq(cyc.begin(), cyc.end());
        CHECK(uniq.size() == 5);
        Graph p = fixtures::petersen();
        for (std::size_t j = 0; j < 5; ++j) CHECK(p.has_edge(cyc[j], cyc[(j + 1) % 5]));
    }

    CHECK(short_cycles(fixtures::cycle(8), 7).cycles.empty());
    CHECK(short_cycles(fixtures::cycle(8), 8).cycles.size() == 1);

    // A tiny budget must be reported, not silently truncated.
    CycleList starved = short_cycles(fixtures::complete(7), 7, 10);
    CHECK(!starved.complete);
}

TEST_CASE("diameter and connectivity") {
    CHECK(fixtures::path(5).diameter() == 4);
    CHECK(fixtures::petersen().diameter() == 2);
    CHECK(fixtures::complete(4).diameter() == 1);
    CHECK(fixtures::path(5).is_connected());

    Graph two = Graph::from_edge_list(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    CHECK(!two.is_connected());
    CHECK(two.diameter() == 2);  // per-component eccentricity
}
