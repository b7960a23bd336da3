#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dyndist/graph.hpp"
#include "test_support.hpp"

using namespace dyndist;

TEST_CASE("edge list loading builds a valid graph") {
    std::istringstream in("0 1\n1 2\n");
    Graph g = Graph::from_edge_list(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    auto nbrs = g.neighbors(1);
    REQUIRE(nbrs.size() == 2);
    CHECK(nbrs[0] == 0);
    CHECK(nbrs[1] == 2);
}

TEST_CASE("self-loops and duplicates are dropped") {
    std::istringstream in("0 1\n1 0\n0 0\n");
    LoadReport report;
    Graph g = Graph::from_edge_list(in, &report);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(report.self_loops_dropped == 1);
    CHECK(report.duplicates_dropped == 1);
}

TEST_CASE("comments, blank lines and arbitrary whitespace are accepted") {
    std::istringstream in("# header\n\n  5\t7  # trailing comment\n9 5\n");
    Graph g = Graph::from_edge_list(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    // External ids are preserved through the dense remap.
    CHECK(g.external_id(0) == 5);
    CHECK(g.external_id(1) == 7);
    CHECK(g.external_id(2) == 9);
    CHECK(g.internal_id(9) == 2);
    CHECK(g.internal_id(8) == -1);
}

TEST_CASE("malformed lines fail with the line number") {
    std::istringstream in("0 1\nfoo 2\n");
    CHECK_THROWS_WITH_AS(Graph::from_edge_list(in), doctest::Contains("line 2"), ParseError);

    std::istringstream three("0 1 2\n");
    CHECK_THROWS_AS(Graph::from_edge_list(three), ParseError);

    std::istringstream one_token("0\n");
    CHECK_THROWS_AS(Graph::from_edge_list(one_token), ParseError);
}

TEST_CASE("empty input is an error") {
    std::istringstream in("# nothing here\n");
    CHECK_THROWS_AS(Graph::from_edge_list(in), EmptyInputError);
}

TEST_CASE("karate club loads with the expected shape") {
    LoadReport report;
    Graph g = Graph::from_edge_list_file(testsupport::data_path("karate.edges"), &report);
    CHECK(g.vertex_count() == 34);
    CHECK(g.edge_count() == 78);
    double avg = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        avg += g.degree(u);
    }
    avg /= g.vertex_count();
    CHECK(avg == doctest::Approx(4.588).epsilon(0.001));
}

TEST_CASE("graph invariants hold on random graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Graph g = testsupport::random_graph(40, 120, seed);
        std::int64_t degree_sum = 0;
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            auto nbrs = g.neighbors(u);
            degree_sum += g.degree(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                CHECK(nbrs[i] != u);  // no self loops
                if (i > 0) {
                    CHECK(nbrs[i - 1] < nbrs[i]);  // strictly increasing
                }
                // symmetry
                auto back = g.neighbors(nbrs[i]);
                CHECK(std::find(back.begin(), back.end(), u) != back.end());
            }
        }
        CHECK(degree_sum == 2 * g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            CHECK(g.edge(e).u < g.edge(e).v);
            CHECK(g.edge_id(g.edge(e)) == e);
        }
    }
}

TEST_CASE("jaccard distances on hand-checked shapes") {
    // Isolated edge: closed neighborhoods coincide.
    std::istringstream pair_in("0 1\n");
    Graph pair = Graph::from_edge_list(pair_in);
    CHECK(jaccard_init(pair)[0] == doctest::Approx(0.0));

    // Triangle: every edge at distance zero.
    std::istringstream tri_in("0 1\n0 2\n1 2\n");
    Graph tri = Graph::from_edge_list(tri_in);
    for (double d : jaccard_init(tri)) {
        CHECK(d == doctest::Approx(0.0));
    }

    // Path u-v-w: endpoints share two of three closed-neighborhood members.
    std::istringstream path_in("0 1\n1 2\n");
    Graph path = Graph::from_edge_list(path_in);
    auto dist = jaccard_init(path);
    CHECK(dist[0] == doctest::Approx(1.0 / 3.0));
    CHECK(dist[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("jaccard matches the set-based oracle on random graphs") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        Graph g = testsupport::random_graph(50, 170, seed);
        auto dist = jaccard_init(g);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const EdgeKey& k = g.edge(e);
            CHECK(dist[e] == doctest::Approx(testsupport::oracle_jaccard(g, k.u, k.v))
                                 .epsilon(1e-12));
            CHECK(dist[e] >= 0.0);
            CHECK(dist[e] <= 1.0);
        }
    }
}

TEST_CASE("jaccard distance is zero exactly for equal closed neighborhoods") {
    Graph g = testsupport::random_graph(30, 80, 99);
    auto dist = jaccard_init(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeKey& k = g.edge(e);
        auto nu = testsupport::neighbor_set(g, k.u);
        auto nv = testsupport::neighbor_set(g, k.v);
        nu.insert(k.u);
        nv.insert(k.v);
        CHECK((dist[e] == 0.0) == (nu == nv));
    }
}

TEST_CASE("star store materializes sorted stars with weight sums") {
    Graph g = testsupport::random_graph(20, 50, 5);
    auto dist = jaccard_init(g);
    StarStore stars(g, dist);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        auto star = stars.star(u);
        REQUIRE(star.size() == static_cast<std::size_t>(g.degree(u)));
        double wsum = 0.0;
        for (std::size_t i = 0; i < star.size(); ++i) {
            CHECK(star[i].v == g.neighbors(u)[i]);
            CHECK(star[i].d ==
                  doctest::Approx(testsupport::edge_distance(g, dist, u, star[i].v)));
            wsum += 1.0 - star[i].d;
        }
        CHECK(stars.weight_sum(u) == doctest::Approx(wsum));
    }
}
