#include <doctest.h>

#include <random>

#include "nulla/graph.hpp"
#include "oracles.hpp"

using namespace nulla;

namespace {

std::vector<std::pair<int, int>> plain_edges(const Graph& g)
{
    std::vector<std::pair<int, int>> e;
    for (auto [u, v] : g.edges())
        e.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return e;
}

} // namespace

TEST_SUITE("graphs")
{
    TEST_CASE("DIMACS parsing")
    {
        CHECK(parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n") == gen_complete(3));
        CHECK(parse_dimacs("p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n") == gen_complete(4));
        std::vector<std::string> warnings;
        Graph g = parse_dimacs("c hi\np edge 2 1\ne 2 1\ne 1 2\n", &warnings);
        CHECK(g.n_vertices() == 2);
        CHECK(g.n_edges() == 1);
        CHECK(g.has_edge(1, 2));
        CHECK(warnings.empty());
        parse_dimacs("p edge 3 5\ne 1 2\n", &warnings);
        CHECK(warnings.size() == 1);
    }

    TEST_CASE("DIMACS errors carry line numbers")
    {
        CHECK_THROWS_AS(parse_dimacs("e 1 2\n"), DimacsError);
        CHECK_THROWS_AS(parse_dimacs("p edge 2 1\ne 1 3\n"), DimacsError);
        CHECK_THROWS_AS(parse_dimacs("p edge 2 1\ne 1 1\n"), DimacsError);
        CHECK_THROWS_AS(parse_dimacs("p edge 2 1\ne 1\n"), DimacsError);
        CHECK_THROWS_AS(parse_dimacs("p edge 2 1\np edge 2 1\n"), DimacsError);
        try {
            parse_dimacs("c x\np edge 3 1\ne 1 2\nq\n");
            FAIL("expected an error");
        } catch (const DimacsError& e) {
            CHECK(e.line() == 4);
        }
    }

    TEST_CASE("DIMACS round trip")
    {
        for (auto spec : {"complete:5", "kneser:6,2", "mycielski:5", "random:12,0.4,3", "wheel:7"}) {
            Graph g = generate(spec);
            CHECK(parse_dimacs(write_dimacs(g, spec)) == g);
        }
        Graph isolated(5, {{1, 2}});
        CHECK(parse_dimacs(write_dimacs(isolated)) == isolated);
    }

    TEST_CASE("generator sizes")
    {
        CHECK(gen_kneser(8, 3).n_vertices() == 56);
        CHECK(gen_kneser(8, 3).n_edges() == 280);
        CHECK(gen_kneser(5, 2).n_vertices() == 10);
        CHECK(gen_kneser(5, 2).n_edges() == 15);
        CHECK(gen_kneser(10, 4).n_vertices() == 210);
        CHECK(gen_kneser(10, 4).n_edges() == 1575);
        CHECK(gen_mycielski(7).n_vertices() == 95);
        CHECK(gen_mycielski(7).n_edges() == 755);
        CHECK(gen_mycielski(4).n_vertices() == 11);
        CHECK(gen_mycielski(4).n_edges() == 20);
        CHECK(gen_wheel(5).n_vertices() == 6);
        CHECK(gen_wheel(5).n_edges() == 10);
        CHECK(gen_complete(4).n_edges() == 6);
        CHECK(gen_cycle(5).n_edges() == 5);
        CHECK(gen_path(3).n_edges() == 2);
        CHECK_THROWS_AS(generate("kneser:8"), std::invalid_argument);
        CHECK_THROWS_AS(generate("hypercube:3"), std::invalid_argument);
        CHECK_THROWS_AS(generate("random:10,1.5,1"), std::invalid_argument);
    }

    TEST_CASE("Mycielski growth and triangle-freeness")
    {
        for (std::uint32_t k = 2; k < 8; ++k) {
            CHECK(gen_mycielski(k + 1).n_vertices() == 2 * gen_mycielski(k).n_vertices() + 1);
            CHECK(enumerate_triangles(gen_mycielski(k)).empty());
        }
    }

    TEST_CASE("random graphs are seeded")
    {
        CHECK(gen_random(16, 0.27, 5) == gen_random(16, 0.27, 5));
        CHECK_FALSE(gen_random(16, 0.27, 5) == gen_random(16, 0.27, 6));
        CHECK(gen_random(10, 0.0, 1).n_edges() == 0);
        CHECK(gen_random(10, 1.0, 1).n_edges() == 45);
        std::size_t total = 0;
        for (std::uint64_t s = 0; s < 200; ++s)
            total += gen_random(16, 0.27, s).n_edges();
        const double mean = static_cast<double>(total) / 200.0;
        CHECK(mean > 0.27 * 120 - 3);
        CHECK(mean < 0.27 * 120 + 3);
    }

    TEST_CASE("triangles and cliques")
    {
        CHECK(enumerate_triangles(gen_complete(4)).size() == 4);
        CHECK(enumerate_triangles(gen_petersen()).empty());
        CHECK(enumerate_triangles(gen_wheel(5)).size() == 5);
        CHECK(enumerate_cliques(gen_complete(5), 4).size() == 5);
        CHECK(enumerate_cliques(gen_complete(5), 3).size() == 10);
        CHECK(enumerate_cliques(gen_complete(5), 2).size() == 10);
        auto t = enumerate_triangles(gen_complete(4));
        CHECK(t.front() == std::vector<Vertex>{1, 2, 3});
    }

    TEST_CASE("spanning tree")
    {
        auto t = spanning_tree(gen_complete(3), 1);
        CHECK(t == std::map<Vertex, Vertex>{{2, 1}, {3, 1}});
        CHECK(spanning_tree(gen_path(3), 1) == std::map<Vertex, Vertex>{{2, 1}, {3, 2}});
        Graph two(4, {{1, 2}, {3, 4}});
        CHECK(spanning_tree(two, 1) == std::map<Vertex, Vertex>{{2, 1}});
        CHECK_THROWS_AS(spanning_tree(two, 9), std::invalid_argument);
        CHECK(component_roots(two) == std::vector<Vertex>{1, 1, 3, 3});
    }

    TEST_CASE("coloring oracle")
    {
        CHECK_FALSE(oracle_colorable(gen_complete(4), 3));
        CHECK(oracle_colorable(gen_petersen(), 3));
        CHECK_FALSE(oracle_colorable(gen_wheel(5), 3));
        CHECK(oracle_colorable(gen_wheel(6), 3));
        CHECK_FALSE(oracle_colorable(gen_mycielski(4), 3));
        CHECK(oracle_colorable(gen_mycielski(4), 4));
        CHECK(oracle_colorable(Graph(3, {}), 1));
        CHECK_FALSE(oracle_colorable(gen_path(2), 1));
    }

    TEST_CASE("coloring oracle agrees with exhaustive enumeration")
    {
        std::mt19937_64 rng(1);
        for (int trial = 0; trial < 300; ++trial) {
            const auto n = static_cast<std::uint32_t>(1 + rng() % 6);
            Graph g = gen_random(n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0, rng());
            for (std::uint32_t k = 1; k <= 4; ++k)
                CHECK(oracle_colorable(g, k) ==
                      oracle::colorable_bruteforce(static_cast<int>(n), plain_edges(g), static_cast<int>(k)));
        }
    }

    TEST_CASE("disjoint union and fingerprint")
    {
        Graph u = gen_complete(4).disjoint_union(gen_path(3));
        CHECK(u.n_vertices() == 7);
        CHECK(u.n_edges() == 8);
        CHECK(u.has_edge(5, 6));
        CHECK(gen_complete(4).fingerprint().size() == 16);
        CHECK(gen_complete(4).fingerprint() == generate("complete:4").fingerprint());
        CHECK(gen_complete(4).fingerprint() != gen_cycle(4).fingerprint());
    }
}
