#include <doctest.h>

#include <random>

#include "nulla/encode.hpp"
#include "oracles.hpp"

using namespace nulla;

namespace {

EncodingOptions opts(std::uint32_t k, std::uint32_t p, bool preprocess = false, CutterMode c = CutterMode::none)
{
    EncodingOptions o;
    o.k = k;
    o.field = FieldSpec(p);
    o.preprocess = preprocess;
    o.cutters = c;
    return o;
}

// Evaluates a GF(2)-coefficient polynomial at a GF(4) point.
oracle::GF4 eval_gf4(const Polynomial& f, const std::vector<oracle::GF4>& x)
{
    oracle::GF4 sum{};
    for (const auto& [m, c] : f.terms()) {
        oracle::GF4 t{static_cast<int>(c & 1), 0};
        for (const auto& [v, e] : m.factors())
            t = t * oracle::gf4_pow(x[v], e);
        sum = sum + t;
    }
    return sum;
}

// The cube roots of unity in GF(4): 1, a, a + 1.
const oracle::GF4 roots[3] = {{1, 0}, {0, 1}, {1, 1}};

bool common_zero_gf4(const PolySystem& F, const std::vector<oracle::GF4>& x)
{
    for (const auto& f : F.polys())
        if (!(eval_gf4(f, x) == oracle::GF4{}))
            return false;
    return true;
}

std::vector<std::pair<int, int>> plain_edges(const Graph& g)
{
    std::vector<std::pair<int, int>> e;
    for (auto [u, v] : g.edges())
        e.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return e;
}

} // namespace

TEST_SUITE("encode")
{
    TEST_CASE("K4 over GF(2)")
    {
        auto F = encode_coloring(gen_complete(4), opts(3, 2));
        REQUIRE(F.size() == 10);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(F.tag(i) == "vertex:" + std::to_string(i + 1));
            CHECK(to_string(F[i]) == "x" + std::to_string(i + 1) + "^3+1");
        }
        CHECK(F.tag(4) == "edge:1-2");
        CHECK(to_string(F[4]) == "x1^2+x1*x2+x2^2");
        CHECK(to_string(F[9]) == "x3^2+x3*x4+x4^2");
        CHECK(F.total_terms() == 26);
    }

    TEST_CASE("smallest instances")
    {
        auto F = encode_coloring(gen_path(2), opts(3, 2));
        REQUIRE(F.size() == 3);
        CHECK(to_string(F[0]) == "x1^3+1");
        CHECK(to_string(F[1]) == "x2^3+1");
        CHECK(to_string(F[2]) == "x1^2+x1*x2+x2^2");

        auto G = encode_coloring(gen_path(2), opts(2, 3));
        REQUIRE(G.size() == 3);
        CHECK(G[0] == parse_polynomial("x1^2-1", 2, FieldSpec(3)));
        CHECK(G[1] == parse_polynomial("x2^2-1", 2, FieldSpec(3)));
        CHECK(G[2] == parse_polynomial("x1+x2", 2, FieldSpec(3)));
    }

    TEST_CASE("encoding options are validated")
    {
        CHECK_THROWS_AS(encode_coloring(gen_complete(3), opts(3, 3)), std::invalid_argument);
        CHECK_THROWS_AS(encode_coloring(gen_complete(3), opts(2, 2)), std::invalid_argument);
        CHECK_THROWS_AS(encode_coloring(gen_complete(3), opts(1, 5)), std::invalid_argument);
        CHECK_NOTHROW(encode_coloring(gen_complete(3), opts(4, 5)));
        CHECK_THROWS_AS(build_coloring_system(gen_complete(5), opts(4, 5, true, CutterMode::triangles)),
                        std::invalid_argument);
    }

    TEST_CASE("preprocessing")
    {
        auto K4 = encode_coloring(gen_complete(4), opts(3, 2));
        auto P = preprocess_vertex_polys(K4, gen_complete(4), 1);
        REQUIRE(P.size() == 7);
        CHECK(P.tag(0) == "vertex:1");
        CHECK(to_string(P[0]) == "x1^3+1");
        for (std::size_t i = 1; i < 7; ++i)
            CHECK(P.tag(i).starts_with("edge:"));

        Graph edge = gen_path(2);
        CHECK(preprocess_vertex_polys(encode_coloring(edge, opts(3, 2)), edge, 1).size() == 2);

        Graph two(4, {{1, 2}, {3, 4}});
        auto Q = preprocess_vertex_polys(encode_coloring(two, opts(3, 2)), two, 1);
        REQUIRE(Q.size() == 4);
        CHECK(Q.tag(0) == "vertex:1");
        CHECK(Q.tag(1) == "vertex:3");

        auto R = preprocess_vertex_polys(K4, gen_complete(4), 3);
        CHECK(R.tag(0) == "vertex:3");
        CHECK_THROWS_AS(preprocess_vertex_polys(K4, gen_complete(4), 5), std::invalid_argument);
    }

    TEST_CASE("preprocessing identity")
    {
        // x_i^k - 1 = (x_j^k - 1) + (x_i - x_j) edge(i, j), for several k, p
        for (auto [k, p] : {std::pair{3u, 2u}, {3u, 7u}, {4u, 5u}, {2u, 3u}}) {
            auto F = encode_coloring(gen_path(2), opts(k, p));
            const auto x1 = parse_polynomial("x1", 2, FieldSpec(p)), x2 = parse_polynomial("x2", 2, FieldSpec(p));
            CHECK(F[1] == F[0] + (x2 - x1) * F[2]);
        }
    }

    TEST_CASE("cutters")
    {
        Graph tri = gen_complete(3);
        auto c = triangle_cutters(tri, 3, FieldSpec(2));
        REQUIRE(c.size() == 1);
        CHECK(to_string(c[0].poly) == "x1^2+x2^2+x3^2");
        CHECK(c[0].tag == "cutter:1-2-3");
        CHECK(triangle_cutters(gen_petersen(), 3, FieldSpec(2)).empty());
        CHECK(triangle_cutters(gen_complete(4), 3, FieldSpec(2)).size() == 4);
        CHECK(triangle_cutters(gen_complete(5), 4, FieldSpec(5)).size() == 5);
        CHECK_THROWS_AS(triangle_cutters(tri, 2, FieldSpec(3)), std::invalid_argument);
        auto F = build_coloring_system(gen_complete(4), opts(3, 2, true, CutterMode::triangles));
        CHECK(F.size() == 11);
        CHECK(F.tag(10) == "cutter:2-3-4");
    }

    TEST_CASE("alternative targets")
    {
        CHECK(alt_g_candidates(12, 3).size() == 364);
        auto two = alt_g_candidates(2, 1);
        REQUIRE(two.size() == 2);
        CHECK(to_string(two[0]) == "x1");
        CHECK(to_string(two[1]) == "x2");
        CHECK(alt_g_candidates(3, 2).size() == 6);
        CHECK_THROWS_AS(alt_g_candidates(3, 0), std::invalid_argument);
    }

    TEST_CASE("encoding zeros over GF(4) are exactly the proper 3-colorings")
    {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 120; ++trial) {
            const auto n = static_cast<std::uint32_t>(2 + rng() % 5);
            Graph g = gen_random(n, 0.5, rng());
            auto F = encode_coloring(g, opts(3, 2));
            auto cut = triangle_cutters(g, 3, FieldSpec(2));
            bool any_zero = false;
            std::vector<int> c(n, 0);
            while (true) {
                std::vector<oracle::GF4> x(n);
                bool proper = true;
                for (std::uint32_t v = 0; v < n; ++v)
                    x[v] = roots[c[v]];
                for (auto [u, v] : g.edges())
                    proper = proper && c[u - 1] != c[v - 1];
                const bool zero = common_zero_gf4(F, x);
                CHECK(zero == proper);
                any_zero = any_zero || zero;
                if (proper)
                    for (const auto& t : cut)
                        CHECK(eval_gf4(t.poly, x) == oracle::GF4{});
                std::uint32_t i = 0;
                while (i < n && ++c[i] == 3)
                    c[i++] = 0;
                if (i == n)
                    break;
            }
            CHECK(any_zero == oracle::colorable_bruteforce(static_cast<int>(n), plain_edges(g), 3));
        }
    }

    TEST_CASE("vertex polynomials force cube roots of unity")
    {
        // x^3 + 1 over GF(4): zero exactly on the nonzero elements
        PolySystem F(1, FieldSpec(2));
        F.add(parse_polynomial("x1^3+1", 1, FieldSpec(2)), "vertex:1");
        CHECK_FALSE(common_zero_gf4(F, {oracle::GF4{0, 0}}));
        for (auto r : roots)
            CHECK(common_zero_gf4(F, {r}));
    }

    TEST_CASE("clique cutters vanish on proper 4-colorings over GF(5)")
    {
        // 1, 2, 3, 4 are the fourth roots of unity mod 5
        std::mt19937_64 rng(3);
        const FieldSpec f(5);
        for (int trial = 0; trial < 40; ++trial) {
            const auto n = static_cast<std::uint32_t>(4 + rng() % 3);
            Graph g = gen_random(n, 0.75, rng());
            auto cut = triangle_cutters(g, 4, f);
            auto F = encode_coloring(g, opts(4, 5));
            std::vector<Residue> x(n, 1);
            while (true) {
                bool proper = true;
                for (auto [u, v] : g.edges())
                    proper = proper && x[u - 1] != x[v - 1];
                bool zero = true;
                for (const auto& p : F.polys())
                    zero = zero && p.eval(x) == 0;
                CHECK(zero == proper);
                if (proper)
                    for (const auto& t : cut)
                        CHECK(t.poly.eval(x) == 0);
                std::uint32_t i = 0;
                while (i < n && ++x[i] == 5)
                    x[i++] = 1;
                if (i == n)
                    break;
            }
        }
    }
}
