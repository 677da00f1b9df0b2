#include <doctest.h>

#include <algorithm>

#include "golden_k4.hpp"
#include "nulla/encode.hpp"
#include "nulla/symmetry.hpp"

using namespace nulla;

namespace {

PolySystem coloring(const Graph& g, bool preprocess, std::uint32_t p = 2)
{
    EncodingOptions o;
    o.k = 3;
    o.field = FieldSpec(p);
    o.preprocess = preprocess;
    return build_coloring_system(g, o);
}

std::vector<Polynomial> unit(const PolySystem& F)
{
    return {Polynomial::constant(F.n_vars(), F.field(), 1)};
}

bool consistent(const SparseSystem& s)
{
    return solve(s, {Engine::sparse, 0, SolutionPolicy::none}).consistent;
}

} // namespace

TEST_SUITE("symmetry")
{
    TEST_CASE("cycle notation")
    {
        auto c = PermutationSet::parse("(2,3,4)", 4);
        REQUIRE(c.generators().size() == 1);
        CHECK(c.generators()[0] == std::vector<Var>{0, 2, 3, 1});
        CHECK(c.to_string() == "(2,3,4)");

        auto two = PermutationSet::parse("# header\n(1,2)(3,4); (5, 6)\n\n", 6);
        CHECK(two.generators().size() == 2);
        CHECK(two.to_string() == "(1,2)(3,4);(5,6)");

        CHECK(PermutationSet::parse("(1)", 3).generators().empty());

        CHECK_THROWS_AS(PermutationSet::parse("(1,1)", 3), SymmetryError);
        CHECK_THROWS_AS(PermutationSet::parse("(1,7)", 3), SymmetryError);
        CHECK_THROWS_AS(PermutationSet::parse("(1,2", 3), SymmetryError);
        CHECK_THROWS_AS(PermutationSet::parse("1,2)", 3), SymmetryError);
        CHECK_THROWS_AS(PermutationSet::parse("(1,x)", 3), SymmetryError);
        CHECK_THROWS_AS(PermutationSet(3, {{0, 0, 1}}), SymmetryError);
        CHECK_THROWS_AS(PermutationSet(3, {{0, 1}}), SymmetryError);
    }

    TEST_CASE("group orders")
    {
        CHECK(PermutationSet::parse("(2,3,4)", 4).group_order() == 3u);
        CHECK(PermutationSet(4, {}).group_order() == 1u);
        CHECK(PermutationSet::parse("(1,2);(1,2,3)", 3).group_order() == 6u);
        CHECK(PermutationSet::parse("(1,2,3,4,5)", 5).group_order() == 5u);
        CHECK(PermutationSet::parse("(1,2);(1,2,3,4,5,6,7,8)", 8).group_order() == 40320u);
        CHECK_FALSE(PermutationSet::parse("(1,2);(1,2,3,4,5,6,7,8)", 8).group_order(1000).has_value());
    }

    TEST_CASE("invariance")
    {
        auto full = coloring(gen_complete(4), false);
        CHECK_NOTHROW(check_invariance(full, PermutationSet::parse("(2,3,4)", 4)));
        auto images = check_invariance(full, PermutationSet::parse("(2,3,4)", 4));
        REQUIRE(images.size() == 1);
        CHECK(images[0][0] == 0);
        CHECK(images[0][1] == 2); // x2^3+1 -> x3^3+1

        auto pre = coloring(gen_complete(4), true);
        CHECK_NOTHROW(check_invariance(pre, PermutationSet::parse("(2,3,4)", 4)));
        try {
            check_invariance(pre, PermutationSet::parse("(1,2)", 4));
            FAIL("expected an error");
        } catch (const SymmetryError& e) {
            CHECK(std::string(e.what()).find("vertex:1") != std::string::npos);
        }
        CHECK_NOTHROW(check_invariance(pre, PermutationSet(4, {})));
        CHECK_THROWS_AS(check_invariance(pre, PermutationSet::parse("(1,2)", 5)), SymmetryError);
    }

    TEST_CASE("K4 orbit matrix matches the golden table")
    {
        auto F = coloring(gen_complete(4), true);
        const auto perms = PermutationSet::parse("(2,3,4)", 4);
        auto orb = assemble_orbit(F, 1, unit(F), perms, Pruning::graded(3));
        REQUIRE(orb.system.n_rows() == 9);
        REQUIRE(orb.system.n_cols() == 9);
        const char* rows[] = {"1", "x1^3", "x1^2*x2", "x1*x2^2", "x1*x2*x3", "x2^3", "x2^2*x3", "x2^2*x4", "x2*x3*x4"};
        for (int r = 0; r < 9; ++r)
            CHECK(to_string(orb.row_reps[r]) == rows[r]);
        int mismatches = 0;
        for (std::uint32_t r = 0; r < 9; ++r)
            for (std::uint32_t c = 0; c < 9; ++c)
                mismatches += orb.system.at(r, c) != static_cast<Residue>(k4_orbit_mod2[r][c]);
        CHECK(mismatches == 0);
        CHECK(orb.group_order == 3u);
        CHECK(orb.coprime_verified);

        auto sol = solve(orb.system);
        REQUIRE(sol.consistent);
        auto y = lift_solution(orb, *sol.solution);
        CHECK(y.size() == 25);
        CHECK(orb.full.system.satisfies(y));
        auto cert = extract_certificate(orb.full, F, y);
        CHECK(verify(cert));
    }

    TEST_CASE("K4 orbit sums before reduction")
    {
        // over GF(7) every encoding coefficient is 1 except the constant -1
        auto F = coloring(gen_complete(4), true, 7);
        auto orb = assemble_orbit(F, 1, unit(F), PermutationSet::parse("(2,3,4)", 4), Pruning::graded(3));
        REQUIRE(orb.system.n_rows() == 9);
        REQUIRE(orb.system.n_cols() == 9);
        int mismatches = 0;
        for (std::uint32_t r = 0; r < 9; ++r)
            for (std::uint32_t c = 0; c < 9; ++c) {
                const Residue want = r == 0 && c == 0 ? 6 : static_cast<Residue>(k4_orbit_integer[r][c]);
                mismatches += orb.system.at(r, c) != want;
            }
        CHECK(mismatches == 0);
        CHECK(orb.coprime_verified);
    }

    TEST_CASE("K4 full encoding orbit system")
    {
        auto F = coloring(gen_complete(4), false);
        auto orb = assemble_orbit(F, 1, unit(F), PermutationSet::parse("(2,3,4)", 4), Pruning::graded(3));
        CHECK(orb.system.n_rows() == 9);
        // vertex:1 alone, vertex:2..4 as one orbit, then the eight edge orbits
        CHECK(orb.system.n_cols() == 10);
        CHECK(orb.full.system.n_cols() == 28);
        auto sol = solve(orb.system);
        REQUIRE(sol.consistent);
        auto y = lift_solution(orb, *sol.solution);
        CHECK(orb.full.system.satisfies(y));
        CHECK(verify(extract_certificate(orb.full, F, y)));
    }

    TEST_CASE("orbit matrix does not depend on the representative")
    {
        for (auto [spec, gens] : {std::pair{"complete:4", "(2,3,4)"}, {"complete:4", "(1,2)(3,4)"},
                                  {"wheel:5", "(1,2,3,4,5)"}, {"wheel:7", "(1,2,3,4,5,6,7)"}}) {
            Graph g = generate(spec);
            auto F = coloring(g, false);
            auto perms = PermutationSet::parse(gens, g.n_vertices());
            for (auto pr : {Pruning::graded(3), Pruning::occurring_rows()}) {
                auto a = assemble_orbit(F, 1, unit(F), perms, pr, {}, OrbitRepresentative::first);
                auto b = assemble_orbit(F, 1, unit(F), perms, pr, {}, OrbitRepresentative::last);
                CHECK(a.system == b.system);
                CHECK(a.row_orbit_of == b.row_orbit_of);
                CHECK(a.row_rep_index != b.row_rep_index);
            }
        }
    }

    TEST_CASE("identity group")
    {
        auto F = coloring(gen_complete(4), true);
        auto orb = assemble_orbit(F, 1, unit(F), PermutationSet(4, {}), Pruning::graded(3));
        CHECK(orb.system == orb.full.system);
        CHECK(orb.group_order == 1u);
        std::vector<Residue> ybar(orb.system.n_cols());
        for (std::size_t i = 0; i < ybar.size(); ++i)
            ybar[i] = static_cast<Residue>(i % 2);
        CHECK(lift_solution(orb, ybar) == ybar);
    }

    TEST_CASE("lifting")
    {
        auto F = coloring(gen_complete(4), true);
        auto orb = assemble_orbit(F, 1, unit(F), PermutationSet::parse("(2,3,4)", 4), Pruning::graded(3));
        std::vector<Residue> zero(orb.system.n_cols(), 0);
        CHECK(lift_solution(orb, zero) == std::vector<Residue>(25, 0));
        std::vector<Residue> e1(orb.system.n_cols(), 0);
        e1[1] = 1;
        auto y = lift_solution(orb, e1);
        CHECK(std::count(y.begin(), y.end(), Residue{1}) == 3);
        CHECK_THROWS_AS(lift_solution(orb, std::vector<Residue>(3, 0)), std::invalid_argument);
    }

    TEST_CASE("targets must be invariant")
    {
        auto F = coloring(gen_complete(4), false);
        const std::vector<Polynomial> g{parse_polynomial("x2^3", 4, FieldSpec(2))};
        CHECK_THROWS_AS(assemble_orbit(F, 1, g, PermutationSet::parse("(2,3,4)", 4), Pruning::graded(3)),
                        SymmetryError);
        const std::vector<Polynomial> h{parse_polynomial("x1^3", 4, FieldSpec(2))};
        CHECK_NOTHROW(assemble_orbit(F, 1, h, PermutationSet::parse("(2,3,4)", 4), Pruning::graded(3)));
    }

    TEST_CASE("coprime groups give the same verdict as the full system")
    {
        for (auto [spec, gens] : {std::pair{"cycle:5", "(1,2,3,4,5)"}, {"wheel:5", "(1,2,3,4,5)"},
                                  {"complete:4", "(2,3,4)"}, {"wheel:7", "(1,2,3,4,5,6,7)"}}) {
            Graph g = generate(spec);
            auto F = coloring(g, false);
            auto orb = assemble_orbit(F, 1, unit(F), PermutationSet::parse(gens, g.n_vertices()), Pruning::graded(3));
            CHECK(orb.coprime_verified);
            CHECK(consistent(orb.system) == consistent(orb.full.system));
            CHECK(orb.system.n_cols() < orb.full.system.n_cols());
        }
    }

    TEST_CASE("orbit prover")
    {
        const std::uint32_t schedule[] = {1, 4};
        {
            Graph g = gen_wheel(5);
            auto F = coloring(g, false);
            auto out = nulla_prove_orbit(F, schedule, unit(F), PermutationSet::parse("(1,2,3,4,5)", 6));
            REQUIRE(out.infeasible());
            CHECK(out.degree == 1);
            CHECK(verify(*out.certificate));
            CHECK(out.certificate->provenance.symmetry == "(1,2,3,4,5)");
            CHECK(out.per_degree.front().note == "orbit");
        }
        {
            // order 2 is not prime to 2: a failed orbit solve falls back to the full system
            Graph g = gen_complete(4);
            auto F = coloring(g, false);
            auto out = nulla_prove_orbit(F, schedule, unit(F), PermutationSet::parse("(1,2)(3,4)", 4));
            REQUIRE(out.infeasible());
            CHECK(verify(*out.certificate));
        }
        {
            Graph g = gen_cycle(5);
            auto F = coloring(g, false);
            auto out = nulla_prove_orbit(F, schedule, unit(F), PermutationSet::parse("(1,2,3,4,5)", 5));
            CHECK_FALSE(out.infeasible());
            CHECK(out.max_degree == 4);
        }
    }
}
