#include <doctest.h>

#include <random>
#include <sstream>

#include "nulla/linsolve.hpp"
#include "oracles.hpp"

using namespace nulla;

namespace {

struct Random {
    SparseSystem sys;
    oracle::Matrix dense;
    std::vector<std::int64_t> b;
};

Random random_system(std::mt19937_64& rng, std::uint32_t p, std::uint32_t max_dim, double density)
{
    const auto m = static_cast<std::uint32_t>(1 + rng() % max_dim), n = static_cast<std::uint32_t>(1 + rng() % max_dim);
    std::uniform_real_distribution<double> u(0, 1);
    oracle::Matrix dense(m, std::vector<std::int64_t>(n, 0));
    std::vector<SparseRow> rows(m);
    for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t c = 0; c < n; ++c)
            if (u(rng) < density) {
                const auto v = static_cast<Residue>(1 + rng() % (p - 1));
                dense[r][c] = v;
                rows[r].push_back({c, v});
            }
    std::vector<Residue> rhs(m);
    std::vector<std::int64_t> b(m);
    // half the systems get a consistent rhs by construction
    if (rng() % 2) {
        std::vector<std::int64_t> y(n);
        for (auto& v : y)
            v = static_cast<std::int64_t>(rng() % p);
        for (std::uint32_t r = 0; r < m; ++r) {
            std::int64_t s = 0;
            for (std::uint32_t c = 0; c < n; ++c)
                s += dense[r][c] * y[c];
            b[r] = oracle::mod(s, p);
        }
    } else {
        for (auto& v : b)
            v = static_cast<std::int64_t>(rng() % p);
    }
    for (std::uint32_t r = 0; r < m; ++r)
        rhs[r] = static_cast<Residue>(b[r]);
    return {SparseSystem(m, n, FieldSpec(p), std::move(rows), std::move(rhs)), std::move(dense), std::move(b)};
}

SparseSystem small(std::uint32_t p, std::vector<std::vector<Residue>> a, std::vector<Residue> b)
{
    const auto m = static_cast<std::uint32_t>(a.size());
    const auto n = static_cast<std::uint32_t>(m ? a[0].size() : 0);
    std::vector<SparseRow> rows(m);
    for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t c = 0; c < n; ++c)
            if (a[r][c])
                rows[r].push_back({c, a[r][c]});
    return SparseSystem(m, n, FieldSpec(p), std::move(rows), std::move(b));
}

const SolveOptions engines[] = {
    {Engine::sparse, 1, SolutionPolicy::all},
    {Engine::sparse, 4, SolutionPolicy::all},
    {Engine::dense, 1, SolutionPolicy::all},
    {Engine::dense, 4, SolutionPolicy::all},
};

bool free_columns_zero(const SolveResult& r)
{
    std::vector<bool> pivot(r.solution->size(), false);
    for (auto c : r.pivot_cols)
        pivot[c] = true;
    for (std::size_t c = 0; c < pivot.size(); ++c)
        if (!pivot[c] && (*r.solution)[c] != 0)
            return false;
    return true;
}

} // namespace

TEST_SUITE("linsolve")
{
    TEST_CASE("tiny systems")
    {
        auto one = small(2, {{1}}, {1});
        auto r = solve(one);
        CHECK(r.consistent);
        REQUIRE(r.solution);
        CHECK(*r.solution == std::vector<Residue>{1});

        auto empty_row = small(2, {{0}}, {1});
        CHECK_FALSE(solve(empty_row).consistent);
        CHECK_FALSE(solve(empty_row).solution.has_value());
        CHECK_FALSE(solve_reference(empty_row).consistent);

        auto gf3 = small(3, {{2, 1}, {1, 1}}, {1, 2});
        for (const auto& opt : engines) {
            auto s = solve(gf3, opt);
            REQUIRE(s.consistent);
            CHECK(gf3.satisfies(*s.solution));
        }
    }

    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(SparseSystem(1, 2, FieldSpec(2), {{{2, 1}}}, {0}), std::invalid_argument);
        CHECK_THROWS_AS(SparseSystem(1, 3, FieldSpec(2), {{{1, 1}, {0, 1}}}, {0}), std::invalid_argument);
        CHECK_THROWS_AS(SparseSystem(1, 3, FieldSpec(3), {{{1, 3}}}, {0}), std::invalid_argument);
        CHECK_THROWS_AS(SparseSystem(1, 3, FieldSpec(3), {{{1, 0}}}, {0}), std::invalid_argument);
        CHECK_THROWS_AS(SparseSystem(2, 3, FieldSpec(3), {{}}, {0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(SparseSystem(1, 3, FieldSpec(3), {{}}, {}), std::invalid_argument);
        auto sys = small(2, {{1, 1}}, {1});
        const std::vector<Residue> bad{1, 2, 3};
        CHECK_FALSE(sys.satisfies(bad));
    }

    TEST_CASE("memory guard")
    {
        std::vector<SparseRow> rows(100, SparseRow{{0, 1}, {1, 1}});
        CHECK_THROWS_AS(SparseSystem(100, 2, FieldSpec(2), rows, std::vector<Residue>(100, 0), 64),
                        MemoryBudgetExceeded);
        SparseSystem ok(100, 2, FieldSpec(2), rows, std::vector<Residue>(100, 0), 1 << 20);
        CHECK(ok.nnz() == 200);
        std::vector<SparseRow> wide(4, SparseRow{{0, 1}});
        SparseSystem w(4, 1 << 20, FieldSpec(2), wide, std::vector<Residue>(4, 0), 4096);
        CHECK_THROWS_AS(solve(w, {Engine::dense, 1, SolutionPolicy::all}), MemoryBudgetExceeded);
        CHECK(solve(w).consistent);
    }

    TEST_CASE("oracle equivalence on random GF(2) systems")
    {
        std::mt19937_64 rng(2024);
        int mismatches = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            auto R = random_system(rng, 2, 64, trial % 3 == 0 ? 0.05 : 0.3);
            const bool expect = oracle::consistent(R.dense, R.b, 2);
            auto ref = solve_reference(R.sys);
            if (ref.consistent != expect)
                ++mismatches;
            for (const auto& opt : engines) {
                auto r = solve(R.sys, opt);
                if (r.consistent != expect || !(r == ref))
                    ++mismatches;
                if (r.consistent && (!R.sys.satisfies(*r.solution) || !free_columns_zero(r)))
                    ++mismatches;
            }
        }
        CHECK(mismatches == 0);
    }

    TEST_CASE("oracle equivalence on random GF(3) and GF(5) systems")
    {
        std::mt19937_64 rng(99);
        int mismatches = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::uint32_t p = trial % 2 ? 3 : 5;
            auto R = random_system(rng, p, 24, 0.3);
            const bool expect = oracle::consistent(R.dense, R.b, p);
            auto ref = solve_reference(R.sys);
            if (ref.consistent != expect)
                ++mismatches;
            for (const auto& opt : engines) {
                auto r = solve(R.sys, opt);
                if (r.consistent != expect || !(r == ref))
                    ++mismatches;
                if (r.consistent && (!R.sys.satisfies(*r.solution) || !free_columns_zero(r)))
                    ++mismatches;
            }
        }
        CHECK(mismatches == 0);
    }

    TEST_CASE("multi-rhs matches per-rhs solves")
    {
        std::mt19937_64 rng(5);
        auto R = random_system(rng, 2, 12, 0.3);
        const auto m = R.sys.n_rows();
        std::vector<std::vector<Residue>> rhs_set(364, std::vector<Residue>(m, 0));
        for (auto& b : rhs_set)
            for (auto& v : b)
                v = static_cast<Residue>(rng() % 2);
        rhs_set.push_back(rhs_set.front());
        for (const auto& opt : engines) {
            auto all = solve_multi_rhs(R.sys, rhs_set, opt);
            REQUIRE(all.size() == rhs_set.size());
            for (std::size_t j = 0; j < rhs_set.size(); ++j) {
                std::vector<SparseRow> rows(m);
                for (std::uint32_t r = 0; r < m; ++r) {
                    auto cs = R.sys.row_cols(r);
                    auto vs = R.sys.row_coeffs(r);
                    for (std::size_t i = 0; i < cs.size(); ++i)
                        rows[r].push_back({cs[i], vs[i]});
                }
                SparseSystem single(m, R.sys.n_cols(), R.sys.field(), std::move(rows), rhs_set[j]);
                CHECK(all[j] == solve(single, opt));
            }
            CHECK(all.front() == all.back());
        }
    }

    TEST_CASE("identical rhs pair and zero rhs")
    {
        auto sys = small(3, {{1, 2, 0}, {0, 1, 1}, {1, 0, 1}}, {0, 0, 0});
        std::vector<std::vector<Residue>> twice{{1, 2, 0}, {1, 2, 0}};
        auto res = solve_multi_rhs(sys, twice);
        CHECK(res[0] == res[1]);
        auto zero = solve(sys);
        REQUIRE(zero.consistent);
        CHECK(*zero.solution == std::vector<Residue>(3, 0));
    }

    TEST_CASE("solution policies")
    {
        auto sys = small(2, {{1, 0}, {0, 1}, {1, 1}}, {0, 0, 0});
        std::vector<std::vector<Residue>> rhs{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}};
        auto first = solve_multi_rhs(sys, rhs, {Engine::sparse, 0, SolutionPolicy::first_consistent});
        CHECK_FALSE(first[0].consistent);
        CHECK(first[1].consistent);
        CHECK(first[1].solution.has_value());
        CHECK(first[2].consistent);
        CHECK_FALSE(first[2].solution.has_value());
        auto none = solve_multi_rhs(sys, rhs, {Engine::dense, 0, SolutionPolicy::none});
        CHECK(none[1].consistent);
        CHECK_FALSE(none[1].solution.has_value());
        std::vector<std::vector<Residue>> wrong{{1, 0}};
        CHECK_THROWS_AS(solve_multi_rhs(sys, wrong), std::invalid_argument);
    }

    TEST_CASE("determinism")
    {
        std::mt19937_64 rng(8);
        for (int i = 0; i < 20; ++i) {
            auto R = random_system(rng, 2, 40, 0.2);
            CHECK(solve(R.sys) == solve(R.sys));
        }
    }

    TEST_CASE("coordinate format round trip")
    {
        std::mt19937_64 rng(4);
        for (std::uint32_t p : {2u, 3u, 7u}) {
            auto R = random_system(rng, p, 10, 0.4);
            std::stringstream ss;
            write_coordinate(ss, R.sys);
            CHECK(read_coordinate(ss) == R.sys);
        }
        std::istringstream bad("2 2\n");
        CHECK_THROWS_AS(read_coordinate(bad), std::invalid_argument);
    }
}
