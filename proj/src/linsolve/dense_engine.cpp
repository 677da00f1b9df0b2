// Dense elimination: bit-packed rows over GF(2) (64 columns per word,
// row reduction is word-wise XOR) and residue rows for odd p. The row
// update after each pivot runs as an OpenMP loop over the remaining rows.

#include "engines.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nulla::detail {

namespace {

int thread_count(const SolveOptions& opts)
{
#ifdef _OPENMP
    return opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
    (void)opts;
    return 1;
#endif
}

void check_budget(const SparseSystem& sys, std::size_t bytes)
{
    if (bytes > sys.byte_budget())
        throw MemoryBudgetExceeded(bytes, sys.byte_budget(),
                                   "dense elimination of " + std::to_string(sys.n_rows()) + "x" +
                                       std::to_string(sys.n_cols()));
}

std::vector<SolveResult> package(const std::vector<bool>& consistent, const std::vector<std::uint32_t>& pivot_cols)
{
    std::vector<SolveResult> out(consistent.size());
    for (std::size_t j = 0; j < consistent.size(); ++j) {
        out[j].consistent = consistent[j];
        out[j].pivot_cols = pivot_cols;
    }
    return out;
}

} // namespace

std::vector<SolveResult> eliminate_dense_gf2(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                             const SolveOptions& opts)
{
    const std::size_t m = sys.n_rows(), n = sys.n_cols(), nr = rhs.size();
    const std::size_t W = (n + 63) / 64, rw = (nr + 63) / 64;
    check_budget(sys, m * (W + rw) * sizeof(std::uint64_t));

    std::vector<std::uint64_t> a(m * W, 0), rb(m * rw, 0);
    for (std::size_t r = 0; r < m; ++r)
        for (auto c : sys.row_cols(static_cast<std::uint32_t>(r)))
            a[r * W + c / 64] |= std::uint64_t(1) << (c % 64);
    for (std::size_t j = 0; j < nr; ++j)
        for (const auto& [r, v] : rhs[j])
            if (v & 1)
                rb[std::size_t(r) * rw + j / 64] ^= std::uint64_t(1) << (j % 64);

    std::vector<std::uint32_t> active(m);
    for (std::size_t r = 0; r < m; ++r)
        active[r] = static_cast<std::uint32_t>(r);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;
    const int threads = thread_count(opts);

    for (std::size_t c = 0; c < n && !active.empty(); ++c) {
        const std::size_t wc = c / 64;
        const std::uint64_t bit = std::uint64_t(1) << (c % 64);
        auto pit = std::find_if(active.begin(), active.end(), [&](auto r) { return a[r * W + wc] & bit; });
        if (pit == active.end())
            continue;
        const std::uint32_t piv = *pit;
        const auto pos = static_cast<std::ptrdiff_t>(pit - active.begin());
        active.erase(pit);
        pivots.emplace_back(static_cast<std::uint32_t>(c), piv);
        const std::uint64_t* prow = a.data() + std::size_t(piv) * W;
        const std::uint64_t* pr = rb.data() + std::size_t(piv) * rw;
        const auto count = static_cast<std::ptrdiff_t>(active.size());
        // rows ahead of the pivot in the active list cannot have bit c
#pragma omp parallel for num_threads(threads) schedule(static) if (threads > 1 && count - pos > 64)
        for (std::ptrdiff_t i = pos; i < count; ++i) {
            const std::size_t r = active[static_cast<std::size_t>(i)];
            std::uint64_t* row = a.data() + r * W;
            if (!(row[wc] & bit))
                continue;
            for (std::size_t w = wc; w < W; ++w)
                row[w] ^= prow[w];
            std::uint64_t* rr = rb.data() + r * rw;
            for (std::size_t w = 0; w < rw; ++w)
                rr[w] ^= pr[w];
        }
    }

    std::vector<std::uint64_t> bad(rw, 0);
    for (auto r : active)
        for (std::size_t w = 0; w < rw; ++w)
            bad[w] |= rb[std::size_t(r) * rw + w];
    std::vector<bool> consistent(nr);
    for (std::size_t j = 0; j < nr; ++j)
        consistent[j] = !(bad[j / 64] >> (j % 64) & 1);
    std::vector<std::uint32_t> pivot_cols;
    for (const auto& p : pivots)
        pivot_cols.push_back(p.first);
    auto out = package(consistent, pivot_cols);

    for (std::size_t j : wanted_solutions(consistent, opts.solutions)) {
        std::vector<std::uint64_t> y(W, 0);
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            const auto [pc, pr] = *it;
            const std::uint64_t* row = a.data() + std::size_t(pr) * W;
            std::uint64_t acc = rb[std::size_t(pr) * rw + j / 64] >> (j % 64) & 1;
            // parity of row & y beyond the pivot column
            std::uint64_t par = 0;
            for (std::size_t w = pc / 64; w < W; ++w) {
                std::uint64_t word = row[w] & y[w];
                if (w == pc / 64)
                    word &= ~(std::uint64_t(1) << (pc % 64));
                par ^= static_cast<std::uint64_t>(std::popcount(word) & 1);
            }
            if (acc ^ par)
                y[pc / 64] |= std::uint64_t(1) << (pc % 64);
        }
        std::vector<Residue> sol(n, 0);
        for (std::size_t c = 0; c < n; ++c)
            sol[c] = static_cast<Residue>(y[c / 64] >> (c % 64) & 1);
        out[j].solution = std::move(sol);
    }
    return out;
}

std::vector<SolveResult> eliminate_dense_gfp(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                             const SolveOptions& opts)
{
    const FieldSpec F = sys.field();
    const std::size_t m = sys.n_rows(), n = sys.n_cols(), nr = rhs.size();
    check_budget(sys, m * (n + nr) * sizeof(Residue));

    std::vector<Residue> a(m * n, 0), rv(m * nr, 0);
    for (std::size_t r = 0; r < m; ++r) {
        auto cs = sys.row_cols(static_cast<std::uint32_t>(r));
        auto vs = sys.row_coeffs(static_cast<std::uint32_t>(r));
        for (std::size_t i = 0; i < cs.size(); ++i)
            a[r * n + cs[i]] = vs[i];
    }
    for (std::size_t j = 0; j < nr; ++j)
        for (const auto& [r, v] : rhs[j])
            rv[std::size_t(r) * nr + j] = F.add(rv[std::size_t(r) * nr + j], v % F.p());

    std::vector<std::uint32_t> active(m);
    for (std::size_t r = 0; r < m; ++r)
        active[r] = static_cast<std::uint32_t>(r);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;
    const int threads = thread_count(opts);

    for (std::size_t c = 0; c < n && !active.empty(); ++c) {
        auto pit = std::find_if(active.begin(), active.end(), [&](auto r) { return a[r * n + c] != 0; });
        if (pit == active.end())
            continue;
        const std::uint32_t piv = *pit;
        const auto pos = static_cast<std::ptrdiff_t>(pit - active.begin());
        active.erase(pit);
        pivots.emplace_back(static_cast<std::uint32_t>(c), piv);
        Residue* prow = a.data() + std::size_t(piv) * n;
        Residue* pr = rv.data() + std::size_t(piv) * nr;
        const Residue inv = F.inv(prow[c]);
        for (std::size_t k = c; k < n; ++k)
            prow[k] = F.mul(prow[k], inv);
        for (std::size_t j = 0; j < nr; ++j)
            pr[j] = F.mul(pr[j], inv);
        const auto count = static_cast<std::ptrdiff_t>(active.size());
#pragma omp parallel for num_threads(threads) schedule(static) if (threads > 1 && count - pos > 64)
        for (std::ptrdiff_t i = pos; i < count; ++i) {
            const std::size_t r = active[static_cast<std::size_t>(i)];
            Residue* row = a.data() + r * n;
            const Residue f = row[c];
            if (f == 0)
                continue;
            for (std::size_t k = c; k < n; ++k)
                if (prow[k])
                    row[k] = F.sub(row[k], F.mul(f, prow[k]));
            Residue* rr = rv.data() + r * nr;
            for (std::size_t j = 0; j < nr; ++j)
                rr[j] = F.sub(rr[j], F.mul(f, pr[j]));
        }
    }

    std::vector<bool> consistent(nr, true);
    for (auto r : active)
        for (std::size_t j = 0; j < nr; ++j)
            if (rv[std::size_t(r) * nr + j] != 0)
                consistent[j] = false;
    std::vector<std::uint32_t> pivot_cols;
    for (const auto& p : pivots)
        pivot_cols.push_back(p.first);
    auto out = package(consistent, pivot_cols);

    for (std::size_t j : wanted_solutions(consistent, opts.solutions)) {
        std::vector<Residue> y(n, 0);
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            const auto [pc, pr] = *it;
            const Residue* row = a.data() + std::size_t(pr) * n;
            Residue acc = rv[std::size_t(pr) * nr + j];
            for (std::size_t k = pc + 1; k < n; ++k)
                if (row[k])
                    acc = F.sub(acc, F.mul(row[k], y[k]));
            y[pc] = acc;
        }
        out[j].solution = std::move(y);
    }
    return out;
}

} // namespace nulla::detail
