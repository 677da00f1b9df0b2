// Leading-column elimination on sparse rows.
//
// Rows are bucketed by their first nonzero column. Column c is processed
// once: the lowest-index row in bucket c becomes the pivot and is subtracted
// from every other row of the bucket, which moves each of them to a later
// bucket (or to the zero rows). Rows in one bucket are independent, so that
// update is the parallel kernel. Pivot rows are never touched again and feed
// the back-substitution directly.

#include "engines.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nulla::detail {

namespace {

constexpr std::size_t parallel_bucket_threshold = 32;

int thread_count(const SolveOptions& opts)
{
#ifdef _OPENMP
    return opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
    (void)opts;
    return 1;
#endif
}

// dst <- dst xor src, both sorted; drops the shared leading column.
void xor_into(std::vector<std::uint32_t>& dst, const std::vector<std::uint32_t>& src, std::vector<std::uint32_t>& buf)
{
    buf.clear();
    buf.reserve(dst.size() + src.size());
    auto a = dst.begin(), ae = dst.end();
    auto b = src.begin(), be = src.end();
    while (a != ae && b != be) {
        if (*a < *b)
            buf.push_back(*a++);
        else if (*b < *a)
            buf.push_back(*b++);
        else {
            ++a;
            ++b;
        }
    }
    buf.insert(buf.end(), a, ae);
    buf.insert(buf.end(), b, be);
    dst.assign(buf.begin(), buf.end());
}

} // namespace

std::vector<std::size_t> wanted_solutions(const std::vector<bool>& consistent, SolutionPolicy policy)
{
    std::vector<std::size_t> out;
    if (policy == SolutionPolicy::none)
        return out;
    for (std::size_t j = 0; j < consistent.size(); ++j)
        if (consistent[j]) {
            out.push_back(j);
            if (policy == SolutionPolicy::first_consistent)
                break;
        }
    return out;
}

std::vector<SolveResult> eliminate_sparse_gf2(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                              const SolveOptions& opts)
{
    const std::uint32_t m = sys.n_rows(), n = sys.n_cols();
    const std::size_t nr = rhs.size();
    const std::size_t rw = (nr + 63) / 64;

    std::vector<std::vector<std::uint32_t>> rows(m);
    for (std::uint32_t r = 0; r < m; ++r) {
        auto cs = sys.row_cols(r);
        rows[r].assign(cs.begin(), cs.end());
    }
    std::vector<std::uint64_t> rbits(std::size_t(m) * rw, 0);
    for (std::size_t j = 0; j < nr; ++j)
        for (const auto& [r, v] : rhs[j])
            if (v & 1)
                rbits[std::size_t(r) * rw + j / 64] ^= std::uint64_t(1) << (j % 64);

    std::vector<std::vector<std::uint32_t>> bucket(n);
    std::vector<std::uint32_t> zero_rows;
    for (std::uint32_t r = 0; r < m; ++r) {
        if (rows[r].empty())
            zero_rows.push_back(r);
        else
            bucket[rows[r].front()].push_back(r);
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots; // (col, row)
    const int threads = thread_count(opts);
    std::vector<std::uint32_t> others;
    std::vector<std::uint32_t> scratch;

    for (std::uint32_t c = 0; c < n; ++c) {
        auto& b = bucket[c];
        if (b.empty())
            continue;
        auto pit = std::min_element(b.begin(), b.end());
        const std::uint32_t piv = *pit;
        others.clear();
        for (auto r : b)
            if (r != piv)
                others.push_back(r);
        std::vector<std::uint32_t>().swap(b);
        pivots.emplace_back(c, piv);
        const auto& prow = rows[piv];
        const std::uint64_t* pbits = rbits.data() + std::size_t(piv) * rw;

        const auto count = static_cast<std::ptrdiff_t>(others.size());
#ifdef _OPENMP
        if (threads > 1 && others.size() >= parallel_bucket_threshold) {
#pragma omp parallel num_threads(threads)
            {
                std::vector<std::uint32_t> buf;
#pragma omp for schedule(dynamic, 8)
                for (std::ptrdiff_t i = 0; i < count; ++i) {
                    const auto r = others[static_cast<std::size_t>(i)];
                    xor_into(rows[r], prow, buf);
                    std::uint64_t* rb = rbits.data() + std::size_t(r) * rw;
                    for (std::size_t w = 0; w < rw; ++w)
                        rb[w] ^= pbits[w];
                }
            }
        } else
#endif
        {
            (void)threads;
            for (std::ptrdiff_t i = 0; i < count; ++i) {
                const auto r = others[static_cast<std::size_t>(i)];
                xor_into(rows[r], prow, scratch);
                std::uint64_t* rb = rbits.data() + std::size_t(r) * rw;
                for (std::size_t w = 0; w < rw; ++w)
                    rb[w] ^= pbits[w];
            }
        }
        for (auto r : others) {
            if (rows[r].empty())
                zero_rows.push_back(r);
            else
                bucket[rows[r].front()].push_back(r);
        }
    }

    // a zero row with a nonzero rhs bit refutes that rhs
    std::vector<std::uint64_t> bad(rw, 0);
    for (auto r : zero_rows)
        for (std::size_t w = 0; w < rw; ++w)
            bad[w] |= rbits[std::size_t(r) * rw + w];
    std::vector<bool> consistent(nr);
    for (std::size_t j = 0; j < nr; ++j)
        consistent[j] = !(bad[j / 64] >> (j % 64) & 1);

    std::vector<std::uint32_t> pivot_cols;
    pivot_cols.reserve(pivots.size());
    for (const auto& p : pivots)
        pivot_cols.push_back(p.first);

    std::vector<SolveResult> out(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        out[j].consistent = consistent[j];
        out[j].pivot_cols = pivot_cols;
    }
    auto want = wanted_solutions(consistent, opts.solutions);
    if (want.empty())
        return out;

    // back-substitution for all wanted rhs at once, one bit lane each
    const std::size_t ww = (want.size() + 63) / 64;
    std::vector<std::uint64_t> lanes(std::size_t(m) * ww, 0);
    for (std::size_t k = 0; k < want.size(); ++k) {
        const std::size_t j = want[k];
        for (const auto& p : pivots) {
            const std::uint32_t r = p.second;
            if (rbits[std::size_t(r) * rw + j / 64] >> (j % 64) & 1)
                lanes[std::size_t(r) * ww + k / 64] |= std::uint64_t(1) << (k % 64);
        }
    }
    std::vector<std::uint64_t> y(std::size_t(n) * ww, 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const auto [pc, pr] = *it;
        std::uint64_t* yc = y.data() + std::size_t(pc) * ww;
        const std::uint64_t* src = lanes.data() + std::size_t(pr) * ww;
        std::copy(src, src + ww, yc);
        const auto& row = rows[pr];
        for (std::size_t i = 1; i < row.size(); ++i) {
            const std::uint64_t* yo = y.data() + std::size_t(row[i]) * ww;
            for (std::size_t w = 0; w < ww; ++w)
                yc[w] ^= yo[w];
        }
    }
    for (std::size_t k = 0; k < want.size(); ++k) {
        std::vector<Residue> sol(n, 0);
        for (std::uint32_t c = 0; c < n; ++c)
            sol[c] = static_cast<Residue>(y[std::size_t(c) * ww + k / 64] >> (k % 64) & 1);
        out[want[k]].solution = std::move(sol);
    }
    return out;
}

std::vector<SolveResult> eliminate_sparse_gfp(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                              const SolveOptions& opts)
{
    const FieldSpec F = sys.field();
    const std::uint32_t m = sys.n_rows(), n = sys.n_cols();
    const std::size_t nr = rhs.size();

    std::vector<SparseRow> rows(m);
    for (std::uint32_t r = 0; r < m; ++r) {
        auto cs = sys.row_cols(r);
        auto vs = sys.row_coeffs(r);
        rows[r].reserve(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i)
            rows[r].push_back({cs[i], vs[i]});
    }
    std::vector<Residue> rv(std::size_t(m) * nr, 0);
    for (std::size_t j = 0; j < nr; ++j)
        for (const auto& [r, v] : rhs[j])
            rv[std::size_t(r) * nr + j] = F.add(rv[std::size_t(r) * nr + j], v % F.p());

    std::vector<std::vector<std::uint32_t>> bucket(n);
    std::vector<std::uint32_t> zero_rows;
    for (std::uint32_t r = 0; r < m; ++r) {
        if (rows[r].empty())
            zero_rows.push_back(r);
        else
            bucket[rows[r].front().col].push_back(r);
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;
    const int threads = thread_count(opts);
    std::vector<std::uint32_t> others;

    auto eliminate_row = [&](std::uint32_t r, const SparseRow& prow, const Residue* prhs, SparseRow& buf) {
        auto& row = rows[r];
        const Residue f = row.front().coeff;
        buf.clear();
        buf.reserve(row.size() + prow.size());
        auto a = row.begin() + 1, ae = row.end();
        auto b = prow.begin() + 1, be = prow.end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->col < b->col))
                buf.push_back(*a++);
            else if (a == ae || b->col < a->col) {
                buf.push_back({b->col, F.neg(F.mul(f, b->coeff))});
                ++b;
            } else {
                Residue v = F.sub(a->coeff, F.mul(f, b->coeff));
                if (v != 0)
                    buf.push_back({a->col, v});
                ++a;
                ++b;
            }
        }
        row.assign(buf.begin(), buf.end());
        Residue* rr = rv.data() + std::size_t(r) * nr;
        for (std::size_t j = 0; j < nr; ++j)
            rr[j] = F.sub(rr[j], F.mul(f, prhs[j]));
    };

    for (std::uint32_t c = 0; c < n; ++c) {
        auto& b = bucket[c];
        if (b.empty())
            continue;
        const std::uint32_t piv = *std::min_element(b.begin(), b.end());
        others.clear();
        for (auto r : b)
            if (r != piv)
                others.push_back(r);
        std::vector<std::uint32_t>().swap(b);
        pivots.emplace_back(c, piv);

        auto& prow = rows[piv];
        Residue* prhs = rv.data() + std::size_t(piv) * nr;
        const Residue inv = F.inv(prow.front().coeff);
        if (inv != 1) {
            for (auto& e : prow)
                e.coeff = F.mul(e.coeff, inv);
            for (std::size_t j = 0; j < nr; ++j)
                prhs[j] = F.mul(prhs[j], inv);
        }

        const auto count = static_cast<std::ptrdiff_t>(others.size());
#ifdef _OPENMP
        if (threads > 1 && others.size() >= parallel_bucket_threshold) {
#pragma omp parallel num_threads(threads)
            {
                SparseRow buf;
#pragma omp for schedule(dynamic, 8)
                for (std::ptrdiff_t i = 0; i < count; ++i)
                    eliminate_row(others[static_cast<std::size_t>(i)], prow, prhs, buf);
            }
        } else
#endif
        {
            (void)threads;
            SparseRow buf;
            for (std::ptrdiff_t i = 0; i < count; ++i)
                eliminate_row(others[static_cast<std::size_t>(i)], prow, prhs, buf);
        }
        for (auto r : others) {
            if (rows[r].empty())
                zero_rows.push_back(r);
            else
                bucket[rows[r].front().col].push_back(r);
        }
    }

    std::vector<bool> consistent(nr, true);
    for (auto r : zero_rows)
        for (std::size_t j = 0; j < nr; ++j)
            if (rv[std::size_t(r) * nr + j] != 0)
                consistent[j] = false;

    std::vector<std::uint32_t> pivot_cols;
    for (const auto& p : pivots)
        pivot_cols.push_back(p.first);
    std::vector<SolveResult> out(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        out[j].consistent = consistent[j];
        out[j].pivot_cols = pivot_cols;
    }
    for (std::size_t j : wanted_solutions(consistent, opts.solutions)) {
        std::vector<Residue> y(n, 0);
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            const auto [pc, pr] = *it;
            const auto& row = rows[pr];
            Residue acc = rv[std::size_t(pr) * nr + j];
            for (std::size_t i = 1; i < row.size(); ++i)
                acc = F.sub(acc, F.mul(row[i].coeff, y[row[i].col]));
            y[pc] = acc;
        }
        out[j].solution = std::move(y);
    }
    return out;
}

} // namespace nulla::detail
