#include "engines.hpp"

namespace nulla {

namespace {

std::vector<SolveResult> dispatch(const SparseSystem& sys, std::span<const SparseVector> rhs, const SolveOptions& opts)
{
    for (const auto& v : rhs)
        for (const auto& [r, val] : v)
            if (r >= sys.n_rows())
                throw std::invalid_argument("rhs entry for row " + std::to_string(r) + " out of range");
    const bool binary = sys.field().is_binary();
    switch (opts.engine) {
    case Engine::dense:
        return binary ? detail::eliminate_dense_gf2(sys, rhs, opts) : detail::eliminate_dense_gfp(sys, rhs, opts);
    case Engine::sparse:
        break;
    }
    return binary ? detail::eliminate_sparse_gf2(sys, rhs, opts) : detail::eliminate_sparse_gfp(sys, rhs, opts);
}

SparseVector to_sparse(std::span<const Residue> dense, std::uint32_t n_rows)
{
    if (dense.size() != n_rows)
        throw std::invalid_argument("rhs vector has " + std::to_string(dense.size()) + " entries, expected " +
                                    std::to_string(n_rows));
    SparseVector v;
    for (std::uint32_t r = 0; r < n_rows; ++r)
        if (dense[r] != 0)
            v.emplace_back(r, dense[r]);
    return v;
}

} // namespace

SolveResult solve(const SparseSystem& sys, const SolveOptions& opts)
{
    SparseVector b = to_sparse(sys.rhs(), sys.n_rows());
    auto res = dispatch(sys, std::span<const SparseVector>(&b, 1), opts);
    return std::move(res.front());
}

std::vector<SolveResult> solve_multi_rhs(const SparseSystem& sys, std::span<const std::vector<Residue>> rhs_set,
                                         const SolveOptions& opts)
{
    std::vector<SparseVector> sparse;
    sparse.reserve(rhs_set.size());
    for (const auto& b : rhs_set)
        sparse.push_back(to_sparse(b, sys.n_rows()));
    return dispatch(sys, sparse, opts);
}

std::vector<SolveResult> solve_multi_rhs_sparse(const SparseSystem& sys, std::span<const SparseVector> rhs_set,
                                                const SolveOptions& opts)
{
    return dispatch(sys, rhs_set, opts);
}

} // namespace nulla
