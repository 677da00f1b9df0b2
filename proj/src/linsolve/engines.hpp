#pragma once

#include <vector>

#include "nulla/linsolve.hpp"

namespace nulla::detail {

/// Indices of the rhs columns that need a materialized solution.
std::vector<std::size_t> wanted_solutions(const std::vector<bool>& consistent, SolutionPolicy policy);

std::vector<SolveResult> eliminate_sparse_gf2(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                              const SolveOptions& opts);
std::vector<SolveResult> eliminate_sparse_gfp(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                              const SolveOptions& opts);
std::vector<SolveResult> eliminate_dense_gf2(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                             const SolveOptions& opts);
std::vector<SolveResult> eliminate_dense_gfp(const SparseSystem& sys, std::span<const SparseVector> rhs,
                                             const SolveOptions& opts);

} // namespace nulla::detail
