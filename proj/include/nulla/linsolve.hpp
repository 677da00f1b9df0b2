#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nulla/field.hpp"

namespace nulla {

struct SparseEntry {
    std::uint32_t col;
    Residue coeff;
    bool operator==(const SparseEntry&) const = default;
};

using SparseRow = std::vector<SparseEntry>;
using SparseVector = std::vector<std::pair<std::uint32_t, Residue>>;

inline constexpr std::size_t default_byte_budget = std::size_t(8) << 30;

class MemoryBudgetExceeded : public std::runtime_error {
public:
    MemoryBudgetExceeded(std::size_t needed, std::size_t budget, const std::string& what)
        : std::runtime_error(what + ": needs ~" + std::to_string(needed) + " bytes, budget is " +
                             std::to_string(budget))
        , needed_(needed)
        , budget_(budget)
    {
    }
    std::size_t needed() const noexcept { return needed_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t needed_;
    std::size_t budget_;
};

/// Sparse linear system A y = b over GF(p), stored row-compressed.
///
/// Column indices are strictly increasing within a row and coefficients are
/// nonzero residues. Construction validates both and refuses systems whose
/// storage estimate exceeds `byte_budget`.
class SparseSystem {
public:
    SparseSystem(std::uint32_t n_rows, std::uint32_t n_cols, FieldSpec field, std::vector<SparseRow> rows,
                 std::vector<Residue> rhs, std::size_t byte_budget = default_byte_budget);

    /// Bytes needed to hold a system of this shape.
    static std::size_t storage_bytes(std::size_t n_rows, std::size_t nnz);

    std::uint32_t n_rows() const noexcept { return n_rows_; }
    std::uint32_t n_cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return cols_.size(); }
    const FieldSpec& field() const noexcept { return field_; }
    std::size_t byte_budget() const noexcept { return budget_; }

    std::span<const std::uint32_t> row_cols(std::uint32_t r) const
    {
        return {cols_.data() + row_ptr_[r], cols_.data() + row_ptr_[r + 1]};
    }
    std::span<const Residue> row_coeffs(std::uint32_t r) const
    {
        return {coeffs_.data() + row_ptr_[r], coeffs_.data() + row_ptr_[r + 1]};
    }
    std::span<const Residue> rhs() const noexcept { return rhs_; }

    /// Entry (r, c), zero when absent.
    Residue at(std::uint32_t r, std::uint32_t c) const;

    /// True when y has n_cols entries and A y = rhs holds exactly.
    bool satisfies(std::span<const Residue> y, std::span<const Residue> rhs) const;
    bool satisfies(std::span<const Residue> y) const { return satisfies(y, rhs_); }

    bool operator==(const SparseSystem& other) const noexcept;

private:
    std::uint32_t n_rows_;
    std::uint32_t n_cols_;
    FieldSpec field_;
    std::size_t budget_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> cols_;
    std::vector<Residue> coeffs_;
    std::vector<Residue> rhs_;
};

struct SolveResult {
    bool consistent = false;
    /// Present when consistent; free (non-pivot) columns are zero.
    std::optional<std::vector<Residue>> solution;
    /// Pivot columns in increasing order.
    std::vector<std::uint32_t> pivot_cols;

    bool operator==(const SolveResult&) const = default;
};

enum class Engine {
    /// Leading-column bucket elimination on sparse rows (the default).
    sparse,
    /// Bit-packed rows for GF(2), dense residue rows otherwise.
    dense,
};

enum class SolutionPolicy { all, first_consistent, none };

struct SolveOptions {
    Engine engine = Engine::sparse;
    /// Worker threads for the OpenMP kernels; 0 keeps the runtime default.
    int threads = 0;
    SolutionPolicy solutions = SolutionPolicy::all;
};

/// Gaussian elimination. Pivots are taken column by column in index order;
/// the pivot row for a column is the lowest-index remaining row with a nonzero
/// there. Every engine and thread count yields the same result.
SolveResult solve(const SparseSystem& sys, const SolveOptions& opts = {});

/// One elimination of the matrix, every rhs carried through the same row
/// operations. Results match per-rhs `solve` calls, except that solutions are
/// only materialized as `opts.solutions` requests.
std::vector<SolveResult> solve_multi_rhs(const SparseSystem& sys, std::span<const std::vector<Residue>> rhs_set,
                                         const SolveOptions& opts = {});
std::vector<SolveResult> solve_multi_rhs_sparse(const SparseSystem& sys, std::span<const SparseVector> rhs_set,
                                                const SolveOptions& opts = {});

/// Plain serial dense Gauss-Jordan over residues. Kept as the reference the
/// optimized engines are tested and benchmarked against.
SolveResult solve_reference(const SparseSystem& sys);

/// `<rows> <cols> <p>` header, then one `r c v` line per nonzero, then a
/// `rhs` line followed by `r v` lines for nonzero rhs entries.
void write_coordinate(std::ostream& out, const SparseSystem& sys);
SparseSystem read_coordinate(std::istream& in, std::size_t byte_budget = default_byte_budget);

} // namespace nulla
