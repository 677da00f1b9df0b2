#include "nulla/linsolve.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace nulla {

std::size_t SparseSystem::storage_bytes(std::size_t n_rows, std::size_t nnz)
{
    return (n_rows + 1) * sizeof(std::size_t) + n_rows * sizeof(Residue) +
           nnz * (sizeof(std::uint32_t) + sizeof(Residue));
}

SparseSystem::SparseSystem(std::uint32_t n_rows, std::uint32_t n_cols, FieldSpec field, std::vector<SparseRow> rows,
                           std::vector<Residue> rhs, std::size_t byte_budget)
    : n_rows_(n_rows)
    , n_cols_(n_cols)
    , field_(field)
    , budget_(byte_budget)
{
    if (rows.size() != n_rows)
        throw std::invalid_argument("sparse system: " + std::to_string(rows.size()) + " rows given, expected " +
                                    std::to_string(n_rows));
    if (rhs.size() != n_rows)
        throw std::invalid_argument("sparse system: rhs has " + std::to_string(rhs.size()) + " entries, expected " +
                                    std::to_string(n_rows));
    std::size_t nnz = 0;
    for (const auto& r : rows)
        nnz += r.size();
    const auto bytes = storage_bytes(n_rows, nnz);
    if (bytes > budget_)
        throw MemoryBudgetExceeded(bytes, budget_,
                                   "sparse system " + std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                                       " with " + std::to_string(nnz) + " nonzeros");

    row_ptr_.reserve(n_rows + 1);
    row_ptr_.push_back(0);
    cols_.reserve(nnz);
    coeffs_.reserve(nnz);
    for (std::uint32_t r = 0; r < n_rows; ++r) {
        std::int64_t prev = -1;
        for (const auto& e : rows[r]) {
            if (e.col >= n_cols)
                throw std::invalid_argument("sparse system: column " + std::to_string(e.col) + " out of range in row " +
                                            std::to_string(r));
            if (static_cast<std::int64_t>(e.col) <= prev)
                throw std::invalid_argument("sparse system: columns not strictly increasing in row " +
                                            std::to_string(r));
            if (e.coeff == 0 || e.coeff >= field.p())
                throw std::invalid_argument("sparse system: coefficient not a nonzero residue in row " +
                                            std::to_string(r));
            prev = e.col;
            cols_.push_back(e.col);
            coeffs_.push_back(e.coeff);
        }
        row_ptr_.push_back(cols_.size());
        rows[r] = {};
    }
    for (auto v : rhs)
        if (v >= field.p())
            throw std::invalid_argument("sparse system: rhs value is not a residue");
    rhs_ = std::move(rhs);
}

Residue SparseSystem::at(std::uint32_t r, std::uint32_t c) const
{
    auto cs = row_cols(r);
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || *it != c)
        return 0;
    return coeffs_[row_ptr_[r] + static_cast<std::size_t>(it - cs.begin())];
}

bool SparseSystem::satisfies(std::span<const Residue> y, std::span<const Residue> rhs) const
{
    if (y.size() != n_cols_ || rhs.size() != n_rows_)
        return false;
    for (std::uint32_t r = 0; r < n_rows_; ++r) {
        Residue acc = 0;
        auto cs = row_cols(r);
        auto vs = row_coeffs(r);
        for (std::size_t i = 0; i < cs.size(); ++i)
            acc = field_.add(acc, field_.mul(vs[i], y[cs[i]] % field_.p()));
        if (acc != rhs[r])
            return false;
    }
    return true;
}

bool SparseSystem::operator==(const SparseSystem& other) const noexcept
{
    return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_ && field_ == other.field_ &&
           row_ptr_ == other.row_ptr_ && cols_ == other.cols_ && coeffs_ == other.coeffs_ && rhs_ == other.rhs_;
}

SolveResult solve_reference(const SparseSystem& sys)
{
    const auto& F = sys.field();
    const std::size_t m = sys.n_rows(), n = sys.n_cols(), w = n + 1;
    std::vector<Residue> a(m * w, 0);
    for (std::uint32_t r = 0; r < m; ++r) {
        auto cs = sys.row_cols(r);
        auto vs = sys.row_coeffs(r);
        for (std::size_t i = 0; i < cs.size(); ++i)
            a[r * w + cs[i]] = vs[i];
        a[r * w + n] = sys.rhs()[r];
    }
    SolveResult res;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t piv = rank;
        while (piv < m && a[piv * w + c] == 0)
            ++piv;
        if (piv == m)
            continue;
        if (piv != rank)
            std::swap_ranges(a.begin() + piv * w, a.begin() + (piv + 1) * w, a.begin() + rank * w);
        Residue inv = F.inv(a[rank * w + c]);
        for (std::size_t j = c; j < w; ++j)
            a[rank * w + j] = F.mul(a[rank * w + j], inv);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || a[r * w + c] == 0)
                continue;
            Residue f = a[r * w + c];
            for (std::size_t j = c; j < w; ++j)
                a[r * w + j] = F.sub(a[r * w + j], F.mul(f, a[rank * w + j]));
        }
        res.pivot_cols.push_back(static_cast<std::uint32_t>(c));
        ++rank;
    }
    for (std::size_t r = rank; r < m; ++r)
        if (a[r * w + n] != 0)
            return res;
    res.consistent = true;
    std::vector<Residue> y(n, 0);
    for (std::size_t i = 0; i < rank; ++i)
        y[res.pivot_cols[i]] = a[i * w + n];
    res.solution = std::move(y);
    return res;
}

void write_coordinate(std::ostream& out, const SparseSystem& sys)
{
    out << sys.n_rows() << ' ' << sys.n_cols() << ' ' << sys.field().p() << '\n';
    for (std::uint32_t r = 0; r < sys.n_rows(); ++r) {
        auto cs = sys.row_cols(r);
        auto vs = sys.row_coeffs(r);
        for (std::size_t i = 0; i < cs.size(); ++i)
            out << r << ' ' << cs[i] << ' ' << vs[i] << '\n';
    }
    out << "rhs\n";
    for (std::uint32_t r = 0; r < sys.n_rows(); ++r)
        if (sys.rhs()[r] != 0)
            out << r << ' ' << sys.rhs()[r] << '\n';
}

SparseSystem read_coordinate(std::istream& in, std::size_t byte_budget)
{
    std::uint64_t m = 0, n = 0, p = 0;
    if (!(in >> m >> n >> p))
        throw std::invalid_argument("coordinate file: bad header");
    if (m > 0xffffffffull || n > 0xffffffffull || p > 0xffffffffull)
        throw std::invalid_argument("coordinate file: header values too large");
    FieldSpec field(static_cast<std::uint32_t>(p));
    std::vector<SparseRow> rows(m);
    std::vector<Residue> rhs(m, 0);
    std::string tok;
    bool in_rhs = false;
    while (in >> tok) {
        if (tok == "rhs") {
            in_rhs = true;
            continue;
        }
        std::uint64_t r = std::stoull(tok), c = 0, v = 0;
        if (in_rhs) {
            if (!(in >> v) || r >= m)
                throw std::invalid_argument("coordinate file: bad rhs entry");
            rhs[r] = field.reduce(static_cast<std::int64_t>(v % p));
            continue;
        }
        if (!(in >> c >> v) || r >= m || c >= n)
            throw std::invalid_argument("coordinate file: bad matrix entry");
        Residue val = static_cast<Residue>(v % p);
        if (val != 0)
            rows[r].push_back({static_cast<std::uint32_t>(c), val});
    }
    for (auto& row : rows)
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.col < y.col; });
    return SparseSystem(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n), field, std::move(rows),
                        std::move(rhs), byte_budget);
}

} // namespace nulla
