#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nulla/certificate.hpp"
#include "nulla/graph.hpp"
#include "nulla/linsolve.hpp"
#include "nulla/polynomial.hpp"

namespace nulla {

/// Column (i, delta) of the degree-d system: the polynomial x^delta * f_i.
struct ColumnKey {
    std::uint32_t poly_index;
    Monomial shift;
    bool operator==(const ColumnKey&) const = default;
};

struct Pruning {
    enum class Kind {
        /// every monomial of degree <= q + d is a row
        none,
        /// rows are the monomials occurring in some column or in a target
        occurring_rows,
        /// occurring rows, plus the mod-k degree grading on rows and columns
        graded,
    };
    Kind kind = Kind::occurring_rows;
    std::uint32_t k = 0;

    static Pruning none() { return {Kind::none, 0}; }
    static Pruning occurring_rows() { return {Kind::occurring_rows, 0}; }
    static Pruning graded(std::uint32_t k) { return {Kind::graded, k}; }

    std::string name() const;
    bool operator==(const Pruning&) const = default;
};

struct AssembleOptions {
    int threads = 0;
    std::size_t byte_budget = default_byte_budget;
};

/// M_{F,d} y = b with one row per monomial (global order) and one column per
/// kept (i, delta), ordered by polynomial index then shift. The system's rhs
/// holds the coefficients of targets[0]; every target's monomials are rows.
struct AssembledSystem {
    SparseSystem system;
    std::vector<ColumnKey> col_keys;
    std::vector<Monomial> row_keys;
    std::uint32_t degree = 0;
    std::vector<Polynomial> targets;
    Pruning pruning;

    const Polynomial& target() const { return targets.front(); }
    std::optional<std::uint32_t> row_of(const Monomial& m) const;
    /// rhs vector of targets[i] over this row set.
    SparseVector rhs_for(std::size_t i) const;
};

AssembledSystem assemble(const PolySystem& F, std::uint32_t d, std::span<const Polynomial> targets, Pruning pruning,
                         const AssembleOptions& opts = {});
AssembledSystem assemble(const PolySystem& F, std::uint32_t d, const Polynomial& g, Pruning pruning,
                         const AssembleOptions& opts = {});

/// Serial map-based construction of the same system; reference for tests and
/// benchmarks.
AssembledSystem assemble_reference(const PolySystem& F, std::uint32_t d, std::span<const Polynomial> targets,
                                   Pruning pruning, std::size_t byte_budget = default_byte_budget);

struct SystemStats {
    std::uint32_t n = 0;
    std::size_t s = 0;
    std::size_t total_terms = 0; // M
    std::uint32_t d = 0;
    std::uint64_t predicted_cols = 0; // s * C(n+d, d)
    std::uint64_t predicted_nnz = 0;  // M * C(n+d, d)
    std::optional<std::size_t> rows, cols, nnz;
};

/// Closed-form sizes; `actual` fills rows/cols/nnz from a dry assembly.
SystemStats stats(const PolySystem& F, std::uint32_t d, std::optional<Pruning> actual = std::nullopt,
                  const AssembleOptions& opts = {});

/// beta_i = sum over columns (i, delta) of y * x^delta; zero betas dropped.
Certificate extract_certificate(const AssembledSystem& sys, const PolySystem& F, std::span<const Residue> y,
                                std::size_t target_index = 0);

struct DegreeStats {
    std::uint32_t degree = 0;
    std::size_t rows = 0, cols = 0, nnz = 0;
    bool consistent = false;
    double millis = 0;
    std::string note;
};

struct NullaOptions {
    Pruning pruning = Pruning::occurring_rows();
    SolveOptions solve;
    AssembleOptions assemble;
    std::string graph_fingerprint;
};

struct NullaOutcome {
    enum class Verdict { infeasible, no_certificate };
    Verdict verdict = Verdict::no_certificate;
    std::optional<Certificate> certificate;
    std::uint32_t degree = 0;     // degree of the certificate when infeasible
    std::uint32_t max_degree = 0; // last degree tried
    std::size_t target_index = 0; // which g candidate succeeded
    std::vector<DegreeStats> per_degree;

    bool infeasible() const noexcept { return verdict == Verdict::infeasible; }
};

/// Degree loop: one assembly per degree, all targets tested with a single
/// elimination; stops at the first consistent system.
NullaOutcome nulla_prove(const PolySystem& F, std::span<const std::uint32_t> schedule,
                         std::span<const Polynomial> g_candidates, const NullaOptions& opts = {});

/// {1, 1+k, 1+2k, ...} up to cap, plus cap itself: under the mod-k grading
/// the edge shifts must have degree 1 mod k.
std::vector<std::uint32_t> graded_schedule(std::uint32_t k, std::uint32_t cap);
std::vector<std::uint32_t> linear_schedule(std::uint32_t cap);

/// Non-colorable witness read off the certificate support: the edges whose
/// edge (or cutter) polynomial carries a nonzero beta.
struct Subgraph {
    Graph graph;                 // relabelled 1..k
    std::vector<Vertex> vertices; // vertices[i] is the original label of i+1
};
Subgraph isolate_subgraph(const Certificate& cert, const Graph& g);

} // namespace nulla
