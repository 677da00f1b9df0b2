#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nulla/assemble.hpp"

namespace nulla {

class SymmetryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generators of a permutation group acting on the variables x_1..x_n.
/// Images are stored 0-based; text uses 1-based cycle notation.
class PermutationSet {
public:
    PermutationSet(std::uint32_t n, std::vector<std::vector<Var>> generators);

    /// "(2,3,4)" or "(1,2)(3,4); (5,6)". Generators are separated by ';' or
    /// newlines, '#' starts a comment. Identity generators are dropped.
    static PermutationSet parse(std::string_view text, std::uint32_t n);

    std::uint32_t n() const noexcept { return n_; }
    const std::vector<std::vector<Var>>& generators() const noexcept { return gens_; }
    std::string to_string() const;

    /// Order of the generated group, or nullopt once it exceeds `cap`.
    std::optional<std::uint64_t> group_order(std::uint64_t cap = 1'000'000) const;

private:
    std::uint32_t n_;
    std::vector<std::vector<Var>> gens_;
};

/// For each generator, the index of sigma(f_i) in F. Throws SymmetryError
/// naming the first polynomial whose image is missing.
std::vector<std::vector<std::uint32_t>> check_invariance(const PolySystem& F, const PermutationSet& perms);

/// Which member of a row orbit supplies the orbit matrix row. The choice does
/// not change the matrix when F is invariant.
enum class OrbitRepresentative { first, last };

struct OrbitSystem {
    /// Row orbits x column orbits; entry = sum of M over the column orbit in
    /// the representative row.
    SparseSystem system;
    std::vector<Monomial> row_reps;
    std::vector<ColumnKey> col_reps;
    std::vector<std::uint32_t> row_orbit_of; // full row -> row orbit
    std::vector<std::uint32_t> col_orbit_of; // full column -> column orbit
    std::vector<std::uint32_t> row_rep_index; // row orbit -> full row supplying it
    AssembledSystem full;
    std::optional<std::uint64_t> group_order;
    /// |G| is known and prime to p, so consistency matches the full system.
    bool coprime_verified = false;

    SparseVector rhs_for(std::size_t target) const;
};

OrbitSystem assemble_orbit(const PolySystem& F, std::uint32_t d, std::span<const Polynomial> targets,
                           const PermutationSet& perms, Pruning pruning, const AssembleOptions& opts = {},
                           OrbitRepresentative rep = OrbitRepresentative::first,
                           std::uint64_t group_order_cap = 1'000'000);

/// y_(i,delta) = ybar of the column orbit containing (i, delta).
std::vector<Residue> lift_solution(const OrbitSystem& orb, std::span<const Residue> ybar);

struct OrbitOptions {
    NullaOptions nulla;
    std::uint64_t group_order_cap = 1'000'000;
    /// Retry on the full system when the orbit system is inconsistent and
    /// |G| is not known to be prime to p.
    bool fallback_full = true;
};

NullaOutcome nulla_prove_orbit(const PolySystem& F, std::span<const std::uint32_t> schedule,
                               std::span<const Polynomial> g_candidates, const PermutationSet& perms,
                               const OrbitOptions& opts = {});

} // namespace nulla
