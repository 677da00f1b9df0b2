#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nulla {

using Var = std::uint32_t;
using Exponent = std::uint32_t;

/// Sparse power product x^a. Variables are 0-based internally; the text form
/// prints x<i+1>. Stored exponents are always positive.
class Monomial {
public:
    using Factor = std::pair<Var, Exponent>;

    Monomial() = default;
    /// Factors may be unsorted, repeated, or carry zero exponents.
    explicit Monomial(std::vector<Factor> factors);

    static Monomial one() { return {}; }
    static Monomial variable(Var v, Exponent e = 1);

    std::span<const Factor> factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    std::uint32_t degree() const noexcept { return degree_; }
    Exponent exponent(Var v) const noexcept;
    /// One past the largest variable index used (0 for the constant monomial).
    Var var_bound() const noexcept { return factors_.empty() ? 0 : factors_.back().first + 1; }

    Monomial operator*(const Monomial& other) const;

    /// Image under the variable map v -> perm[v].
    Monomial permuted(std::span<const Var> perm) const;

    bool operator==(const Monomial& other) const noexcept = default;

    /// Global order: total degree first, then exponent vectors compared so that
    /// x1 > x2 > ... (x1^3, x1^2x2, ..., x4^3 within degree 3).
    friend bool operator<(const Monomial& a, const Monomial& b) noexcept { return compare(a, b) < 0; }
    static int compare(const Monomial& a, const Monomial& b) noexcept;

    std::size_t hash() const noexcept;

private:
    std::vector<Factor> factors_;
    std::uint32_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Every monomial in `n_vars` variables of total degree <= d, in global order.
/// With a residue filter (r, k) only degrees congruent to r mod k are kept.
struct DegreeResidue {
    std::uint32_t residue;
    std::uint32_t modulus;
};
std::vector<Monomial> monomials_up_to(std::uint32_t n_vars, std::uint32_t d,
                                      std::optional<DegreeResidue> filter = std::nullopt);

/// Monomials of exactly degree d, in global order.
std::vector<Monomial> monomials_of_degree(std::uint32_t n_vars, std::uint32_t d);

/// C(n, k) with saturation at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

} // namespace nulla

template <>
struct std::hash<nulla::Monomial> {
    std::size_t operator()(const nulla::Monomial& m) const noexcept { return m.hash(); }
};
