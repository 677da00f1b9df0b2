#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nulla/field.hpp"
#include "nulla/monomial.hpp"

namespace nulla {

/// Polynomial over GF(p) in a fixed number of variables.
///
/// Terms are kept sorted in the global monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
class Polynomial {
public:
    using Term = std::pair<Monomial, Residue>;

    Polynomial(std::uint32_t n_vars, FieldSpec field);
    /// Like terms are collected and coefficients reduced mod p.
    Polynomial(std::uint32_t n_vars, FieldSpec field, std::vector<Term> terms);

    static Polynomial constant(std::uint32_t n_vars, FieldSpec field, Residue c);
    static Polynomial monomial(std::uint32_t n_vars, FieldSpec field, Monomial m, Residue c = 1);

    std::uint32_t n_vars() const noexcept { return n_vars_; }
    const FieldSpec& field() const noexcept { return field_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept;
    Residue coefficient(const Monomial& m) const noexcept;

    /// Degree class mod k shared by every term, or nullopt when terms disagree.
    /// The zero polynomial has class 0.
    std::optional<std::uint32_t> degree_class(std::uint32_t k) const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(Residue c) const;
    Polynomial times(const Monomial& m) const;
    Polynomial permuted(std::span<const Var> perm) const;

    Residue eval(std::span<const Residue> point) const;

    bool operator==(const Polynomial& other) const noexcept;

private:
    void check_compatible(const Polynomial& other) const;

    std::uint32_t n_vars_;
    FieldSpec field_;
    std::vector<Term> terms_;
};

/// Ordered polynomial system F = {f_1, ..., f_s} with a source tag per polynomial.
class PolySystem {
public:
    PolySystem(std::uint32_t n_vars, FieldSpec field);

    void add(Polynomial f, std::string tag);

    std::uint32_t n_vars() const noexcept { return n_vars_; }
    const FieldSpec& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return polys_.size(); }
    bool empty() const noexcept { return polys_.empty(); }
    const Polynomial& operator[](std::size_t i) const { return polys_.at(i); }
    const std::string& tag(std::size_t i) const { return tags_.at(i); }
    std::span<const Polynomial> polys() const noexcept { return polys_; }
    std::span<const std::string> tags() const noexcept { return tags_; }

    int max_degree() const noexcept;
    /// Sum over polynomials of their term counts.
    std::size_t total_terms() const noexcept;

private:
    std::uint32_t n_vars_;
    FieldSpec field_;
    std::vector<Polynomial> polys_;
    std::vector<std::string> tags_;
};

class PolyParseError : public std::runtime_error {
public:
    PolyParseError(const std::string& what, std::size_t column)
        : std::runtime_error(what + " at column " + std::to_string(column))
        , column_(column)
    {
    }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Text form: terms joined by '+', term = c*x<i>^<e>*..., coefficient omitted
/// when 1 and ^1 omitted. Terms are printed highest degree first. The zero
/// polynomial prints as "0".
std::string to_string(const Polynomial& f);
std::string to_string(const Monomial& m);

/// Accepts arbitrary whitespace, '-' between terms and repeated monomials.
Polynomial parse_polynomial(std::string_view text, std::uint32_t n_vars, FieldSpec field);

} // namespace nulla
