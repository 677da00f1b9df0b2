#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nulla {

using Residue = std::uint32_t;

/// Prime field GF(p). Elements are least nonnegative residues in [0, p).
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }
    bool is_binary() const noexcept { return p_ == 2; }

    Residue reduce(std::int64_t v) const noexcept
    {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }

    Residue add(Residue a, Residue b) const noexcept
    {
        if (p_ == 2)
            return a ^ b;
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }

    Residue sub(Residue a, Residue b) const noexcept { return add(a, neg(b)); }

    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }

    Residue mul(Residue a, Residue b) const noexcept
    {
        if (p_ == 2)
            return a & b;
        return static_cast<Residue>((std::uint64_t(a) * b) % p_);
    }

    Residue pow(Residue a, std::uint64_t e) const noexcept;

    /// Throws std::domain_error on zero.
    Residue inv(Residue a) const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

} // namespace nulla
