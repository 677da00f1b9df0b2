#include "nulla/field.hpp"

namespace nulla {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FieldSpec::FieldSpec(std::uint32_t p)
    : p_(p)
{
    if (!is_prime(p))
        throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
}

Residue FieldSpec::pow(Residue a, std::uint64_t e) const noexcept
{
    Residue result = 1 % p_;
    Residue base = a % p_;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Residue FieldSpec::inv(Residue a) const
{
    if (a % p_ == 0)
        throw std::domain_error("inverse of zero in GF(" + std::to_string(p_) + ")");
    // Fermat: a^(p-2)
    return pow(a, p_ - 2);
}

} // namespace nulla
