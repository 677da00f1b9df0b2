#include "nulla/monomial.hpp"

#include <algorithm>
#include <limits>

namespace nulla {

Monomial::Monomial(std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end());
    for (const auto& [v, e] : factors) {
        if (e == 0)
            continue;
        if (!factors_.empty() && factors_.back().first == v)
            factors_.back().second += e;
        else
            factors_.emplace_back(v, e);
        degree_ += e;
    }
}

Monomial Monomial::variable(Var v, Exponent e)
{
    return Monomial({{v, e}});
}

Exponent Monomial::exponent(Var v) const noexcept
{
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
    return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial r;
    r.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() && b != other.factors_.end()) {
        if (a->first < b->first)
            r.factors_.push_back(*a++);
        else if (b->first < a->first)
            r.factors_.push_back(*b++);
        else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    r.factors_.insert(r.factors_.end(), a, factors_.end());
    r.factors_.insert(r.factors_.end(), b, other.factors_.end());
    r.degree_ = degree_ + other.degree_;
    return r;
}

Monomial Monomial::permuted(std::span<const Var> perm) const
{
    std::vector<Factor> f;
    f.reserve(factors_.size());
    for (const auto& [v, e] : factors_)
        f.emplace_back(perm[v], e);
    return Monomial(std::move(f));
}

int Monomial::compare(const Monomial& a, const Monomial& b) noexcept
{
    if (a.degree_ != b.degree_)
        return a.degree_ < b.degree_ ? -1 : 1;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
        if (i->first != j->first)
            // the earlier variable has a positive exponent on one side only
            return i->first < j->first ? -1 : 1;
        if (i->second != j->second)
            return i->second > j->second ? -1 : 1;
        ++i;
        ++j;
    }
    if (i != a.factors_.end())
        return -1;
    if (j != b.factors_.end())
        return 1;
    return 0;
}

std::size_t Monomial::hash() const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& [v, e] : factors_) {
        h ^= (std::uint64_t(v) << 20) ^ e;
        h *= 0x100000001b3ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

namespace {

void emit_degree(std::uint32_t n_vars, std::uint32_t d, Var from, std::vector<Monomial::Factor>& prefix,
                 std::vector<Monomial>& out)
{
    if (d == 0) {
        out.emplace_back(prefix);
        return;
    }
    if (from == n_vars)
        return;
    if (from + 1 == n_vars) {
        prefix.emplace_back(from, d);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (std::uint32_t e = d;; --e) {
        if (e > 0)
            prefix.emplace_back(from, e);
        emit_degree(n_vars, d - e, from + 1, prefix, out);
        if (e > 0)
            prefix.pop_back();
        if (e == 0)
            break;
    }
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::uint32_t n_vars, std::uint32_t d)
{
    std::vector<Monomial> out;
    if (n_vars == 0) {
        if (d == 0)
            out.push_back(Monomial::one());
        return out;
    }
    std::vector<Monomial::Factor> prefix;
    emit_degree(n_vars, d, 0, prefix, out);
    return out;
}

std::vector<Monomial> monomials_up_to(std::uint32_t n_vars, std::uint32_t d, std::optional<DegreeResidue> filter)
{
    std::vector<Monomial> out;
    for (std::uint32_t t = 0; t <= d; ++t) {
        if (filter && filter->modulus > 0 && t % filter->modulus != filter->residue % filter->modulus)
            continue;
        auto layer = monomials_of_degree(n_vars, t);
        out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

} // namespace nulla
