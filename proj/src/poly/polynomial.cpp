#include "nulla/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace nulla {

namespace {

// Sorts by monomial, merges like terms, drops zeros.
std::vector<Polynomial::Term> normalize(std::vector<Polynomial::Term> terms, const FieldSpec& field)
{
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Polynomial::Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = field.add(out.back().second, t.second);
        else {
            if (!out.empty() && out.back().second == 0)
                out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().second == 0)
        out.pop_back();
    return out;
}

} // namespace

Polynomial::Polynomial(std::uint32_t n_vars, FieldSpec field)
    : n_vars_(n_vars)
    , field_(field)
{
}

Polynomial::Polynomial(std::uint32_t n_vars, FieldSpec field, std::vector<Term> terms)
    : n_vars_(n_vars)
    , field_(field)
{
    for (auto& [m, c] : terms) {
        if (m.var_bound() > n_vars)
            throw std::invalid_argument("monomial uses a variable beyond n_vars=" + std::to_string(n_vars));
        c %= field.p();
    }
    terms_ = normalize(std::move(terms), field_);
}

Polynomial Polynomial::constant(std::uint32_t n_vars, FieldSpec field, Residue c)
{
    return Polynomial(n_vars, field, {{Monomial::one(), c}});
}

Polynomial Polynomial::monomial(std::uint32_t n_vars, FieldSpec field, Monomial m, Residue c)
{
    return Polynomial(n_vars, field, {{std::move(m), c}});
}

int Polynomial::degree() const noexcept
{
    // terms are sorted ascending, so the last one has maximal degree
    return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree());
}

Residue Polynomial::coefficient(const Monomial& m) const noexcept
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    return (it != terms_.end() && it->first == m) ? it->second : 0;
}

std::optional<std::uint32_t> Polynomial::degree_class(std::uint32_t k) const
{
    if (terms_.empty())
        return 0u;
    std::uint32_t cls = terms_.front().first.degree() % k;
    for (const auto& t : terms_)
        if (t.first.degree() % k != cls)
            return std::nullopt;
    return cls;
}

void Polynomial::check_compatible(const Polynomial& other) const
{
    if (n_vars_ != other.n_vars_)
        throw std::invalid_argument("polynomials over different variable counts (" + std::to_string(n_vars_) +
                                    " vs " + std::to_string(other.n_vars_) + ")");
    if (field_ != other.field_)
        throw std::invalid_argument("polynomials over different fields (GF(" + std::to_string(field_.p()) +
                                    ") vs GF(" + std::to_string(other.field_.p()) + "))");
}

Polynomial Polynomial::operator+(const Polynomial& other) const
{
    check_compatible(other);
    Polynomial r(n_vars_, field_);
    r.terms_.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() && b != other.terms_.end()) {
        int c = Monomial::compare(a->first, b->first);
        if (c < 0)
            r.terms_.push_back(*a++);
        else if (c > 0)
            r.terms_.push_back(*b++);
        else {
            Residue s = field_.add(a->second, b->second);
            if (s != 0)
                r.terms_.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    r.terms_.insert(r.terms_.end(), a, terms_.end());
    r.terms_.insert(r.terms_.end(), b, other.terms_.end());
    return r;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& t : r.terms_)
        t.second = field_.neg(t.second);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const
{
    return *this + (-other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const
{
    check_compatible(other);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * other.terms_.size());
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            prod.emplace_back(ma * mb, field_.mul(ca, cb));
    Polynomial r(n_vars_, field_);
    r.terms_ = normalize(std::move(prod), field_);
    return r;
}

Polynomial Polynomial::scaled(Residue c) const
{
    c %= field_.p();
    Polynomial r(n_vars_, field_);
    if (c == 0)
        return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_)
        t.second = field_.mul(t.second, c);
    return r;
}

Polynomial Polynomial::times(const Monomial& m) const
{
    if (m.var_bound() > n_vars_)
        throw std::invalid_argument("monomial uses a variable beyond n_vars");
    Polynomial r(n_vars_, field_);
    r.terms_.reserve(terms_.size());
    // multiplying by a monomial preserves the graded order
    for (const auto& [mt, c] : terms_)
        r.terms_.emplace_back(mt * m, c);
    return r;
}

Polynomial Polynomial::permuted(std::span<const Var> perm) const
{
    if (perm.size() != n_vars_)
        throw std::invalid_argument("permutation size does not match n_vars");
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [m, c] : terms_)
        t.emplace_back(m.permuted(perm), c);
    Polynomial r(n_vars_, field_);
    r.terms_ = normalize(std::move(t), field_);
    return r;
}

Residue Polynomial::eval(std::span<const Residue> point) const
{
    if (point.size() != n_vars_)
        throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                                    std::to_string(n_vars_));
    Residue acc = 0;
    for (const auto& [m, c] : terms_) {
        Residue v = c;
        for (const auto& [var, e] : m.factors())
            v = field_.mul(v, field_.pow(point[var] % field_.p(), e));
        acc = field_.add(acc, v);
    }
    return acc;
}

bool Polynomial::operator==(const Polynomial& other) const noexcept
{
    return n_vars_ == other.n_vars_ && field_ == other.field_ && terms_ == other.terms_;
}

PolySystem::PolySystem(std::uint32_t n_vars, FieldSpec field)
    : n_vars_(n_vars)
    , field_(field)
{
}

void PolySystem::add(Polynomial f, std::string tag)
{
    if (f.n_vars() != n_vars_ || f.field() != field_)
        throw std::invalid_argument("polynomial '" + tag + "' does not match the system's variables/field");
    polys_.push_back(std::move(f));
    tags_.push_back(std::move(tag));
}

int PolySystem::max_degree() const noexcept
{
    int q = -1;
    for (const auto& f : polys_)
        q = std::max(q, f.degree());
    return q;
}

std::size_t PolySystem::total_terms() const noexcept
{
    std::size_t m = 0;
    for (const auto& f : polys_)
        m += f.size();
    return m;
}

std::string to_string(const Monomial& m)
{
    if (m.is_one())
        return "1";
    std::string s;
    for (const auto& [v, e] : m.factors()) {
        if (!s.empty())
            s += '*';
        s += 'x';
        s += std::to_string(v + 1);
        if (e != 1) {
            s += '^';
            s += std::to_string(e);
        }
    }
    return s;
}

std::string to_string(const Polynomial& f)
{
    if (f.is_zero())
        return "0";
    auto terms = f.terms();
    std::vector<const Polynomial::Term*> order;
    order.reserve(terms.size());
    for (const auto& t : terms)
        order.push_back(&t);
    // highest degree first; within a degree keep the global order
    std::stable_sort(order.begin(), order.end(),
                     [](const auto* a, const auto* b) { return a->first.degree() > b->first.degree(); });
    std::string s;
    for (const auto* t : order) {
        if (!s.empty())
            s += '+';
        const auto& [m, c] = *t;
        if (m.is_one())
            s += std::to_string(c);
        else {
            if (c != 1) {
                s += std::to_string(c);
                s += '*';
            }
            s += to_string(m);
        }
    }
    return s;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::uint32_t n_vars, FieldSpec field)
        : text_(text)
        , n_vars_(n_vars)
        , field_(field)
    {
    }

    Polynomial parse()
    {
        std::vector<Polynomial::Term> terms;
        skip_ws();
        if (at_end())
            fail("empty polynomial");
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        } else if (peek() == '+')
            ++pos_;
        for (;;) {
            auto term = parse_term();
            if (negative)
                term.second = field_.neg(term.second);
            terms.push_back(std::move(term));
            skip_ws();
            if (at_end())
                break;
            char c = peek();
            if (c != '+' && c != '-')
                fail(std::string("unexpected character '") + c + "'");
            negative = (c == '-');
            ++pos_;
        }
        return Polynomial(n_vars_, field_, std::move(terms));
    }

private:
    Polynomial::Term parse_term()
    {
        Residue coeff = 1;
        std::vector<Monomial::Factor> factors;
        bool any = false;
        for (;;) {
            skip_ws();
            if (at_end())
                fail("expected a factor");
            char c = peek();
            if (c == 'x' || c == 'X') {
                ++pos_;
                std::uint64_t idx = parse_uint("variable index");
                if (idx == 0 || idx > n_vars_)
                    fail("variable x" + std::to_string(idx) + " out of range 1.." + std::to_string(n_vars_));
                std::uint64_t e = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    e = parse_uint("exponent");
                }
                factors.emplace_back(static_cast<Var>(idx - 1), static_cast<Exponent>(e));
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::uint64_t v = parse_uint("coefficient");
                coeff = field_.mul(coeff, static_cast<Residue>(v % field_.p()));
            } else
                fail(std::string("unexpected character '") + c + "'");
            any = true;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any)
            fail("empty term");
        return {Monomial(std::move(factors)), coeff};
    }

    std::uint64_t parse_uint(const char* what)
    {
        skip_ws();
        std::uint64_t v = 0;
        auto begin = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
        if (ec != std::errc() || ptr == begin)
            fail(std::string("expected ") + what);
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_ + 1); }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::uint32_t n_vars_;
    FieldSpec field_;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::uint32_t n_vars, FieldSpec field)
{
    return PolyParser(text, n_vars, field).parse();
}

} // namespace nulla
