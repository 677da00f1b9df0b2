#pragma once

// Independent reference implementations for the tests. Nothing here calls the
// prover's code: plain vectors, maps and brute force.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t a, std::int64_t p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t p)
{
    std::int64_t r = 1, e = p - 2;
    a = mod(a, p);
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

/// Rank of a matrix over Z/p by textbook row reduction.
inline std::size_t rank(Matrix a, std::int64_t p)
{
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && mod(a[piv][c], p) == 0)
            ++piv;
        if (piv == m)
            continue;
        std::swap(a[r], a[piv]);
        const auto inv = inverse(a[r][c], p);
        for (auto& x : a[r])
            x = mod(x * inv, p);
        for (std::size_t i = 0; i < m; ++i)
            if (i != r && mod(a[i][c], p) != 0) {
                const auto f = mod(a[i][c], p);
                for (std::size_t k = 0; k < n; ++k)
                    a[i][k] = mod(a[i][k] - f * a[r][k], p);
            }
        ++r;
    }
    return r;
}

/// A y = b solvable iff rank(A) = rank([A | b]).
inline bool consistent(const Matrix& a, const std::vector<std::int64_t>& b, std::int64_t p)
{
    Matrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i)
        aug[i].push_back(b[i]);
    return rank(a, p) == rank(aug, p);
}

/// Tries all k^n assignments.
inline bool colorable_bruteforce(int n, const std::vector<std::pair<int, int>>& edges, int k)
{
    std::vector<int> c(n, 0);
    while (true) {
        bool ok = true;
        for (const auto& [u, v] : edges)
            if (c[u - 1] == c[v - 1]) {
                ok = false;
                break;
            }
        if (ok)
            return true;
        int i = 0;
        while (i < n && ++c[i] == k)
            c[i++] = 0;
        if (i == n)
            return false;
    }
}

/// GF(4) = GF(2)[a] / (a^2 + a + 1), element lo + hi*a.
struct GF4 {
    int lo = 0, hi = 0;
    friend GF4 operator+(GF4 x, GF4 y) { return {x.lo ^ y.lo, x.hi ^ y.hi}; }
    friend GF4 operator*(GF4 x, GF4 y)
    {
        // (a0 + a1 t)(b0 + b1 t) with t^2 = t + 1
        const int c0 = (x.lo & y.lo), c1 = (x.lo & y.hi) ^ (x.hi & y.lo), c2 = (x.hi & y.hi);
        return {c0 ^ c2, c1 ^ c2};
    }
    friend bool operator==(GF4 x, GF4 y) { return x.lo == y.lo && x.hi == y.hi; }
};

inline GF4 gf4_pow(GF4 x, unsigned e)
{
    GF4 r{1, 0};
    while (e--)
        r = r * x;
    return r;
}

/// Polynomials as exponent vector -> integer coefficient mod p.
using Poly = std::map<std::vector<int>, std::int64_t>;

inline Poly multiply(const Poly& f, const Poly& g, std::int64_t p)
{
    Poly out;
    for (const auto& [a, x] : f)
        for (const auto& [b, y] : g) {
            std::vector<int> e(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                e[i] = a[i] + b[i];
            out[e] = mod(out[e] + x * y, p);
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// All exponent vectors in n variables with total degree <= d.
inline std::vector<std::vector<int>> exponents_up_to(int n, int d)
{
    std::vector<std::vector<int>> out;
    std::vector<int> e(n, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n) {
            out.push_back(e);
            return;
        }
        for (int t = 0; t <= left; ++t) {
            e[i] = t;
            self(self, i + 1, left - t);
        }
        e[i] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// Distinct monomials of x^delta * f over every f and every shift of degree <= d.
inline std::set<std::vector<int>> expansion_support(const std::vector<Poly>& system, int n, int d, std::int64_t p)
{
    std::set<std::vector<int>> support;
    for (const auto& shift : exponents_up_to(n, d))
        for (const auto& f : system)
            for (const auto& [mono, c] : multiply(f, Poly{{shift, 1}}, p)) {
                (void)c;
                support.insert(mono);
            }
    return support;
}

} // namespace oracle
