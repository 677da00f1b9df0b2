#include "nulla/encode.hpp"

#include <numeric>
#include <set>

namespace nulla {

void EncodingOptions::validate() const
{
    if (k < 2)
        throw std::invalid_argument("number of colors must be at least 2");
    if (std::gcd(k, field.p()) != 1)
        throw std::invalid_argument("k=" + std::to_string(k) + " and p=" + std::to_string(field.p()) +
                                    " are not coprime; the coloring encoding needs gcd(k, p) = 1");
}

namespace {

Polynomial vertex_poly(Vertex v, std::uint32_t n_vars, std::uint32_t k, FieldSpec field)
{
    return Polynomial(n_vars, field, {{Monomial::variable(v - 1, k), 1}, {Monomial::one(), field.neg(1)}});
}

Polynomial edge_poly(Vertex u, Vertex v, std::uint32_t n_vars, std::uint32_t k, FieldSpec field)
{
    std::vector<Polynomial::Term> terms;
    for (std::uint32_t t = 0; t < k; ++t)
        terms.emplace_back(Monomial({{u - 1, k - 1 - t}, {v - 1, t}}), 1);
    return Polynomial(n_vars, field, std::move(terms));
}

std::string edge_tag(Vertex u, Vertex v)
{
    return "edge:" + std::to_string(u) + "-" + std::to_string(v);
}

bool parse_vertex_tag(const std::string& tag, Vertex& v)
{
    if (tag.rfind("vertex:", 0) != 0)
        return false;
    try {
        v = static_cast<Vertex>(std::stoul(tag.substr(7)));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

} // namespace

PolySystem encode_coloring(const Graph& g, const EncodingOptions& opts)
{
    opts.validate();
    if (g.n_vertices() == 0)
        throw std::invalid_argument("cannot encode an empty graph");
    const auto n = g.n_vertices();
    PolySystem sys(n, opts.field);
    for (Vertex v = 1; v <= n; ++v)
        sys.add(vertex_poly(v, n, opts.k, opts.field), "vertex:" + std::to_string(v));
    for (auto [u, v] : g.edges())
        sys.add(edge_poly(u, v, n, opts.k, opts.field), edge_tag(u, v));
    return sys;
}

PolySystem preprocess_vertex_polys(const PolySystem& sys, const Graph& g, Vertex origin)
{
    if (origin < 1 || origin > g.n_vertices())
        throw std::invalid_argument("origin vertex " + std::to_string(origin) + " out of range 1.." +
                                    std::to_string(g.n_vertices()));
    if (sys.n_vars() != g.n_vertices())
        throw std::invalid_argument("system and graph disagree on the vertex count");
    auto roots = component_roots(g);
    const Vertex origin_root = roots[origin - 1];
    auto keeps = [&](Vertex v) {
        Vertex r = roots[v - 1];
        return r == origin_root ? v == origin : v == r;
    };
    PolySystem out(sys.n_vars(), sys.field());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        Vertex v = 0;
        if (parse_vertex_tag(sys.tag(i), v) && v >= 1 && v <= g.n_vertices() && !keeps(v))
            continue;
        out.add(sys[i], sys.tag(i));
    }
    return out;
}

std::vector<TaggedPolynomial> triangle_cutters(const Graph& g, std::uint32_t k, FieldSpec field)
{
    if (k < 3)
        throw std::invalid_argument("degree-cutters need k >= 3");
    std::vector<TaggedPolynomial> out;
    const auto n = g.n_vertices();
    // k distinct k-th roots of unity r satisfy sum r^(k-1) = sum r^-1 = 0; on
    // fewer than k vertices the sum is minus a missing root, never zero.
    for (const auto& clique : enumerate_cliques(g, k)) {
        std::vector<Polynomial::Term> terms;
        std::string tag = "cutter:";
        for (std::size_t i = 0; i < clique.size(); ++i) {
            terms.emplace_back(Monomial::variable(clique[i] - 1, k - 1), 1);
            tag += (i ? "-" : "") + std::to_string(clique[i]);
        }
        out.push_back({Polynomial(n, field, std::move(terms)), std::move(tag)});
    }
    return out;
}

std::vector<Monomial> alt_g_candidates(std::uint32_t n_vars, std::uint32_t degree)
{
    if (degree < 1)
        throw std::invalid_argument("alternative targets need degree >= 1");
    return monomials_of_degree(n_vars, degree);
}

PolySystem build_coloring_system(const Graph& g, const EncodingOptions& opts)
{
    PolySystem sys = encode_coloring(g, opts);
    if (opts.preprocess)
        sys = preprocess_vertex_polys(sys, g, 1);
    if (opts.cutters == CutterMode::triangles && opts.k != 3)
        throw std::invalid_argument("triangle cutters are for k = 3; use clique cutters for k = " +
                                    std::to_string(opts.k));
    if (opts.cutters != CutterMode::none)
        for (auto& c : triangle_cutters(g, opts.k, opts.field))
            sys.add(std::move(c.poly), std::move(c.tag));
    return sys;
}

} // namespace nulla
