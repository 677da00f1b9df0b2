#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nulla/graph.hpp"
#include "nulla/polynomial.hpp"

namespace nulla {

/// triangles: k = 3 only; cliques: k-cliques for any k.
enum class CutterMode { none, triangles, cliques };

struct EncodingOptions {
    std::uint32_t k = 3;
    FieldSpec field{2};
    bool preprocess = true;
    CutterMode cutters = CutterMode::none;

    /// Throws unless gcd(k, p) = 1 and k >= 2.
    void validate() const;
};

struct TaggedPolynomial {
    Polynomial poly;
    std::string tag;
};

/// Vertex polynomials x_i^k - 1 (vertex order), then edge polynomials
/// sum_t x_u^(k-1-t) x_v^t (edge order). Variable x_i is vertex i.
PolySystem encode_coloring(const Graph& g, const EncodingOptions& opts);

/// Drops vertex polynomials made redundant by
/// x_i^k - 1 = (x_j^k - 1) + (x_i - x_j) * edge(i, j): only `origin` keeps its
/// vertex polynomial in origin's component, and the smallest vertex keeps it in
/// every other component.
PolySystem preprocess_vertex_polys(const PolySystem& sys, const Graph& g, Vertex origin);

/// Sum of x^(k-1) over each k-clique: x_u^2 + x_v^2 + x_w^2 per triangle for
/// k = 3. Tagged "cutter:u-v-w".
std::vector<TaggedPolynomial> triangle_cutters(const Graph& g, std::uint32_t k, FieldSpec field);

/// Alternative targets: every monomial of exactly `degree`.
std::vector<Monomial> alt_g_candidates(std::uint32_t n_vars, std::uint32_t degree);

/// encode_coloring, then optional preprocessing (origin 1) and cutters.
PolySystem build_coloring_system(const Graph& g, const EncodingOptions& opts);

} // namespace nulla
