#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nulla {

using Vertex = std::uint32_t; // 1-based, DIMACS convention
using Edge = std::pair<Vertex, Vertex>; // always first < second

/// Simple undirected graph on vertices 1..n.
class Graph {
public:
    Graph() = default;
    /// Edges may be given in either orientation and repeated; self-loops and
    /// out-of-range endpoints throw.
    Graph(std::uint32_t n_vertices, const std::vector<Edge>& edges);

    std::uint32_t n_vertices() const noexcept { return n_; }
    std::size_t n_edges() const noexcept { return edges_.size(); }
    /// Sorted lexicographically.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Sorted neighbor list of v.
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v - 1); }
    bool has_edge(Vertex u, Vertex v) const;
    std::size_t degree(Vertex v) const { return adj_.at(v - 1).size(); }

    /// Disjoint union; the other graph's vertices are shifted by n_vertices().
    Graph disjoint_union(const Graph& other) const;
    /// FNV-1a over the canonical edge list, as 16 hex digits.
    std::string fingerprint() const;

    bool operator==(const Graph& other) const noexcept { return n_ == other.n_ && edges_ == other.edges_; }

private:
    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

class DimacsError : public std::runtime_error {
public:
    DimacsError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what)
        , line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses DIMACS .col text. A declared edge count that differs from the
/// number of distinct edges is reported through `warnings`, not thrown.
Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string write_dimacs(const Graph& g, std::string_view comment = {});

// Generators.
Graph gen_complete(std::uint32_t n);
Graph gen_cycle(std::uint32_t n);
Graph gen_path(std::uint32_t n);
/// Cycle 1..rim plus hub rim+1 joined to every rim vertex.
Graph gen_wheel(std::uint32_t rim);
/// Vertices are the r-subsets of {1..t} in lexicographic order; edges join disjoint subsets.
Graph gen_kneser(std::uint32_t t, std::uint32_t r);
/// Mycielski graph of order k with m2 = K2 (m3 = C5, m4 = Groetzsch graph).
Graph gen_mycielski(std::uint32_t k);
/// G(n, p): each pair u < v in lexicographic order is kept when the next
/// 53-bit draw of std::mt19937_64(seed) is below edge_prob.
Graph gen_random(std::uint32_t n, double edge_prob, std::uint64_t seed);
/// Petersen graph, i.e. Kneser(5, 2).
Graph gen_petersen();

/// "complete:4", "kneser:8,3", "mycielski:7", "wheel:5", "random:16,0.27,7",
/// "cycle:5", "path:3", "petersen".
Graph generate(std::string_view spec);

// Structure.
std::vector<std::vector<Vertex>> enumerate_cliques(const Graph& g, std::uint32_t size);
std::vector<std::vector<Vertex>> enumerate_triangles(const Graph& g);

/// BFS tree from origin over its component: child -> parent.
std::map<Vertex, Vertex> spanning_tree(const Graph& g, Vertex origin);
/// Component label (smallest vertex in the component) for every vertex, index v-1.
std::vector<Vertex> component_roots(const Graph& g);

/// Exact k-colorability by backtracking (DSATUR-style vertex choice).
bool oracle_colorable(const Graph& g, std::uint32_t k);

} // namespace nulla
