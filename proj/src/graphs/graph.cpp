#include "nulla/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

namespace nulla {

Graph::Graph(std::uint32_t n_vertices, const std::vector<Edge>& edges)
    : n_(n_vertices)
    , adj_(n_vertices)
{
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u < 1 || v < 1 || u > n_ || v > n_)
            throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                        "} out of range 1.." + std::to_string(n_));
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [u, v] : edges_) {
        adj_[u - 1].push_back(v);
        adj_[v - 1].push_back(u);
    }
    for (auto& a : adj_)
        std::sort(a.begin(), a.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const
{
    if (u < 1 || u > n_ || v < 1 || v > n_)
        return false;
    const auto& a = adj_[u - 1];
    return std::binary_search(a.begin(), a.end(), v);
}

Graph Graph::disjoint_union(const Graph& other) const
{
    std::vector<Edge> e = edges_;
    for (auto [u, v] : other.edges_)
        e.emplace_back(u + n_, v + n_);
    return Graph(n_ + other.n_, e);
}

std::string Graph::fingerprint() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(n_);
    for (auto [u, v] : edges_) {
        mix(u);
        mix(v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t ln = 0;
    bool have_header = false;
    std::uint64_t n = 0, declared_m = 0;
    std::vector<Edge> edges;

    auto parse_count = [&](std::istringstream& iss, const char* what) -> std::uint64_t {
        std::string tok;
        if (!(iss >> tok))
            throw DimacsError(std::string("missing ") + what, ln);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw DimacsError(std::string("non-integer ") + what + " '" + tok + "'", ln);
        try {
            return std::stoull(tok);
        } catch (const std::exception&) {
            throw DimacsError(std::string("integer out of range for ") + what, ln);
        }
    };

    while (std::getline(in, line)) {
        ++ln;
        std::istringstream iss(line);
        std::string kind;
        if (!(iss >> kind) || kind == "c")
            continue;
        if (kind == "p") {
            if (have_header)
                throw DimacsError("duplicate 'p' line", ln);
            std::string fmt;
            iss >> fmt;
            if (fmt != "edge" && fmt != "edges" && fmt != "col")
                throw DimacsError("expected 'p edge <n> <m>'", ln);
            n = parse_count(iss, "vertex count");
            declared_m = parse_count(iss, "edge count");
            if (n > 0xffffffffull)
                throw DimacsError("vertex count too large", ln);
            have_header = true;
        } else if (kind == "e") {
            if (!have_header)
                throw DimacsError("edge line before 'p' line", ln);
            auto u = parse_count(iss, "endpoint");
            auto v = parse_count(iss, "endpoint");
            if (u < 1 || u > n || v < 1 || v > n)
                throw DimacsError("vertex index out of range 1.." + std::to_string(n), ln);
            if (u == v)
                throw DimacsError("self-loop at vertex " + std::to_string(u), ln);
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } else if (kind == "n") {
            // vertex weights are ignored
        } else
            throw DimacsError("unknown line type '" + kind + "'", ln);
    }
    if (!have_header)
        throw DimacsError("missing 'p edge' line", ln == 0 ? 1 : ln);
    Graph g(static_cast<std::uint32_t>(n), edges);
    if (g.n_edges() != declared_m && warnings)
        warnings->push_back("declared " + std::to_string(declared_m) + " edges, found " +
                            std::to_string(g.n_edges()) + " distinct");
    return g;
}

std::string write_dimacs(const Graph& g, std::string_view comment)
{
    std::ostringstream out;
    if (!comment.empty())
        out << "c " << comment << '\n';
    out << "p edge " << g.n_vertices() << ' ' << g.n_edges() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u << ' ' << v << '\n';
    return out.str();
}

Graph gen_complete(std::uint32_t n)
{
    if (n < 1)
        throw std::invalid_argument("complete graph needs n >= 1");
    std::vector<Edge> e;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            e.emplace_back(u, v);
    return Graph(n, e);
}

Graph gen_cycle(std::uint32_t n)
{
    if (n < 3)
        throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> e;
    for (Vertex u = 1; u <= n; ++u)
        e.emplace_back(u, u % n + 1);
    return Graph(n, e);
}

Graph gen_path(std::uint32_t n)
{
    if (n < 1)
        throw std::invalid_argument("path needs n >= 1");
    std::vector<Edge> e;
    for (Vertex u = 1; u < n; ++u)
        e.emplace_back(u, u + 1);
    return Graph(n, e);
}

Graph gen_wheel(std::uint32_t rim)
{
    if (rim < 3)
        throw std::invalid_argument("wheel needs rim >= 3");
    std::vector<Edge> e;
    const Vertex hub = rim + 1;
    for (Vertex u = 1; u <= rim; ++u) {
        e.emplace_back(u, u % rim + 1);
        e.emplace_back(u, hub);
    }
    return Graph(rim + 1, e);
}

Graph gen_kneser(std::uint32_t t, std::uint32_t r)
{
    if (r < 1 || t < r || t > 26)
        throw std::invalid_argument("kneser needs 1 <= r <= t <= 26");
    std::vector<std::uint32_t> subsets;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << t); ++mask)
        if (std::popcount(mask) == static_cast<int>(r))
            subsets.push_back(static_cast<std::uint32_t>(mask));
    // lexicographic order on the sorted element lists
    auto elems = [t](std::uint32_t mask) {
        std::vector<std::uint32_t> v;
        for (std::uint32_t i = 0; i < t; ++i)
            if (mask >> i & 1)
                v.push_back(i);
        return v;
    };
    std::sort(subsets.begin(), subsets.end(), [&](auto a, auto b) { return elems(a) < elems(b); });
    if (subsets.size() > 0xffffffffull)
        throw std::invalid_argument("kneser graph too large");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j)
            if ((subsets[i] & subsets[j]) == 0)
                e.emplace_back(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1));
    return Graph(static_cast<std::uint32_t>(subsets.size()), e);
}

Graph gen_mycielski(std::uint32_t k)
{
    if (k < 2 || k > 24)
        throw std::invalid_argument("mycielski order must lie in 2..24");
    Graph g(2, {{1, 2}});
    for (std::uint32_t order = 2; order < k; ++order) {
        const std::uint32_t n = g.n_vertices();
        std::vector<Edge> e = g.edges();
        for (auto [u, v] : g.edges()) {
            e.emplace_back(u, n + v);
            e.emplace_back(v, n + u);
        }
        for (Vertex u = 1; u <= n; ++u)
            e.emplace_back(n + u, 2 * n + 1);
        g = Graph(2 * n + 1, e);
    }
    return g;
}

Graph gen_random(std::uint32_t n, double edge_prob, std::uint64_t seed)
{
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0,1]");
    if (n < 1)
        throw std::invalid_argument("random graph needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> e;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v) {
            double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (draw < edge_prob)
                e.emplace_back(u, v);
        }
    return Graph(n, e);
}

Graph gen_petersen()
{
    return gen_kneser(5, 2);
}

namespace {

std::vector<std::string> split_args(std::string_view s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    out.push_back(cur);
    return out;
}

std::uint64_t to_uint(const std::string& s, std::string_view spec)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("bad integer '" + s + "' in generator spec '" + std::string(spec) + "'");
    return std::stoull(s);
}

std::uint32_t to_u32(const std::string& s, std::string_view spec)
{
    auto v = to_uint(s, spec);
    if (v > 0xffffffffull)
        throw std::invalid_argument("integer too large in generator spec '" + std::string(spec) + "'");
    return static_cast<std::uint32_t>(v);
}

} // namespace

Graph generate(std::string_view spec)
{
    auto colon = spec.find(':');
    std::string family(spec.substr(0, colon));
    std::vector<std::string> args;
    if (colon != std::string_view::npos)
        args = split_args(spec.substr(colon + 1));
    auto want = [&](std::size_t count) {
        if (args.size() != count)
            throw std::invalid_argument("generator '" + family + "' takes " + std::to_string(count) +
                                        " argument(s): '" + std::string(spec) + "'");
    };
    if (family == "complete") {
        want(1);
        return gen_complete(to_u32(args[0], spec));
    }
    if (family == "cycle") {
        want(1);
        return gen_cycle(to_u32(args[0], spec));
    }
    if (family == "path") {
        want(1);
        return gen_path(to_u32(args[0], spec));
    }
    if (family == "wheel") {
        want(1);
        return gen_wheel(to_u32(args[0], spec));
    }
    if (family == "kneser") {
        want(2);
        return gen_kneser(to_u32(args[0], spec), to_u32(args[1], spec));
    }
    if (family == "mycielski") {
        want(1);
        return gen_mycielski(to_u32(args[0], spec));
    }
    if (family == "petersen") {
        want(0);
        return gen_petersen();
    }
    if (family == "random") {
        if (args.size() != 2 && args.size() != 3)
            throw std::invalid_argument("generator 'random' takes n,p[,seed]: '" + std::string(spec) + "'");
        double p = 0;
        try {
            std::size_t used = 0;
            p = std::stod(args[1], &used);
            if (used != args[1].size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad probability '" + args[1] + "' in '" + std::string(spec) + "'");
        }
        std::uint64_t seed = args.size() == 3 ? to_uint(args[2], spec) : 0;
        return gen_random(to_u32(args[0], spec), p, seed);
    }
    throw std::invalid_argument("unknown generator family '" + family + "'");
}

std::vector<std::vector<Vertex>> enumerate_triangles(const Graph& g)
{
    // edge iterator: for u < v adjacent, common neighbors w > v
    std::vector<std::vector<Vertex>> out;
    for (auto [u, v] : g.edges()) {
        const auto& a = g.neighbors(u);
        const auto& b = g.neighbors(v);
        auto i = std::upper_bound(a.begin(), a.end(), v);
        auto j = std::upper_bound(b.begin(), b.end(), v);
        while (i != a.end() && j != b.end()) {
            if (*i < *j)
                ++i;
            else if (*j < *i)
                ++j;
            else {
                out.push_back({u, v, *i});
                ++i;
                ++j;
            }
        }
    }
    return out;
}

namespace {

void extend_clique(const Graph& g, std::uint32_t size, std::vector<Vertex>& clique, std::vector<Vertex> candidates,
                   std::vector<std::vector<Vertex>>& out)
{
    if (clique.size() == size) {
        out.push_back(clique);
        return;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        Vertex v = candidates[i];
        std::vector<Vertex> next;
        const auto& nb = g.neighbors(v);
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            if (std::binary_search(nb.begin(), nb.end(), candidates[j]))
                next.push_back(candidates[j]);
        if (clique.size() + 1 + next.size() < size)
            continue;
        clique.push_back(v);
        extend_clique(g, size, clique, std::move(next), out);
        clique.pop_back();
    }
}

} // namespace

std::vector<std::vector<Vertex>> enumerate_cliques(const Graph& g, std::uint32_t size)
{
    std::vector<std::vector<Vertex>> out;
    if (size == 0)
        return out;
    if (size == 3)
        return enumerate_triangles(g);
    std::vector<Vertex> all(g.n_vertices());
    std::iota(all.begin(), all.end(), 1u);
    std::vector<Vertex> clique;
    extend_clique(g, size, clique, all, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<Vertex, Vertex> spanning_tree(const Graph& g, Vertex origin)
{
    if (origin < 1 || origin > g.n_vertices())
        throw std::invalid_argument("origin vertex " + std::to_string(origin) + " out of range");
    std::map<Vertex, Vertex> parent;
    std::vector<char> seen(g.n_vertices() + 1, 0);
    std::deque<Vertex> queue{origin};
    seen[origin] = 1;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = u;
                queue.push_back(w);
            }
    }
    return parent;
}

std::vector<Vertex> component_roots(const Graph& g)
{
    std::vector<Vertex> root(g.n_vertices(), 0);
    for (Vertex s = 1; s <= g.n_vertices(); ++s) {
        if (root[s - 1])
            continue;
        root[s - 1] = s;
        std::deque<Vertex> queue{s};
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(u))
                if (!root[w - 1]) {
                    root[w - 1] = s;
                    queue.push_back(w);
                }
        }
    }
    return root;
}

namespace {

class ColoringSearch {
public:
    ColoringSearch(const Graph& g, std::uint32_t k)
        : g_(g)
        , k_(k)
        , color_(g.n_vertices() + 1, 0)
    {
    }

    bool run() { return assign(0, 0); }

private:
    bool assign(std::uint32_t colored, std::uint32_t used)
    {
        if (colored == g_.n_vertices())
            return true;
        // most saturated uncolored vertex, ties by degree then index
        Vertex best = 0;
        std::uint32_t best_sat = 0;
        std::size_t best_deg = 0;
        std::uint64_t best_mask = 0;
        for (Vertex v = 1; v <= g_.n_vertices(); ++v) {
            if (color_[v])
                continue;
            std::uint64_t mask = 0;
            for (Vertex w : g_.neighbors(v))
                if (color_[w])
                    mask |= std::uint64_t(1) << (color_[w] - 1);
            auto sat = static_cast<std::uint32_t>(std::popcount(mask));
            if (best == 0 || sat > best_sat || (sat == best_sat && g_.degree(v) > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = g_.degree(v);
                best_mask = mask;
            }
        }
        if (best_sat >= k_)
            return false;
        // colors beyond used+1 are symmetric to used+1
        std::uint32_t limit = std::min(k_, used + 1);
        for (std::uint32_t c = 1; c <= limit; ++c) {
            if (best_mask >> (c - 1) & 1)
                continue;
            color_[best] = c;
            if (assign(colored + 1, std::max(used, c)))
                return true;
            color_[best] = 0;
        }
        return false;
    }

    const Graph& g_;
    std::uint32_t k_;
    std::vector<std::uint32_t> color_;
};

} // namespace

bool oracle_colorable(const Graph& g, std::uint32_t k)
{
    if (g.n_vertices() == 0)
        return true;
    if (k >= g.n_vertices())
        return true;
    if (k == 0)
        return false;
    if (k > 64)
        throw std::invalid_argument("oracle supports at most 64 colors");
    return ColoringSearch(g, k).run();
}

} // namespace nulla
