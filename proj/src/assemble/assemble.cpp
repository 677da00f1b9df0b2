#include "nulla/assemble.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <limits>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nulla {

std::string Pruning::name() const
{
    switch (kind) {
    case Kind::none:
        return "none";
    case Kind::occurring_rows:
        return "occurring-rows";
    case Kind::graded:
        return "graded(" + std::to_string(k) + ")";
    }
    return "?";
}

std::optional<std::uint32_t> AssembledSystem::row_of(const Monomial& m) const
{
    auto it = std::lower_bound(row_keys.begin(), row_keys.end(), m);
    if (it == row_keys.end() || !(*it == m))
        return std::nullopt;
    return static_cast<std::uint32_t>(it - row_keys.begin());
}

SparseVector AssembledSystem::rhs_for(std::size_t i) const
{
    SparseVector v;
    for (const auto& [m, c] : targets.at(i).terms()) {
        auto r = row_of(m);
        if (!r)
            throw std::invalid_argument("target monomial " + to_string(m) + " is not a row of the system");
        v.emplace_back(*r, c);
    }
    std::sort(v.begin(), v.end());
    return v;
}

namespace {

int thread_count(int requested)
{
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

struct Layout {
    std::vector<std::uint32_t> classes; // degree class per polynomial (graded only)
};

Layout validate(const PolySystem& F, std::span<const Polynomial> targets, Pruning pruning)
{
    if (targets.empty())
        throw std::invalid_argument("assemble: no target polynomial");
    for (const auto& g : targets)
        if (g.n_vars() != F.n_vars() || g.field() != F.field())
            throw std::invalid_argument("assemble: target " + to_string(g) + " does not match the system's ring");
    if (pruning.kind == Pruning::Kind::graded && pruning.k < 1)
        throw std::invalid_argument("assemble: graded pruning needs k >= 1");

    Layout lay;
    if (pruning.kind == Pruning::Kind::graded) {
        lay.classes.reserve(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) {
            auto cls = F[i].degree_class(pruning.k);
            if (!cls)
                throw std::invalid_argument("graded(" + std::to_string(pruning.k) + ") pruning: polynomial " +
                                            std::to_string(i) + " (" + F.tag(i) + ") " + to_string(F[i]) +
                                            " is not homogeneous mod " + std::to_string(pruning.k));
            lay.classes.push_back(*cls);
        }
        for (const auto& g : targets) {
            auto cls = g.degree_class(pruning.k);
            if (!cls || *cls != 0)
                throw std::invalid_argument("graded(" + std::to_string(pruning.k) + ") pruning: target " +
                                            to_string(g) + " has degrees outside 0 mod " +
                                            std::to_string(pruning.k));
        }
    }
    return lay;
}

std::vector<ColumnKey> column_keys(const PolySystem& F, std::uint32_t d, Pruning pruning, const Layout& lay)
{
    const auto shifts = monomials_up_to(F.n_vars(), d);
    std::vector<ColumnKey> keys;
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i].is_zero())
            continue;
        for (const auto& s : shifts) {
            if (pruning.kind == Pruning::Kind::graded && (s.degree() + lay.classes[i]) % pruning.k != 0)
                continue;
            keys.push_back({static_cast<std::uint32_t>(i), s});
        }
    }
    if (keys.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("assemble: too many columns");
    return keys;
}

void check_budget(const PolySystem& F, std::uint32_t d, const std::vector<ColumnKey>& keys, std::size_t budget)
{
    std::size_t nnz = 0;
    for (const auto& k : keys)
        nnz += F[k.poly_index].size();
    // rows <= nnz; the monomial scratch dominates the final CSR storage
    const std::size_t bytes = SparseSystem::storage_bytes(nnz, nnz) + nnz * (sizeof(Monomial) + 16);
    if (bytes > budget)
        throw MemoryBudgetExceeded(bytes, budget,
                                   "degree " + std::to_string(d) + " assembly with " + std::to_string(keys.size()) +
                                       " columns and " + std::to_string(nnz) + " nonzeros");
}

std::uint32_t max_target_degree(std::span<const Polynomial> targets)
{
    int q = 0;
    for (const auto& g : targets)
        q = std::max(q, g.degree());
    return static_cast<std::uint32_t>(q);
}

std::vector<Residue> dense_rhs(const Polynomial& g, const std::vector<Monomial>& rows)
{
    std::vector<Residue> b(rows.size(), 0);
    for (const auto& [m, c] : g.terms()) {
        auto it = std::lower_bound(rows.begin(), rows.end(), m);
        b[static_cast<std::size_t>(it - rows.begin())] = c;
    }
    return b;
}

} // namespace

AssembledSystem assemble(const PolySystem& F, std::uint32_t d, std::span<const Polynomial> targets, Pruning pruning,
                         const AssembleOptions& opts)
{
    const Layout lay = validate(F, targets, pruning);
    auto keys = column_keys(F, d, pruning, lay);
    check_budget(F, d, keys, opts.byte_budget);
    const int threads = thread_count(opts.threads);
    const auto n_cols = static_cast<std::int64_t>(keys.size());

    std::vector<std::size_t> col_ptr(keys.size() + 1, 0);
    for (std::size_t c = 0; c < keys.size(); ++c)
        col_ptr[c + 1] = col_ptr[c] + F[keys[c].poly_index].size();
    const std::size_t nnz = col_ptr.back();

    std::vector<Monomial> monos(nnz);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 256)
    for (std::int64_t c = 0; c < n_cols; ++c) {
        const auto& key = keys[static_cast<std::size_t>(c)];
        std::size_t at = col_ptr[static_cast<std::size_t>(c)];
        for (const auto& term : F[key.poly_index].terms())
            monos[at++] = term.first * key.shift;
    }

    std::vector<Monomial> rows;
    if (pruning.kind == Pruning::Kind::none) {
        const auto cap = static_cast<std::uint32_t>(std::max(F.max_degree(), 0)) + d;
        rows = monomials_up_to(F.n_vars(), std::max(cap, max_target_degree(targets)));
    } else {
        rows = monos;
        for (const auto& g : targets)
            for (const auto& term : g.terms())
                rows.push_back(term.first);
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    }
    if (rows.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("assemble: too many rows");

    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
    index.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        index.emplace(rows[r], static_cast<std::uint32_t>(r));

    std::vector<std::uint32_t> row_idx(nnz);
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(nnz); ++e)
        row_idx[static_cast<std::size_t>(e)] = index.find(monos[static_cast<std::size_t>(e)])->second;
    std::vector<Monomial>().swap(monos);

    std::vector<std::uint32_t> row_len(rows.size(), 0);
    for (auto r : row_idx)
        ++row_len[r];
    std::vector<SparseRow> sparse_rows(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        sparse_rows[r].reserve(row_len[r]);
    // columns ascend, so each row fills in sorted order; distinct terms of one
    // column land in distinct rows
    for (std::size_t c = 0; c < keys.size(); ++c) {
        const auto terms = F[keys[c].poly_index].terms();
        for (std::size_t t = 0; t < terms.size(); ++t)
            sparse_rows[row_idx[col_ptr[c] + t]].push_back({static_cast<std::uint32_t>(c), terms[t].second});
    }

    auto b = dense_rhs(targets.front(), rows);
    SparseSystem sys(static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(keys.size()), F.field(),
                     std::move(sparse_rows), std::move(b), opts.byte_budget);
    return AssembledSystem{std::move(sys),
                           std::move(keys),
                           std::move(rows),
                           d,
                           std::vector<Polynomial>(targets.begin(), targets.end()),
                           pruning};
}

AssembledSystem assemble(const PolySystem& F, std::uint32_t d, const Polynomial& g, Pruning pruning,
                         const AssembleOptions& opts)
{
    return assemble(F, d, std::span<const Polynomial>(&g, 1), pruning, opts);
}

AssembledSystem assemble_reference(const PolySystem& F, std::uint32_t d, std::span<const Polynomial> targets,
                                   Pruning pruning, std::size_t byte_budget)
{
    const Layout lay = validate(F, targets, pruning);
    auto keys = column_keys(F, d, pruning, lay);

    std::map<Monomial, std::map<std::uint32_t, Residue>> entries;
    for (std::size_t c = 0; c < keys.size(); ++c) {
        const Polynomial col = F[keys[c].poly_index].times(keys[c].shift);
        for (const auto& [m, v] : col.terms())
            entries[m][static_cast<std::uint32_t>(c)] = v;
    }
    for (const auto& g : targets)
        for (const auto& term : g.terms())
            entries[term.first];
    if (pruning.kind == Pruning::Kind::none) {
        const auto cap = static_cast<std::uint32_t>(std::max(F.max_degree(), 0)) + d;
        for (auto& m : monomials_up_to(F.n_vars(), cap))
            entries[m];
    }

    std::vector<Monomial> rows;
    std::vector<SparseRow> sparse_rows;
    for (const auto& [m, row] : entries) {
        rows.push_back(m);
        SparseRow sr;
        for (const auto& [c, v] : row)
            sr.push_back({c, v});
        sparse_rows.push_back(std::move(sr));
    }
    auto b = dense_rhs(targets.front(), rows);
    SparseSystem sys(static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(keys.size()), F.field(),
                     std::move(sparse_rows), std::move(b), byte_budget);
    return AssembledSystem{std::move(sys),
                           std::move(keys),
                           std::move(rows),
                           d,
                           std::vector<Polynomial>(targets.begin(), targets.end()),
                           pruning};
}

SystemStats stats(const PolySystem& F, std::uint32_t d, std::optional<Pruning> actual, const AssembleOptions& opts)
{
    SystemStats st;
    st.n = F.n_vars();
    st.s = F.size();
    st.total_terms = F.total_terms();
    st.d = d;
    const std::uint64_t shifts = binomial(std::uint64_t(st.n) + d, d);
    st.predicted_cols = st.s * shifts;
    st.predicted_nnz = st.total_terms * shifts;
    if (actual) {
        auto sys = assemble(F, d, Polynomial::constant(F.n_vars(), F.field(), 1), *actual, opts);
        st.rows = sys.system.n_rows();
        st.cols = sys.system.n_cols();
        st.nnz = sys.system.nnz();
    }
    return st;
}

Certificate extract_certificate(const AssembledSystem& sys, const PolySystem& F, std::span<const Residue> y,
                                std::size_t target_index)
{
    if (y.size() != sys.col_keys.size())
        throw std::invalid_argument("extract_certificate: solution has " + std::to_string(y.size()) +
                                    " entries, system has " + std::to_string(sys.col_keys.size()) + " columns");
    std::vector<std::vector<Polynomial::Term>> beta_terms(F.size());
    for (std::size_t c = 0; c < y.size(); ++c)
        if (y[c] != 0)
            beta_terms[sys.col_keys[c].poly_index].emplace_back(sys.col_keys[c].shift, y[c]);

    Certificate cert;
    cert.field = F.field();
    cert.n_vars = F.n_vars();
    cert.target = sys.targets.at(target_index);
    for (std::size_t i = 0; i < F.size(); ++i) {
        Polynomial beta(F.n_vars(), F.field(), std::move(beta_terms[i]));
        if (!beta.is_zero())
            cert.entries.push_back({F.tag(i), F[i], std::move(beta)});
    }
    cert.provenance.degree = static_cast<int>(sys.degree);
    cert.provenance.pruning = sys.pruning.name();
    return cert;
}

NullaOutcome nulla_prove(const PolySystem& F, std::span<const std::uint32_t> schedule,
                         std::span<const Polynomial> g_candidates, const NullaOptions& opts)
{
    NullaOutcome out;
    SolveOptions so = opts.solve;
    so.solutions = SolutionPolicy::first_consistent;
    for (auto d : schedule) {
        const auto t0 = std::chrono::steady_clock::now();
        auto sys = assemble(F, d, g_candidates, opts.pruning, opts.assemble);
        std::vector<SparseVector> rhs;
        rhs.reserve(g_candidates.size());
        for (std::size_t j = 0; j < g_candidates.size(); ++j)
            rhs.push_back(sys.rhs_for(j));
        auto results = solve_multi_rhs_sparse(sys.system, rhs, so);
        const auto t1 = std::chrono::steady_clock::now();

        DegreeStats ds;
        ds.degree = d;
        ds.rows = sys.system.n_rows();
        ds.cols = sys.system.n_cols();
        ds.nnz = sys.system.nnz();
        ds.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.max_degree = d;

        for (std::size_t j = 0; j < results.size(); ++j) {
            if (!results[j].consistent)
                continue;
            auto cert = extract_certificate(sys, F, *results[j].solution, j);
            cert.provenance.graph_fingerprint = opts.graph_fingerprint;
            if (!verify(cert))
                throw std::logic_error("degree " + std::to_string(d) + " solution does not verify");
            ds.consistent = true;
            out.per_degree.push_back(ds);
            out.verdict = NullaOutcome::Verdict::infeasible;
            out.degree = d;
            out.target_index = j;
            out.certificate = std::move(cert);
            return out;
        }
        out.per_degree.push_back(ds);
    }
    return out;
}

std::vector<std::uint32_t> graded_schedule(std::uint32_t k, std::uint32_t cap)
{
    if (k < 1)
        throw std::invalid_argument("graded_schedule: k must be positive");
    std::vector<std::uint32_t> s;
    for (std::uint32_t d = 1; d <= cap; d += k)
        s.push_back(d);
    if (cap >= 1 && s.back() != cap)
        s.push_back(cap);
    return s;
}

std::vector<std::uint32_t> linear_schedule(std::uint32_t cap)
{
    std::vector<std::uint32_t> s;
    for (std::uint32_t d = 1; d <= cap; ++d)
        s.push_back(d);
    return s;
}

namespace {

std::vector<Vertex> parse_vertex_list(std::string_view body, const std::string& tag)
{
    std::vector<Vertex> vs;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto dash = body.find('-', pos);
        auto part = body.substr(pos, dash == std::string_view::npos ? std::string_view::npos : dash - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos || part.size() > 9)
            throw std::invalid_argument("certificate entry tag '" + tag + "' is not a vertex list");
        vs.push_back(static_cast<Vertex>(std::stoul(std::string(part))));
        if (dash == std::string_view::npos)
            break;
        pos = dash + 1;
    }
    return vs;
}

} // namespace

Subgraph isolate_subgraph(const Certificate& cert, const Graph& g)
{
    std::vector<Edge> edges;
    for (const auto& e : cert.entries) {
        std::string_view tag = e.tag;
        if (tag.starts_with("vertex:"))
            continue;
        std::vector<Vertex> vs;
        if (tag.starts_with("edge:")) {
            vs = parse_vertex_list(tag.substr(5), e.tag);
            if (vs.size() != 2)
                throw std::invalid_argument("edge tag '" + e.tag + "' must name two vertices");
        } else if (tag.starts_with("cutter:")) {
            vs = parse_vertex_list(tag.substr(7), e.tag);
        } else {
            throw std::invalid_argument("certificate entry '" + e.tag + "' is not indexed by graph edges");
        }
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                if (vs[a] < 1 || vs[a] > g.n_vertices() || vs[b] < 1 || vs[b] > g.n_vertices() ||
                    !g.has_edge(vs[a], vs[b]))
                    throw std::invalid_argument("certificate entry '" + e.tag + "' names a pair that is not an edge");
                edges.emplace_back(std::min(vs[a], vs[b]), std::max(vs[a], vs[b]));
            }
    }
    std::vector<Vertex> verts;
    for (const auto& [u, v] : edges) {
        verts.push_back(u);
        verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto local = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin() + 1);
    };
    std::vector<Edge> relabelled;
    for (const auto& [u, v] : edges)
        relabelled.emplace_back(local(u), local(v));
    return Subgraph{Graph(static_cast<std::uint32_t>(verts.size()), relabelled), std::move(verts)};
}

} // namespace nulla
