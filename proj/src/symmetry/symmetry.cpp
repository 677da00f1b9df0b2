#include "nulla/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <numeric>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nulla {

PermutationSet::PermutationSet(std::uint32_t n, std::vector<std::vector<Var>> generators)
    : n_(n)
{
    for (auto& g : generators) {
        if (g.size() != n)
            throw SymmetryError("permutation has " + std::to_string(g.size()) + " images, expected " +
                                std::to_string(n));
        std::vector<bool> seen(n, false);
        bool identity = true;
        for (Var v = 0; v < n; ++v) {
            if (g[v] >= n || seen[g[v]])
                throw SymmetryError("generator is not a permutation of 1.." + std::to_string(n));
            seen[g[v]] = true;
            identity = identity && g[v] == v;
        }
        if (!identity)
            gens_.push_back(std::move(g));
    }
}

PermutationSet PermutationSet::parse(std::string_view text, std::uint32_t n)
{
    std::vector<std::vector<Var>> gens;
    std::vector<Var> cur(n);
    std::iota(cur.begin(), cur.end(), 0);
    std::vector<bool> touched(n, false);
    bool open = false;
    std::vector<Var> cycle;
    std::string number;

    auto flush_number = [&](std::size_t pos) {
        if (number.empty())
            throw SymmetryError("permutation: expected a vertex number at offset " + std::to_string(pos));
        unsigned long v = number.size() > 9 ? 0 : std::stoul(number);
        if (v < 1 || v > n)
            throw SymmetryError("permutation: vertex " + number + " outside 1.." + std::to_string(n));
        number.clear();
        const Var x = static_cast<Var>(v - 1);
        if (touched[x])
            throw SymmetryError("permutation: vertex " + std::to_string(v) + " repeated within a generator");
        touched[x] = true;
        cycle.push_back(x);
    };
    auto end_generator = [&] {
        if (open)
            throw SymmetryError("permutation: unclosed cycle");
        gens.push_back(cur);
        std::iota(cur.begin(), cur.end(), 0);
        std::fill(touched.begin(), touched.end(), false);
    };

    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            --i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            if (!open)
                throw SymmetryError("permutation: number outside a cycle at offset " + std::to_string(i));
            number.push_back(ch);
        } else if (ch == '(') {
            if (open)
                throw SymmetryError("permutation: nested '(' at offset " + std::to_string(i));
            open = true;
            any = true;
        } else if (ch == ',') {
            if (!open)
                throw SymmetryError("permutation: ',' outside a cycle at offset " + std::to_string(i));
            flush_number(i);
        } else if (ch == ')') {
            if (!open)
                throw SymmetryError("permutation: unmatched ')' at offset " + std::to_string(i));
            flush_number(i);
            for (std::size_t j = 0; j < cycle.size(); ++j)
                cur[cycle[j]] = cycle[(j + 1) % cycle.size()];
            cycle.clear();
            open = false;
        } else if (ch == ';' || ch == '\n') {
            if (any)
                end_generator();
            any = false;
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw SymmetryError(std::string("permutation: unexpected '") + ch + "' at offset " + std::to_string(i));
        }
    }
    if (any)
        end_generator();
    else if (open)
        throw SymmetryError("permutation: unclosed cycle");
    return PermutationSet(n, std::move(gens));
}

std::string PermutationSet::to_string() const
{
    if (gens_.empty())
        return "()";
    std::string out;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (g)
            out += ";";
        std::vector<bool> done(n_, false);
        for (Var v = 0; v < n_; ++v) {
            if (done[v] || gens_[g][v] == v)
                continue;
            out += "(";
            for (Var w = v; !done[w]; w = gens_[g][w]) {
                if (w != v)
                    out += ",";
                out += std::to_string(w + 1);
                done[w] = true;
            }
            out += ")";
        }
    }
    return out;
}

std::optional<std::uint64_t> PermutationSet::group_order(std::uint64_t cap) const
{
    std::vector<Var> id(n_);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<Var>> seen{id};
    std::vector<std::vector<Var>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<Var>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens_) {
                std::vector<Var> q(n_);
                for (Var v = 0; v < n_; ++v)
                    q[v] = g[p[v]];
                if (seen.insert(q).second) {
                    if (seen.size() > cap)
                        return std::nullopt;
                    next.push_back(std::move(q));
                }
            }
        frontier = std::move(next);
    }
    return seen.size();
}

namespace {

struct PolyHash {
    std::size_t operator()(const Polynomial& f) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const auto& [m, c] : f.terms())
            h = (h ^ (m.hash() + 0x9e3779b97f4a7c15ull * (c + 1))) * 0x100000001b3ull;
        return h;
    }
};

struct ColumnKeyHash {
    std::size_t operator()(const ColumnKey& k) const noexcept
    {
        return k.shift.hash() * 0x9e3779b97f4a7c15ull ^ k.poly_index;
    }
};

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n)
        : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

// Orbit labels numbered by smallest member.
std::vector<std::uint32_t> label(UnionFind& uf, std::uint32_t& count)
{
    const auto n = uf.parent.size();
    std::vector<std::uint32_t> lab(n), root_label(n, UINT32_MAX);
    count = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
        const auto r = uf.find(x);
        if (root_label[r] == UINT32_MAX)
            root_label[r] = count++;
        lab[x] = root_label[r];
    }
    return lab;
}

int thread_count(int requested)
{
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

} // namespace

std::vector<std::vector<std::uint32_t>> check_invariance(const PolySystem& F, const PermutationSet& perms)
{
    if (perms.n() != F.n_vars())
        throw SymmetryError("permutations act on " + std::to_string(perms.n()) + " variables, system has " +
                            std::to_string(F.n_vars()));
    std::unordered_map<Polynomial, std::uint32_t, PolyHash> where;
    for (std::size_t i = 0; i < F.size(); ++i)
        where.emplace(F[i], static_cast<std::uint32_t>(i));
    std::vector<std::vector<std::uint32_t>> action;
    for (std::size_t g = 0; g < perms.generators().size(); ++g) {
        const auto& sigma = perms.generators()[g];
        std::vector<std::uint32_t> img(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) {
            auto it = where.find(F[i].permuted(sigma));
            if (it == where.end())
                throw SymmetryError("system is not invariant: generator " + std::to_string(g + 1) + " maps " +
                                    F.tag(i) + " (" + to_string(F[i]) + ") outside the system");
            img[i] = it->second;
        }
        action.push_back(std::move(img));
    }
    return action;
}

SparseVector OrbitSystem::rhs_for(std::size_t target) const
{
    const auto b = full.rhs_for(target);
    SparseVector out;
    for (const auto& [r, v] : b)
        if (row_rep_index[row_orbit_of[r]] == r)
            out.emplace_back(row_orbit_of[r], v);
    std::sort(out.begin(), out.end());
    return out;
}

OrbitSystem assemble_orbit(const PolySystem& F, std::uint32_t d, std::span<const Polynomial> targets,
                           const PermutationSet& perms, Pruning pruning, const AssembleOptions& opts,
                           OrbitRepresentative rep, std::uint64_t group_order_cap)
{
    const auto action = check_invariance(F, perms);
    for (const auto& g : targets)
        for (const auto& sigma : perms.generators())
            if (!(g.permuted(sigma) == g))
                throw SymmetryError("target " + to_string(g) + " is not invariant under " + perms.to_string());

    AssembledSystem full = assemble(F, d, targets, pruning, opts);
    const auto n_rows = full.system.n_rows();
    const auto n_cols = full.system.n_cols();

    UnionFind rows(n_rows), cols(n_cols);
    std::unordered_map<ColumnKey, std::uint32_t, ColumnKeyHash> col_index;
    col_index.reserve(n_cols);
    for (std::uint32_t c = 0; c < n_cols; ++c)
        col_index.emplace(full.col_keys[c], c);
    for (std::size_t g = 0; g < perms.generators().size(); ++g) {
        const auto& sigma = perms.generators()[g];
        for (std::uint32_t r = 0; r < n_rows; ++r) {
            auto img = full.row_of(full.row_keys[r].permuted(sigma));
            if (!img)
                throw std::logic_error("row set not closed under " + perms.to_string());
            rows.unite(r, *img);
        }
        for (std::uint32_t c = 0; c < n_cols; ++c) {
            const auto& key = full.col_keys[c];
            auto it = col_index.find({action[g][key.poly_index], key.shift.permuted(sigma)});
            if (it == col_index.end())
                throw std::logic_error("column set not closed under " + perms.to_string());
            cols.unite(c, it->second);
        }
    }

    std::uint32_t n_row_orbits = 0, n_col_orbits = 0;
    auto row_orbit_of = label(rows, n_row_orbits);
    auto col_orbit_of = label(cols, n_col_orbits);

    std::vector<std::uint32_t> row_rep(n_row_orbits, UINT32_MAX);
    for (std::uint32_t r = 0; r < n_rows; ++r) {
        auto& slot = row_rep[row_orbit_of[r]];
        if (slot == UINT32_MAX || rep == OrbitRepresentative::last)
            slot = r;
    }
    std::vector<std::uint32_t> col_rep(n_col_orbits, UINT32_MAX);
    for (std::uint32_t c = 0; c < n_cols; ++c)
        if (col_rep[col_orbit_of[c]] == UINT32_MAX)
            col_rep[col_orbit_of[c]] = c;

    const FieldSpec field = F.field();
    std::vector<SparseRow> orbit_rows(n_row_orbits);
    const int threads = thread_count(opts.threads);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 64)
    for (std::int64_t R = 0; R < static_cast<std::int64_t>(n_row_orbits); ++R) {
        const auto r = row_rep[static_cast<std::size_t>(R)];
        auto cs = full.system.row_cols(r);
        auto vs = full.system.row_coeffs(r);
        std::vector<std::pair<std::uint32_t, Residue>> acc;
        acc.reserve(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i)
            acc.emplace_back(col_orbit_of[cs[i]], vs[i]);
        std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseRow& out = orbit_rows[static_cast<std::size_t>(R)];
        for (std::size_t i = 0; i < acc.size();) {
            Residue sum = 0;
            std::size_t j = i;
            for (; j < acc.size() && acc[j].first == acc[i].first; ++j)
                sum = field.add(sum, acc[j].second);
            if (sum != 0)
                out.push_back({acc[i].first, sum});
            i = j;
        }
    }

    std::vector<Residue> rhs(n_row_orbits, 0);
    for (std::uint32_t R = 0; R < n_row_orbits; ++R)
        rhs[R] = full.system.rhs()[row_rep[R]];

    OrbitSystem orb{SparseSystem(n_row_orbits, n_col_orbits, field, std::move(orbit_rows), std::move(rhs),
                                 opts.byte_budget),
                    {},
                    {},
                    std::move(row_orbit_of),
                    std::move(col_orbit_of),
                    row_rep,
                    std::move(full),
                    perms.group_order(group_order_cap),
                    false};
    for (auto r : row_rep)
        orb.row_reps.push_back(orb.full.row_keys[r]);
    for (auto c : col_rep)
        orb.col_reps.push_back(orb.full.col_keys[c]);
    orb.coprime_verified = orb.group_order && std::gcd(*orb.group_order, std::uint64_t(field.p())) == 1;
    return orb;
}

std::vector<Residue> lift_solution(const OrbitSystem& orb, std::span<const Residue> ybar)
{
    if (ybar.size() != orb.system.n_cols())
        throw std::invalid_argument("lift_solution: orbit solution has " + std::to_string(ybar.size()) +
                                    " entries, expected " + std::to_string(orb.system.n_cols()));
    std::vector<Residue> y(orb.col_orbit_of.size());
    for (std::size_t c = 0; c < y.size(); ++c)
        y[c] = ybar[orb.col_orbit_of[c]];
    return y;
}

NullaOutcome nulla_prove_orbit(const PolySystem& F, std::span<const std::uint32_t> schedule,
                               std::span<const Polynomial> g_candidates, const PermutationSet& perms,
                               const OrbitOptions& opts)
{
    NullaOutcome out;
    SolveOptions so = opts.nulla.solve;
    so.solutions = SolutionPolicy::first_consistent;
    for (auto d : schedule) {
        const auto t0 = std::chrono::steady_clock::now();
        auto orb = assemble_orbit(F, d, g_candidates, perms, opts.nulla.pruning, opts.nulla.assemble,
                                  OrbitRepresentative::first, opts.group_order_cap);
        std::vector<SparseVector> rhs;
        for (std::size_t j = 0; j < g_candidates.size(); ++j)
            rhs.push_back(orb.rhs_for(j));
        auto results = solve_multi_rhs_sparse(orb.system, rhs, so);

        DegreeStats ds;
        ds.degree = d;
        ds.rows = orb.system.n_rows();
        ds.cols = orb.system.n_cols();
        ds.nnz = orb.system.nnz();
        ds.note = "orbit";
        out.max_degree = d;

        std::optional<std::pair<std::size_t, std::vector<Residue>>> found;
        for (std::size_t j = 0; j < results.size() && !found; ++j)
            if (results[j].consistent)
                found.emplace(j, lift_solution(orb, *results[j].solution));
        if (!found && !orb.coprime_verified && opts.fallback_full) {
            std::vector<SparseVector> full_rhs;
            for (std::size_t j = 0; j < g_candidates.size(); ++j)
                full_rhs.push_back(orb.full.rhs_for(j));
            auto full_results = solve_multi_rhs_sparse(orb.full.system, full_rhs, so);
            ds.note = "orbit+full";
            for (std::size_t j = 0; j < full_results.size() && !found; ++j)
                if (full_results[j].consistent)
                    found.emplace(j, std::move(*full_results[j].solution));
        }
        ds.millis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

        if (found) {
            auto cert = extract_certificate(orb.full, F, found->second, found->first);
            cert.provenance.symmetry = perms.to_string();
            cert.provenance.graph_fingerprint = opts.nulla.graph_fingerprint;
            if (!verify(cert))
                throw std::logic_error("degree " + std::to_string(d) + " lifted solution does not verify");
            ds.consistent = true;
            out.per_degree.push_back(ds);
            out.verdict = NullaOutcome::Verdict::infeasible;
            out.degree = d;
            out.target_index = found->first;
            out.certificate = std::move(cert);
            return out;
        }
        out.per_degree.push_back(ds);
    }
    return out;
}

} // namespace nulla
