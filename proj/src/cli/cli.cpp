#include "nulla/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>
#include <regex>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nulla/assemble.hpp"
#include "nulla/certificate.hpp"
#include "nulla/encode.hpp"
#include "nulla/graph.hpp"
#include "nulla/symmetry.hpp"

namespace nulla::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string gen;
    std::string input;
    std::string system_path;
    std::uint32_t p = 2;
    std::uint32_t k = 3;
    std::uint32_t max_degree = 4;
    std::optional<std::uint32_t> degree;
    std::string cutters = "none";
    std::string alt_g = "off";
    std::string pruning = "auto";
    std::string engine = "sparse";
    std::string symmetry;
    std::string symmetry_file;
    bool no_preprocess = false;
    bool force = false;
    bool isolate = false;
    std::string out;
    std::string memory_budget;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string cert_path;
    std::string gen_spec;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream outf(path, std::ios::binary);
    if (!outf || !(outf << text))
        throw UsageError("cannot write '" + path + "'");
}

std::size_t parse_bytes(const std::string& text)
{
    static const std::regex re(R"(\s*(\d+)\s*([kKmMgGtT]?)[iI]?[bB]?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw UsageError("bad memory budget '" + text + "' (e.g. 512M, 8G)");
    std::size_t v = std::stoull(m[1].str());
    const char unit = m[2].str().empty() ? ' ' : static_cast<char>(std::tolower(m[2].str()[0]));
    const int shift = unit == 'k' ? 10 : unit == 'm' ? 20 : unit == 'g' ? 30 : unit == 't' ? 40 : 0;
    if (shift && v > (std::numeric_limits<std::size_t>::max() >> shift))
        throw UsageError("memory budget '" + text + "' too large");
    return v << shift;
}

std::string with_seed(std::string spec, const std::optional<std::uint64_t>& seed)
{
    if (seed && spec.starts_with("random:") && std::count(spec.begin(), spec.end(), ',') == 1)
        spec += "," + std::to_string(*seed);
    return spec;
}

struct Input {
    std::optional<Graph> graph;
    std::string label;
    PolySystem system{0, FieldSpec{2}};
};

Graph load_graph(const RunConfig& cfg, std::ostream& err)
{
    if (!cfg.gen.empty() && !cfg.input.empty())
        throw UsageError("--gen and --input are mutually exclusive");
    if (!cfg.gen.empty()) {
        try {
            return generate(with_seed(cfg.gen, cfg.seed));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (cfg.input.empty())
        throw UsageError("no input: give --gen, --input or --system");
    std::vector<std::string> warnings;
    try {
        Graph g = parse_dimacs(read_file(cfg.input), &warnings);
        for (const auto& w : warnings)
            err << "warning: " << cfg.input << ": " << w << "\n";
        return g;
    } catch (const DimacsError& e) {
        throw UsageError(cfg.input + ": " + e.what());
    }
}

CutterMode cutter_mode(const std::string& s)
{
    if (s == "none" || s == "off")
        return CutterMode::none;
    if (s == "triangles" || s == "on")
        return CutterMode::triangles;
    if (s == "cliques")
        return CutterMode::cliques;
    throw UsageError("--cutters must be none, triangles or cliques");
}

// "tag poly" per line, or a bare polynomial (tagged user:<line index>).
PolySystem load_system(const std::string& path, FieldSpec field)
{
    const std::string text = read_file(path);
    std::uint32_t n = 0;
    static const std::regex var(R"(x(\d+))");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
        const auto& digits = (*it)[1].str();
        if (digits.size() > 9)
            throw UsageError(path + ": variable index too large");
        n = std::max<std::uint32_t>(n, static_cast<std::uint32_t>(std::stoul(digits)));
    }
    PolySystem sys(n, field);
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, user = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::string tag, body = line.substr(first);
        auto sp = body.find_first_of(" \t");
        if (sp != std::string::npos && body.substr(0, sp).find(':') != std::string::npos) {
            tag = body.substr(0, sp);
            body = body.substr(sp + 1);
        } else {
            tag = "user:" + std::to_string(++user);
        }
        try {
            sys.add(parse_polynomial(body, n, field), tag);
        } catch (const std::exception& e) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (sys.empty())
        throw UsageError(path + ": no polynomials");
    return sys;
}

Input load_input(const RunConfig& cfg, bool preprocess, std::ostream& err)
{
    FieldSpec field = [&] {
        try {
            return FieldSpec(cfg.p);
        } catch (const std::exception& e) {
            throw UsageError(std::string("--p: ") + e.what());
        }
    }();
    Input in;
    if (!cfg.system_path.empty()) {
        if (!cfg.gen.empty() || !cfg.input.empty())
            throw UsageError("--system cannot be combined with --gen or --input");
        in.system = load_system(cfg.system_path, field);
        in.label = cfg.system_path;
        return in;
    }
    in.graph = load_graph(cfg, err);
    in.label = cfg.gen.empty() ? cfg.input : with_seed(cfg.gen, cfg.seed);
    EncodingOptions eo;
    eo.k = cfg.k;
    eo.field = field;
    eo.preprocess = preprocess;
    eo.cutters = cutter_mode(cfg.cutters);
    try {
        eo.validate();
        in.system = build_coloring_system(*in.graph, eo);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return in;
}

Pruning pruning_of(const RunConfig& cfg, const Input& in)
{
    if (cfg.pruning == "auto")
        return in.graph ? Pruning::graded(cfg.k) : Pruning::occurring_rows();
    if (cfg.pruning == "graded")
        return Pruning::graded(cfg.k);
    if (cfg.pruning == "occurring" || cfg.pruning == "occurring-rows")
        return Pruning::occurring_rows();
    if (cfg.pruning == "none")
        return Pruning::none();
    throw UsageError("--pruning must be auto, graded, occurring or none");
}

std::vector<std::uint32_t> schedule_of(const RunConfig& cfg, Pruning pruning)
{
    if (cfg.degree)
        return {*cfg.degree};
    if (cfg.max_degree < 1)
        throw UsageError("--max-degree must be at least 1");
    return pruning.kind == Pruning::Kind::graded ? graded_schedule(pruning.k, cfg.max_degree)
                                                 : linear_schedule(cfg.max_degree);
}

std::vector<Polynomial> targets_of(const RunConfig& cfg, const PolySystem& F)
{
    std::vector<Polynomial> targets{Polynomial::constant(F.n_vars(), F.field(), 1)};
    const std::string& mode = cfg.alt_g;
    if (mode == "off")
        return targets;
    if (mode.starts_with("auto:")) {
        std::uint32_t deg = 0;
        try {
            deg = static_cast<std::uint32_t>(std::stoul(mode.substr(5)));
        } catch (const std::exception&) {
            throw UsageError("--alt-g auto:<degree> needs a number");
        }
        if (deg < 1)
            throw UsageError("--alt-g auto:<degree> needs degree >= 1");
        for (auto& m : alt_g_candidates(F.n_vars(), deg))
            targets.push_back(Polynomial::monomial(F.n_vars(), F.field(), std::move(m)));
        return targets;
    }
    try {
        Polynomial g = parse_polynomial(mode, F.n_vars(), F.field());
        if (g.size() != 1)
            throw UsageError("--alt-g expects off, auto:<degree> or a single monomial");
        return {g};
    } catch (const PolyParseError& e) {
        throw UsageError(std::string("--alt-g: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--alt-g: ") + e.what());
    }
}

std::optional<PermutationSet> symmetry_of(const RunConfig& cfg, std::uint32_t n)
{
    if (!cfg.symmetry.empty() && !cfg.symmetry_file.empty())
        throw UsageError("--symmetry and --symmetry-file are mutually exclusive");
    std::string text = cfg.symmetry.empty() ? std::string() : cfg.symmetry;
    if (!cfg.symmetry_file.empty())
        text = read_file(cfg.symmetry_file);
    if (cfg.symmetry.empty() && cfg.symmetry_file.empty())
        return std::nullopt;
    try {
        return PermutationSet::parse(text, n);
    } catch (const SymmetryError& e) {
        throw UsageError(e.what());
    }
}

void apply_threads(int threads)
{
    if (threads < 0)
        throw UsageError("--threads must be >= 0");
#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#endif
}

std::string millis(double ms)
{
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(1) << ms;
    return ss.str();
}

int cmd_prove(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    apply_threads(cfg.threads);
    const bool has_sym = !cfg.symmetry.empty() || !cfg.symmetry_file.empty();
    const bool preprocess = !cfg.no_preprocess && cfg.system_path.empty();
    if (has_sym && preprocess && !cfg.force)
        throw UsageError("--symmetry needs the full encoding: add --no-preprocess "
                         "(or --force to keep preprocessing if the reduced system is still invariant)");

    Input in = load_input(cfg, preprocess, err);
    const PolySystem& F = in.system;
    const Pruning pruning = pruning_of(cfg, in);
    const auto schedule = schedule_of(cfg, pruning);
    const auto targets = targets_of(cfg, F);

    NullaOptions no;
    no.pruning = pruning;
    no.solve.threads = cfg.threads;
    no.assemble.threads = cfg.threads;
    if (cfg.engine == "dense")
        no.solve.engine = Engine::dense;
    else if (cfg.engine != "sparse")
        throw UsageError("--engine must be sparse or dense");
    if (!cfg.memory_budget.empty())
        no.assemble.byte_budget = parse_bytes(cfg.memory_budget);
    if (in.graph)
        no.graph_fingerprint = in.graph->fingerprint();

    NullaOutcome outcome;
    try {
        if (auto perms = symmetry_of(cfg, F.n_vars())) {
            OrbitOptions oo;
            oo.nulla = no;
            auto order = perms->group_order(oo.group_order_cap);
            if (!order || std::gcd(*order, std::uint64_t(cfg.p)) != 1)
                err << "note: group order " << (order ? "divisible by p" : "not determined")
                    << "; orbit certificates remain sound, but a failed orbit solve is inconclusive"
                    << " and falls back to the full system\n";
            outcome = nulla_prove_orbit(F, schedule, targets, *perms, oo);
        } else {
            outcome = nulla_prove(F, schedule, targets, no);
        }
    } catch (const MemoryBudgetExceeded& e) {
        err << "error: memory budget exceeded: " << e.what() << "\n";
        for (auto d : schedule) {
            auto st = stats(F, d);
            err << "predicted degree=" << d << " cols=" << st.predicted_cols << " nnz=" << st.predicted_nnz << "\n";
        }
        return exit_budget;
    } catch (const SymmetryError& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    for (const auto& ds : outcome.per_degree)
        out << "degree=" << ds.degree << " rows=" << ds.rows << " cols=" << ds.cols << " nnz=" << ds.nnz
            << " status=" << (ds.consistent ? "certificate" : "none") << " millis=" << millis(ds.millis) << "\n";

    if (!outcome.infeasible()) {
        out << "no certificate up to degree " << outcome.max_degree
            << "; feasibility is undecided (the system may or may not have a solution)\n";
        return exit_no_certificate;
    }
    const Certificate& cert = *outcome.certificate;
    out << "infeasible: certificate of degree " << cert.degree() << " found with the degree-" << outcome.degree
        << " system, target " << to_string(cert.target) << ", " << cert.entries.size() << " terms\n";
    if (cfg.isolate) {
        if (!in.graph)
            throw UsageError("--isolate needs a graph input");
        auto sub = isolate_subgraph(cert, *in.graph);
        out << "subgraph vertices=" << sub.graph.n_vertices() << " edges=" << sub.graph.n_edges() << " labels=";
        for (std::size_t i = 0; i < sub.vertices.size(); ++i)
            out << (i ? "," : "") << sub.vertices[i];
        out << "\n";
    }
    if (!cfg.out.empty()) {
        if (cfg.out == "-")
            out << write_cert(cert);
        else {
            write_file(cfg.out, write_cert(cert));
            out << "certificate written to " << cfg.out << "\n";
        }
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Certificate cert;
    try {
        cert = read_cert(read_file(cfg.cert_path));
    } catch (const CertificateError& e) {
        err << "error: " << cfg.cert_path << ": " << e.what() << "\n";
        return exit_usage;
    }
    bool ok = false;
    try {
        ok = verify(cert);
    } catch (const CertificateError& e) {
        err << "error: " << cfg.cert_path << ": malformed certificate: " << e.what() << "\n";
        return exit_usage;
    }
    out << (ok ? "valid" : "invalid") << ": sum of beta_i*f_i " << (ok ? "equals" : "differs from") << " target "
        << to_string(cert.target) << " (" << cert.entries.size() << " terms, GF(" << cert.field.p() << "))\n";
    return ok ? exit_ok : exit_verify_failed;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    apply_threads(cfg.threads);
    Input in = load_input(cfg, !cfg.no_preprocess && cfg.system_path.empty(), err);
    const PolySystem& F = in.system;
    const Pruning pruning = pruning_of(cfg, in);
    AssembleOptions ao;
    ao.threads = cfg.threads;
    if (!cfg.memory_budget.empty())
        ao.byte_budget = parse_bytes(cfg.memory_budget);
    std::vector<std::uint32_t> degrees = cfg.degree ? std::vector<std::uint32_t>{*cfg.degree}
                                                    : linear_schedule(cfg.max_degree);
    out << "input=" << in.label << " n=" << F.n_vars() << " s=" << F.size() << " M=" << F.total_terms()
        << " pruning=" << pruning.name() << "\n";
    out << std::left << std::setw(8) << "degree" << std::setw(10) << "quantity" << std::right << std::setw(16)
        << "predicted" << std::setw(16) << "actual" << "\n";
    for (auto d : degrees) {
        SystemStats st;
        try {
            st = stats(F, d, pruning, ao);
        } catch (const MemoryBudgetExceeded& e) {
            st = stats(F, d);
            err << "note: degree " << d << " dry assembly skipped: " << e.what() << "\n";
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        auto row = [&](const char* q, std::optional<std::uint64_t> pred, std::optional<std::size_t> act) {
            out << std::left << std::setw(8) << d << std::setw(10) << q << std::right << std::setw(16)
                << (pred ? std::to_string(*pred) : "-") << std::setw(16) << (act ? std::to_string(*act) : "-")
                << "\n";
        };
        row("rows", std::nullopt, st.rows);
        row("cols", st.predicted_cols, st.cols);
        row("nnz", st.predicted_nnz, st.nnz);
    }
    return exit_ok;
}

int cmd_encode(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Input in = load_input(cfg, !cfg.no_preprocess && cfg.system_path.empty(), err);
    std::ostringstream text;
    for (std::size_t i = 0; i < in.system.size(); ++i)
        text << in.system.tag(i) << " " << to_string(in.system[i]) << "\n";
    if (cfg.out.empty())
        out << text.str();
    else
        write_file(cfg.out, text.str());
    return exit_ok;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out)
{
    const std::string spec = with_seed(cfg.gen_spec, cfg.seed);
    Graph g;
    try {
        g = generate(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::string text = write_dimacs(g, spec);
    if (cfg.out.empty())
        out << text;
    else
        write_file(cfg.out, text);
    return exit_ok;
}

void add_input_options(CLI::App* sc, RunConfig& cfg)
{
    sc->add_option("--gen", cfg.gen, "graph generator, e.g. kneser:8,3, mycielski:7, random:16,0.27,5");
    sc->add_option("--input", cfg.input, "DIMACS .col graph file");
    sc->add_option("--system", cfg.system_path, "polynomial system file, one 'tag poly' or 'poly' per line");
    sc->add_option("--p", cfg.p, "field characteristic (prime)");
    sc->add_option("--k", cfg.k, "number of colors");
    sc->add_option("--cutters", cfg.cutters, "none, triangles or cliques");
    sc->add_flag("--no-preprocess", cfg.no_preprocess, "keep every vertex polynomial (full encoding)");
    sc->add_option("--seed", cfg.seed, "seed for random:n,p generators without an explicit seed");
    sc->add_option("--threads", cfg.threads, "worker thread cap (0 = runtime default)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Nullstellensatz certificates for polynomial systems and graph coloring", "nulla"};
    app.require_subcommand(1);

    auto* prove = app.add_subcommand("prove", "search for an infeasibility certificate");
    add_input_options(prove, cfg);
    prove->add_option("--max-degree", cfg.max_degree, "degree cap");
    prove->add_option("--degree", cfg.degree, "try this degree only");
    prove->add_option("--alt-g", cfg.alt_g, "off, auto:<degree> or a monomial target");
    prove->add_option("--pruning", cfg.pruning, "auto, graded, occurring or none");
    prove->add_option("--engine", cfg.engine, "sparse or dense");
    prove->add_option("--symmetry", cfg.symmetry, "permutation generators in cycle notation");
    prove->add_option("--symmetry-file", cfg.symmetry_file, "file with one generator per line");
    prove->add_flag("--force", cfg.force, "allow --symmetry together with preprocessing");
    prove->add_flag("--isolate", cfg.isolate, "report the subgraph supporting the certificate");
    prove->add_option("--out", cfg.out, "certificate JSON path ('-' for stdout)");
    prove->add_option("--memory-budget", cfg.memory_budget, "refuse systems above this size, e.g. 2G");

    auto* verify_cmd = app.add_subcommand("verify", "check a certificate file");
    verify_cmd->add_option("certificate", cfg.cert_path, "certificate JSON")->required();

    auto* stats_cmd = app.add_subcommand("stats", "predicted and assembled system sizes");
    add_input_options(stats_cmd, cfg);
    stats_cmd->add_option("--degree", cfg.degree, "single degree");
    stats_cmd->add_option("--max-degree", cfg.max_degree, "degrees 1..cap");
    stats_cmd->add_option("--pruning", cfg.pruning, "auto, graded, occurring or none");
    stats_cmd->add_option("--memory-budget", cfg.memory_budget, "skip dry assembly above this size");

    auto* encode_cmd = app.add_subcommand("encode", "print the polynomial system");
    add_input_options(encode_cmd, cfg);
    encode_cmd->add_option("--out", cfg.out, "output path");

    auto* gen_cmd = app.add_subcommand("gen", "write a generated graph as DIMACS");
    gen_cmd->add_option("spec", cfg.gen_spec, "generator spec")->required();
    gen_cmd->add_option("--seed", cfg.seed, "seed for random:n,p");
    gen_cmd->add_option("--out", cfg.out, "output path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }

    try {
        if (prove->parsed())
            return cmd_prove(cfg, out, err);
        if (verify_cmd->parsed())
            return cmd_verify(cfg, out, err);
        if (stats_cmd->parsed())
            return cmd_stats(cfg, out, err);
        if (encode_cmd->parsed())
            return cmd_encode(cfg, out, err);
        if (gen_cmd->parsed())
            return cmd_gen(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace nulla::cli
