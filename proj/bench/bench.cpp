// Serial reference kernels against the OpenMP ones.
//
//   nulla_bench [--quick] [--threads N]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nulla/assemble.hpp"
#include "nulla/encode.hpp"

using namespace nulla;

namespace {

double best_of(int reps, const std::function<void()>& f)
{
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

struct Case {
    const char* spec;
    std::uint32_t degree;
    bool reference; // the serial solver is cubic; skip it on big systems
    bool dense;
};

} // namespace

int main(int argc, char** argv)
{
    bool quick = false;
    int threads = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick"))
            quick = true;
        else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc)
            threads = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: nulla_bench [--quick] [--threads N]\n");
            return 2;
        }
    }
#ifdef _OPENMP
    const int max_threads = threads > 0 ? threads : omp_get_max_threads();
#else
    const int max_threads = 1;
#endif

    std::vector<Case> cases = {{"wheel:9", 1, true, true}, {"mycielski:5", 1, true, true}};
    if (!quick) {
        cases.push_back({"mycielski:6", 1, false, true});
        cases.push_back({"kneser:8,3", 1, false, true});
        cases.push_back({"random:16,0.27,7", 4, false, true});
        cases.push_back({"mycielski:7", 1, false, false});
    }
    const int reps = quick ? 1 : 3;

    std::printf("threads=%d\n", max_threads);
    std::printf("%-18s %3s %8s %8s | %10s %10s | %10s %10s %10s\n", "graph", "d", "rows", "cols", "asm-ref",
                "asm-par", "solve-ref", "sparse", "dense");
    bool agree = true;
    for (const auto& c : cases) {
        Graph g = generate(c.spec);
        EncodingOptions o;
        auto F = build_coloring_system(g, o);
        const std::vector<Polynomial> t{Polynomial::constant(F.n_vars(), F.field(), 1)};
        const auto pr = Pruning::graded(3);

        AssembledSystem ref = assemble_reference(F, c.degree, t, pr);
        const double asm_ref = best_of(reps, [&] { ref = assemble_reference(F, c.degree, t, pr); });
        AssembledSystem par = assemble(F, c.degree, t, pr, {max_threads, default_byte_budget});
        const double asm_par =
            best_of(reps, [&] { par = assemble(F, c.degree, t, pr, {max_threads, default_byte_budget}); });
        agree = agree && par.system == ref.system;

        SolveResult sparse, dense, serial;
        double solve_ref = -1;
        if (c.reference)
            solve_ref = best_of(reps, [&] { serial = solve_reference(par.system); });
        const double t_sparse =
            best_of(reps, [&] { sparse = solve(par.system, {Engine::sparse, max_threads, SolutionPolicy::all}); });
        double t_dense = -1;
        if (c.dense)
            t_dense = best_of(reps, [&] { dense = solve(par.system, {Engine::dense, max_threads, SolutionPolicy::all}); });
        agree = agree && (!c.dense || sparse == dense) && (!c.reference || sparse == serial);

        std::printf("%-18s %3u %8u %8u | %10.2f %10.2f | ", c.spec, c.degree, par.system.n_rows(), par.system.n_cols(),
                    asm_ref, asm_par);
        if (c.reference)
            std::printf("%10.2f ", solve_ref);
        else
            std::printf("%10s ", "-");
        std::printf("%10.2f ", t_sparse);
        if (c.dense)
            std::printf("%10.2f ", t_dense);
        else
            std::printf("%10s ", "-");
        std::printf(" (ms, consistent=%d)\n", sparse.consistent);
    }
    std::printf("results agree: %s\n", agree ? "yes" : "NO");
    return agree ? 0 : 1;
}
