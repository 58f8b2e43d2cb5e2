// Serial vs OpenMP timing for the simplex pivot kernel and the verifier
// loops, on generated instances of growing size.

#include <chrono>
#include <cstdio>

#include "rrflow/instances.hpp"
#include "rrflow/srf_solver.hpp"

using namespace rrflow;

namespace {

double seconds(void (*body)(const Network&, int), const Network& net, int threads) {
    auto start = std::chrono::steady_clock::now();
    body(net, threads);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

void run_lp(const Network& net, int threads) {
    LinearProgram lp = build_compact_srf_lp(net);
    LpOutcome out = solve_lp(lp, threads);
    if (out.status != LpStatus::Optimal)
        std::puts("unexpected LP status");
}

void run_solver(const Network& net, int threads) { solve_max_srf(net, threads); }

void run_verify(const Network& net, int threads) {
    (void)threads; // verify_reroutable parallelizes internally via OpenMP
    SrfSolution sol = solve_max_srf(net, 1);
    for (int rep = 0; rep < 50; ++rep)
        verify_reroutable(net, sol.nominal, true);
}

void compare(const char* name, void (*body)(const Network&, int),
             const Network& net) {
    double serial = seconds(body, net, 1);
    double parallel = seconds(body, net, 0);
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %.2fx\n", name,
                serial, parallel, serial / (parallel > 0 ? parallel : 1e-9));
}

} // namespace

int main() {
    std::printf("== compact SRF LP, fig2 scale ==\n");
    compare("lp fig2(1)", run_lp, gen_fig2(Rational(1)));
    compare("lp fig2(2)", run_lp, gen_fig2(Rational(2)));

    std::printf("== cut-generation solver ==\n");
    compare("solve fig3(3)", run_solver, gen_fig3(3));
    compare("solve fig3(4)", run_solver, gen_fig3(4));

    std::printf("== strict verifier, repeated ==\n");
    compare("verify fig3(3) x50", run_verify, gen_fig3(3));

    std::printf("== random instances ==\n");
    for (std::uint64_t seed : {7u, 8u, 9u}) {
        Network net = gen_random(10, 24, {Rational(1), Rational(2)}, seed);
        char label[64];
        std::snprintf(label, sizeof label, "solve random(10,24,s%llu)",
                      static_cast<unsigned long long>(seed));
        compare(label, run_solver, net);
    }
    return 0;
}
