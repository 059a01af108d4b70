// Serial reference engine vs the OpenMP batch engine on the same census,
// with a consistency check on the resulting class sets.

#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ccs/search.hpp"

namespace {

struct RunResult {
    size_t classes = 0;
    size_t undecided = 0;
    double wall = 0.0;
    std::string key;
};

RunResult run_once(int n, int dim, int threads) {
    ccs::SearchConfig cfg;
    cfg.n = n;
    cfg.dim = dim;
    cfg.threads = threads;
    ccs::SearchOutcome out = ccs::run_search(cfg);
    RunResult r;
    r.classes = out.certified.size();
    r.undecided = out.undecided.size();
    r.wall = out.stats.wall_seconds;
    char buf[64];
    for (const auto& c : out.certified) {
        std::snprintf(buf, sizeof buf, "%.9f/%.9f;", c.inv.U.mid(), c.inv.x_last.mid());
        r.key += buf;
    }
    return r;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 4;
    int dim = argc > 2 ? std::atoi(argv[2]) : 3;
    int max_threads = 4;
#ifdef _OPENMP
    max_threads = std::max(4, omp_get_max_threads());
#endif

    std::printf("census benchmark: n=%d dim=%d\n", n, dim);
    RunResult serial = run_once(n, dim, 1);
    std::printf("%8s  %10s  %8s  %9s\n", "threads", "wall [s]", "classes", "speedup");
    std::printf("%8s  %10.3f  %8zu  %9s\n", "serial", serial.wall, serial.classes, "1.00x");

    for (int t = 2; t <= max_threads; t *= 2) {
        RunResult par = run_once(n, dim, t);
        bool same = par.key == serial.key && par.undecided == serial.undecided;
        std::printf("%8d  %10.3f  %8zu  %8.2fx  %s\n", t, par.wall, par.classes,
                    par.wall > 0 ? serial.wall / par.wall : 0.0, same ? "" : "MISMATCH");
        if (!same) return 1;
    }
    return 0;
}
