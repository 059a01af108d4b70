#include "ccs/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>

#include <CLI11.hpp>

#include "ccs/io.hpp"
#include "ccs/polya.hpp"
#include "ccs/stability.hpp"

namespace ccs {

namespace {

int env_threads(int fallback) {
    const char* v = std::getenv("CCPROVER_THREADS");
    if (!v || !*v) return fallback;
    int t = std::atoi(v);
    return t > 0 ? t : fallback;
}

std::vector<ClassifiedSolution> attach_labels(const ReducedSystem& sys, std::vector<CertifiedSolution> classes) {
    std::vector<ClassifiedSolution> out;
    out.reserve(classes.size());
    for (auto& c : classes) {
        if (c.symmetries.elements.empty()) c.symmetries = symmetry_group_for(sys, c.reduced_box, c.geometry);
        ClassifiedSolution cs;
        cs.label = name_geometry(sys.n(), c.geometry, c.inv, c.symmetries.order());
        cs.sol = std::move(c);
        out.push_back(std::move(cs));
    }
    return out;
}

// Rebuilds certified solutions from stored positions: re-certification,
// geometry tests, invariants.  Solutions failing re-certification are
// dropped and reported through `failures`.
std::vector<CertifiedSolution> rebuild_catalog(const ReducedSystem& sys, const std::vector<Configuration>& configs,
                                               int* failures) {
    IntervalSystem isys = make_interval_system(sys);
    std::vector<CertifiedSolution> out;
    if (failures) *failures = 0;
    for (const auto& cfg : configs) {
        Box box = sys.project(cfg);
        Certificate cert = krawczyk_step(isys, box);
        if (cert.status != CertStatus::UniqueZero) {
            if (failures) ++*failures;
            continue;
        }
        CertifiedSolution s;
        s.reduced_box = refine(isys, box, 10);
        s.config = sys.embed(s.reduced_box);
        s.inv = sys.invariants(s.config);
        s.conds = sys.check_A1_A2(s.config);
        bool collinear = collinearity_test(sys, s.reduced_box);
        bool coplanar = collinear || coplanarity_test(sys, s.reduced_box);
        s.geometry = collinear ? Geometry::Collinear : (coplanar ? Geometry::Planar : Geometry::Spatial);
        out.push_back(std::move(s));
    }
    return out;
}

int cmd_search(int n, int dim, int threads, double min_width, std::uint64_t max_boxes, const std::string& out_dir,
               bool progress) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.dim = dim;
    cfg.threads = env_threads(threads);
    cfg.min_width = min_width;
    cfg.max_boxes = max_boxes;
    cfg.progress = progress;

    SearchOutcome outcome = run_search(cfg);
    ReducedSystem sys(Masses::equal(n), dim);

    auto labeled = attach_labels(sys, outcome.certified);
    std::fputs(render_report(labeled, n, dim).c_str(), stdout);
    std::printf("stats: processed=%llu certified_raw=%llu undecided=%zu wall=%.2fs cpu=%.2fs\n",
                static_cast<unsigned long long>(outcome.stats.processed),
                static_cast<unsigned long long>(outcome.stats.certified_raw), outcome.undecided.size(),
                outcome.stats.wall_seconds, outcome.stats.cpu_seconds);

    std::string base = out_dir.empty() ? std::string(".") : out_dir;
    std::string zeros = base + "/zeros-" + std::to_string(dim) + "D-" + std::to_string(n) + "-1.dat";
    std::string undec = base + "/undecided-" + std::to_string(dim) + "D-" + std::to_string(n) + "-1.dat";
    std::vector<Configuration> zero_cfgs;
    for (const auto& c : labeled) zero_cfgs.push_back(c.sol.config);
    write_solutions(zeros, n, dim, zero_cfgs, false);
    std::vector<Configuration> und_cfgs;
    for (const auto& b : outcome.undecided) und_cfgs.push_back(sys.embed(b));
    write_solutions(undec, n, dim, und_cfgs, true);
    std::printf("wrote %s (%zu solutions), %s (%zu boxes)\n", zeros.c_str(), zero_cfgs.size(), undec.c_str(),
                und_cfgs.size());

    if (!outcome.conclusive()) {
        std::fprintf(stderr, "search inconclusive: %zu undecided boxes%s\n", outcome.undecided.size(),
                     outcome.budget_exhausted ? " (budget exhausted)" : "");
        return 2;
    }
    return 0;
}

int cmd_classify(const std::string& in) {
    SolutionFileData data = read_solutions(in);
    if (data.undecided_kind) {
        std::fprintf(stderr, "classify: %s holds undecided boxes, not solutions\n", in.c_str());
        return 1;
    }
    ReducedSystem sys(Masses::equal(data.n), data.dim);
    int failures = 0;
    auto classes = rebuild_catalog(sys, data.configs, &failures);
    auto labeled = attach_labels(sys, std::move(classes));
    std::fputs(render_report(labeled, data.n, data.dim).c_str(), stdout);
    if (failures) {
        std::fprintf(stderr, "classify: %d stored boxes failed re-certification\n", failures);
        return 1;
    }
    return 0;
}

int cmd_polya(const std::string& in, int dim) {
    SolutionFileData data = read_solutions(in);
    if (data.undecided_kind) {
        std::fprintf(stderr, "polya: %s holds undecided boxes, not solutions\n", in.c_str());
        return 1;
    }
    if (dim != data.dim) {
        std::fprintf(stderr, "polya: file is %dD but --dim %d requested\n", data.dim, dim);
        return 1;
    }
    ReducedSystem sys(Masses::equal(data.n), data.dim);
    int failures = 0;
    auto classes = rebuild_catalog(sys, data.configs, &failures);
    if (failures) {
        std::fprintf(stderr, "polya: %d stored boxes failed re-certification\n", failures);
        return 1;
    }
    std::vector<ClassSigmas> sigmas;
    for (auto& c : classes) {
        SymmetryGroup grp = symmetry_group_for(sys, c.reduced_box, c.geometry);
        sigmas.push_back(class_sigmas(c.geometry, grp));
    }
    TableCounts tc = count_tables(sigmas, data.n);
    for (size_t i = 0; i < tc.per_class.size(); ++i) {
        const char* g = classes[i].geometry == Geometry::Spatial     ? "spatial"
                        : classes[i].geometry == Geometry::Planar    ? "planar"
                        : classes[i].geometry == Geometry::Collinear ? "collinear"
                                                                     : "?";
        std::printf("class %zu (%s): iso=%lld homo=%lld\n", i + 1, g, tc.per_class[i].first, tc.per_class[i].second);
    }
    std::printf("n=%d dim=%d iso=%lld homo=%lld\n", data.n, dim, tc.iso, tc.homo);
    return 0;
}

int cmd_stability(const std::string& in) {
    SolutionFileData data = read_solutions(in);
    if (data.undecided_kind) {
        std::fprintf(stderr, "stability: %s holds undecided boxes, not solutions\n", in.c_str());
        return 1;
    }
    ReducedSystem sys(Masses::equal(data.n), data.dim);
    int failures = 0;
    auto classes = rebuild_catalog(sys, data.configs, &failures);
    if (failures) {
        std::fprintf(stderr, "stability: %d stored boxes failed re-certification\n", failures);
        return 1;
    }
    int k = 0;
    for (const auto& c : classes) {
        ++k;
        if (c.geometry == Geometry::Spatial) {
            std::printf("solution %d: spatial, skipped (rotating-frame scan is planar only)\n", k);
            continue;
        }
        StabilityReport rep = stability_scan(c.config, sys.masses());
        std::printf("solution %d (%s): %s  max Re(lambda)=%.6g  zero modes=%d\n", k,
                    c.geometry == Geometry::Collinear ? "collinear" : "planar",
                    rep.verdict == StabilityVerdict::Unstable ? "UNSTABLE" : "not decided", rep.max_real_part,
                    rep.near_zero_count);
    }
    return 0;
}

int cmd_verify(const std::string& in) {
    SolutionFileData data = read_solutions(in);
    ReducedSystem sys(Masses::equal(data.n), data.dim);
    IntervalSystem isys = make_interval_system(sys);
    int bad = 0;
    for (size_t i = 0; i < data.configs.size(); ++i) {
        Box box = sys.project(data.configs[i]);
        Certificate cert = krawczyk_step(isys, box);
        if (cert.status != CertStatus::UniqueZero) {
            std::fprintf(stderr, "verify: stored box %zu failed certification\n", i + 1);
            ++bad;
        }
    }
    std::printf("verify: %zu boxes, %d failures\n", data.configs.size(), bad);
    return bad == 0 ? 0 : 1;
}

} // namespace

int cli(const std::vector<std::string>& args) {
    CLI::App app{"rigorous census of equal-mass central configurations"};
    app.require_subcommand(1);

    int n = 4, dim = 3, threads = 1;
    double min_width = 1e-8;
    std::uint64_t max_boxes = 0;
    std::string out_dir = ".";
    bool progress = false;
    auto* search = app.add_subcommand("search", "enumerate and certify all classes for (n, dim)");
    search->add_option("--n", n, "number of bodies (>= 4)")->required()->check(CLI::Range(4, 8));
    search->add_option("--dim", dim, "2 or 3")->check(CLI::IsMember({2, 3}));
    search->add_option("--threads", threads, "worker count (env CCPROVER_THREADS overrides)");
    search->add_option("--min-width", min_width, "bisection floor in reduced coordinates");
    search->add_option("--max-boxes", max_boxes, "processing budget (0 = unlimited)");
    search->add_option("--out", out_dir, "output directory for .dat files");
    search->add_flag("--progress", progress, "periodic progress to stderr");

    std::string in_classify, in_polya, in_stab, in_verify;
    int polya_dim = 3;
    auto* classify = app.add_subcommand("classify", "geometry and symmetry report for a solution file");
    classify->add_option("--in", in_classify, "solution file")->required();
    auto* polya = app.add_subcommand("polya", "labeling counts under O(d) and SO(d)");
    polya->add_option("--in", in_polya, "solution file")->required();
    polya->add_option("--dim", polya_dim, "2 or 3")->check(CLI::IsMember({2, 3}));
    auto* stability = app.add_subcommand("stability", "rotating-frame spectra of planar solutions");
    stability->add_option("--in", in_stab, "solution file")->required();
    auto* verify = app.add_subcommand("verify", "re-certify every stored box");
    verify->add_option("--in", in_verify, "solution file")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (search->parsed()) return cmd_search(n, dim, threads, min_width, max_boxes, out_dir, progress);
        if (classify->parsed()) return cmd_classify(in_classify);
        if (polya->parsed()) return cmd_polya(in_polya, polya_dim);
        if (stability->parsed()) return cmd_stability(in_stab);
        if (verify->parsed()) return cmd_verify(in_verify);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

} // namespace ccs
