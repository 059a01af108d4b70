#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "analytic.hpp"
#include "ccs/search.hpp"

using namespace ccs;

namespace {

int count_geometry(const SearchOutcome& out, Geometry g) {
    int k = 0;
    for (const auto& c : out.certified)
        if (c.geometry == g) ++k;
    return k;
}

} // namespace

TEST_CASE("initial domain shape") {
    SUBCASE("n=4 dim=3") {
        SearchConfig cfg;
        cfg.n = 4;
        cfg.dim = 3;
        Box b = initial_domain(cfg);
        CHECK(b.dim() == 6);
        CHECK(b[5] == Interval(0.5, 3.0));  // x_2
        CHECK(b[1] == Interval(0.0, 3.0));  // y_0
        CHECK(b[4] == Interval(0.0, 3.0));  // z_1
        CHECK(b[0] == Interval(-3.0, 3.0));
    }
    SUBCASE("n=5 dim=3") {
        SearchConfig cfg;
        cfg.n = 5;
        cfg.dim = 3;
        Box b = initial_domain(cfg);
        CHECK(b.dim() == 9);
        CHECK(b[8] == Interval(0.5, 4.0));  // x_3
        CHECK(b[7] == Interval(-4.0, 4.0)); // z_2 unconstrained below
    }
    SUBCASE("n=4 dim=2") {
        SearchConfig cfg;
        cfg.n = 4;
        cfg.dim = 2;
        Box b = initial_domain(cfg);
        CHECK(b.dim() == 5);
        CHECK(b[4] == Interval(0.5, 3.0));
    }
}

TEST_CASE("prune") {
    ReducedSystem sys6(Masses::equal(6), 3);
    SUBCASE("certain violation of the x-ordering chain discards") {
        SearchConfig cfg;
        cfg.n = 6;
        cfg.dim = 3;
        Box b = initial_domain(cfg);
        // x_2 certainly below x_3
        b[sys6.coord_index(2, 0)] = Interval(-1.0, -0.5);
        b[sys6.coord_index(3, 0)] = Interval(0.5, 1.0);
        PruneResult pr = prune(sys6, b);
        CHECK(!pr.keep);
        CHECK(pr.reason == DiscardReason::Constraint);
    }
    ReducedSystem sys4(Masses::equal(4), 3);
    SUBCASE("a box around the tetrahedron solution is kept") {
        Box b = testutil::pad_box(testutil::tetra4_reduced(), 0.01);
        PruneResult pr = prune(sys4, b);
        CHECK(pr.keep);
        CHECK(pr.collision_free);
        CHECK(pr.box.contains(testutil::tetra4_reduced()));
    }
    SUBCASE("y-dominance violation discards") {
        SearchConfig cfg;
        cfg.n = 4;
        cfg.dim = 3;
        Box b = initial_domain(cfg);
        b[1] = Interval(0.0, 0.1);                   // y_0 small
        b[sys4.coord_index(1, 1)] = Interval(0.5, 0.8);  // |y_1| certainly larger
        PruneResult pr = prune(sys4, b);
        CHECK(!pr.keep);
    }
    SUBCASE("distance dominance excludes configurations beyond x_{n-2}") {
        SearchConfig cfg;
        cfg.n = 4;
        cfg.dim = 3;
        Box b = initial_domain(cfg);
        b[5] = Interval(0.5, 0.6);                       // x_2
        b[sys4.coord_index(1, 0)] = Interval(2.0, 2.2);  // |q_1| > x_2 certainly
        b[sys4.coord_index(1, 1)] = Interval(2.0, 2.2);
        PruneResult pr = prune(sys4, b);
        CHECK(!pr.keep);
    }
    SUBCASE("collision straddling keeps the box for bisection") {
        Box b(sys4.reduced_dim());
        b[0] = Interval(-0.05, 0.05);
        b[1] = Interval(0.55, 0.65);
        b[2] = Interval(-0.05, 0.05);
        b[3] = Interval(0.55, 0.65);  // bodies 0 and 1 may coincide
        b[4] = Interval(-0.05, 0.05);
        b[5] = Interval(0.9, 1.0);
        PruneResult pr = prune(sys4, b);
        if (pr.keep) CHECK(!pr.collision_free);
    }
}

TEST_CASE("four-body spatial census") {
    SearchConfig cfg;
    cfg.n = 4;
    cfg.dim = 3;

    // soundness hook: no discarded box may contain a known solution
    auto tetra = testutil::tetra4_reduced();
    auto square = testutil::square4_reduced3d();
    auto line = testutil::collinear4_reduced3d();
    long violations = 0;
    cfg.on_discard = [&](const Box& b) {
        if (b.contains(tetra) || b.contains(square) || b.contains(line)) ++violations;
    };

    SearchOutcome out = run_search(cfg);
    CHECK(out.conclusive());
    CHECK(out.undecided.empty());
    REQUIRE(out.certified.size() == 5);
    CHECK(count_geometry(out, Geometry::Spatial) == 1);
    CHECK(count_geometry(out, Geometry::Planar) == 3);
    CHECK(count_geometry(out, Geometry::Collinear) == 1);
    CHECK(violations == 0);

    for (const auto& c : out.certified) {
        CHECK(c.conds.a1 == CertBool::True);
        if (c.geometry == Geometry::Spatial) {
            CHECK(c.conds.a2 == CertBool::True);
            // the unique spatial class is the regular tetrahedron
            CHECK(c.inv.x_last.contains(std::sqrt(3.0 / 8.0)));
        }
    }
}

TEST_CASE("four-body planar census") {
    SearchConfig cfg;
    cfg.n = 4;
    cfg.dim = 2;
    SearchOutcome out = run_search(cfg);
    CHECK(out.conclusive());
    CHECK(out.certified.size() == 4);
    CHECK(count_geometry(out, Geometry::Collinear) == 1);
    CHECK(count_geometry(out, Geometry::Planar) == 3);
}

TEST_CASE("single-threaded runs are bit-reproducible") {
    SearchConfig cfg;
    cfg.n = 4;
    cfg.dim = 2;
    SearchOutcome a = run_search(cfg);
    SearchOutcome b = run_search(cfg);
    CHECK(a.stats.processed == b.stats.processed);
    CHECK(a.stats.discarded_residual == b.stats.discarded_residual);
    CHECK(a.stats.krawczyk_calls == b.stats.krawczyk_calls);
    REQUIRE(a.certified.size() == b.certified.size());
    for (size_t i = 0; i < a.certified.size(); ++i)
        CHECK(a.certified[i].reduced_box == b.certified[i].reduced_box);
}

TEST_CASE("parallel runs produce the identical class set") {
    SearchConfig cfg;
    cfg.n = 4;
    cfg.dim = 2;
    SearchOutcome serial = run_search(cfg);
    cfg.threads = 4;
    SearchOutcome parallel = run_search(cfg);
    CHECK(serial.stats.processed == parallel.stats.processed);
    REQUIRE(serial.certified.size() == parallel.certified.size());
    for (size_t i = 0; i < serial.certified.size(); ++i)
        CHECK(serial.certified[i].reduced_box == parallel.certified[i].reduced_box);
    CHECK(serial.undecided.size() == parallel.undecided.size());
}

TEST_CASE("box budget flags the run inconclusive") {
    SearchConfig cfg;
    cfg.n = 4;
    cfg.dim = 3;
    cfg.max_boxes = 2000;
    SearchOutcome out = run_search(cfg);
    CHECK(out.budget_exhausted);
    CHECK(!out.conclusive());
    CHECK(out.stats.processed <= 2000);
    CHECK(!out.undecided.empty());
}

TEST_CASE("unify merges duplicates and symmetric images") {
    ReducedSystem sys(Masses::equal(4), 3);
    auto mk = [&](const std::vector<double>& approx) {
        auto b = testutil::certify_near(sys, approx);
        REQUIRE(b.has_value());
        CertifiedSolution s;
        s.reduced_box = *b;
        s.config = sys.embed(*b);
        s.inv = sys.invariants(s.config);
        s.conds = sys.check_A1_A2(s.config);
        s.geometry = collinearity_test(sys, *b)  ? Geometry::Collinear
                     : coplanarity_test(sys, *b) ? Geometry::Planar
                                                 : Geometry::Spatial;
        return s;
    };
    const double s = std::cbrt((1.0 + 2.0 * std::sqrt(2.0)) / 16.0);

    SUBCASE("overlapping certificates of one zero collapse") {
        auto a = mk(testutil::tetra4_reduced());
        auto b = mk(testutil::tetra4_reduced());
        auto classes = unify({a, b}, sys);
        CHECK(classes.size() == 1);
    }
    SUBCASE("relabeled square copies collapse") {
        auto a = mk(testutil::square4_reduced3d());
        auto b = mk({0.0, s, 0.0, -s, 0.0, s});  // bodies 1 and 3 exchanged
        auto classes = unify({a, b}, sys);
        CHECK(classes.size() == 1);
    }
    SUBCASE("distinct classes stay apart") {
        auto a = mk(testutil::tetra4_reduced());
        auto b = mk(testutil::square4_reduced3d());
        auto c = mk(testutil::collinear4_reduced3d());
        auto classes = unify({a, b, c}, sys);
        CHECK(classes.size() == 3);
    }
}
