#include "ccs/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <ctime>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccs {

Box initial_domain(const SearchConfig& cfg) {
    ReducedSystem sys(Masses::equal(cfg.n), cfg.dim);
    const double R = cfg.n - 1.0;
    Box b(sys.reduced_dim());
    b[0] = Interval(-R, R);  // x_0
    b[1] = Interval(0.0, R); // y_0
    for (int i = 1; i <= cfg.n - 3; ++i) {
        b[sys.coord_index(i, 0)] = Interval(-R, R);
        b[sys.coord_index(i, 1)] = Interval(-R, R);
        if (cfg.dim == 3) b[sys.coord_index(i, 2)] = (i == 1) ? Interval(0.0, R) : Interval(-R, R);
    }
    b[sys.reduced_dim() - 1] = Interval(0.5, R);
    return b;
}

namespace {

// ---------------------------------------------------------------------------
// Exclusion tests

// Bodies whose mutual squared-distance enclosures reach zero form clusters.
// At a zero of the full system the cluster identity
//   sum_{i in S} m_i (F_i | q_i - c_S) = 0
// holds, while the within-cluster binding term -sum m_i m_j / r_ij diverges
// as the cluster shrinks; an upper bound below zero excludes the box.
bool cluster_excludes(const ReducedSystem& sys, const Configuration& q,
                      const std::array<std::array<bool, kMaxBodies>, kMaxBodies>& straddle,
                      const std::array<std::array<Interval, kMaxBodies>, kMaxBodies>& s2) {
    const int n = sys.n(), d = sys.space_dim();
    const Masses& ms = sys.masses();

    std::array<int, kMaxBodies> comp;
    comp.fill(-1);
    int ncomp = 0;
    for (int seed = 0; seed < n; ++seed) {
        if (comp[seed] >= 0) continue;
        // flood fill
        std::array<int, kMaxBodies> stk;
        int top = 0;
        stk[top++] = seed;
        comp[seed] = ncomp;
        while (top) {
            int v = stk[--top];
            for (int w = 0; w < n; ++w)
                if (comp[w] < 0 && straddle[v][w]) {
                    comp[w] = ncomp;
                    stk[top++] = w;
                }
        }
        ++ncomp;
    }

    for (int cid = 0; cid < ncomp; ++cid) {
        std::array<int, kMaxBodies> mem;
        int k = 0;
        for (int i = 0; i < n; ++i)
            if (comp[i] == cid) mem[k++] = i;
        if (k < 2) continue;

        Interval msum(0.0);
        BodyPos mq{Interval(0.0), Interval(0.0), Interval(0.0)};
        for (int a = 0; a < k; ++a) {
            msum += ms.m[mem[a]];
            for (int c = 0; c < d; ++c) mq[c] += ms.m[mem[a]] * q.q[mem[a]][c];
        }
        BodyPos cs;
        for (int c = 0; c < d; ++c) cs[c] = mq[c] / msum;

        Interval term1(0.0);
        for (int a = 0; a < k; ++a) {
            int i = mem[a];
            for (int c = 0; c < d; ++c) term1 += ms.m[i] * (q.q[i][c] * (q.q[i][c] - cs[c]));
        }

        double bind_lo = 0.0;  // lower bound of sum m_i m_j / r_ij over cluster pairs
        bool infinite = false;
        for (int a = 0; a < k && !infinite; ++a)
            for (int b = a + 1; b < k; ++b) {
                int i = mem[a], j = mem[b];
                const Interval& s = s2[i][j];
                Interval mm = ms.m[i] * ms.m[j];
                if (s.lo > 0.0) {
                    bind_lo = rnd::add_down(bind_lo, (mm / sqrt(s)).lo);
                } else if (s.hi == 0.0) {
                    infinite = true;
                    break;
                } else {
                    bind_lo = rnd::add_down(bind_lo, rnd::div_down(mm.lo, rnd::sqrt_up(s.hi)));
                }
            }
        if (infinite) return true;

        Interval cross(0.0);
        for (int a = 0; a < k; ++a) {
            int i = mem[a];
            for (int o = 0; o < n; ++o) {
                if (comp[o] == cid) continue;
                const Interval& s = s2[i][o];
                Interval inv_r3 = Interval(1.0) / (s * sqrt(s));
                Interval dot(0.0);
                for (int c = 0; c < d; ++c) dot += (q.q[i][c] - q.q[o][c]) * (q.q[i][c] - cs[c]);
                cross += ms.m[i] * ms.m[o] * dot * inv_r3;
            }
        }

        double g_up = rnd::sub_up(rnd::sub_up(term1.hi, bind_lo), cross.lo);
        if (g_up < 0.0) return true;
    }
    return false;
}

} // namespace

namespace {
// temporary experiment knobs
struct Knobs {
    bool gate = std::getenv("CCS_EXP_NOGATE") == nullptr;
    bool compb = std::getenv("CCS_EXP_NOCOM") == nullptr;
    bool smear = std::getenv("CCS_EXP_NOSMEAR") == nullptr;
    double gate_slack = std::getenv("CCS_EXP_GATESLACK") ? atof(std::getenv("CCS_EXP_GATESLACK")) : 0.7;
    double smear_frac = std::getenv("CCS_EXP_SMEARFRAC") ? atof(std::getenv("CCS_EXP_SMEARFRAC")) : 0.25;
    int passes = std::getenv("CCS_EXP_PASSES") ? atoi(std::getenv("CCS_EXP_PASSES")) : 2;
};
const Knobs& knobs() {
    static Knobs k;
    return k;
}
} // namespace

PruneResult prune(const ReducedSystem& sys, const Box& input) {
    PruneResult res;
    res.box = input;
    const int n = sys.n(), d = sys.space_dim(), rd = sys.reduced_dim();
    const Masses& ms = sys.masses();

    // Decreasing-x chain over the non-pinned bodies, ending at body n-1.
    std::array<int, kMaxBodies> chain;
    int chain_len = 0;
    for (int i = 2; i <= n - 3; ++i) chain[chain_len++] = i;
    chain[chain_len++] = n - 1;

    Box& box = res.box;
    Configuration q;

    for (int pass = 0; pass < knobs().passes; ++pass) {
        q = sys.embed(box);
        const Interval& xlast = box[rd - 1];
        const Interval x2 = sqr(xlast);
        const Interval y0sq = sqr(box[1]);

        // Certain violation of the dominance constraints, body n-1 included.
        for (int i = 0; i < n; ++i) {
            Interval s(0.0), dist2(0.0);
            for (int c = 0; c < d; ++c) s += sqr(q.q[i][c]);
            dist2 = sqr(q.q[i][1]);
            if (d == 3) dist2 += sqr(q.q[i][2]);
            if (s.lo > x2.hi || dist2.lo > y0sq.hi) {
                res.reason = DiscardReason::Constraint;
                return res;
            }
            if (q.q[i][0].mig() > xlast.hi || q.q[i][1].mig() > box[1].hi) {
                res.reason = DiscardReason::Constraint;
                return res;
            }
            if (d == 3 && q.q[i][2].mig() > box[sys.coord_index(1, 2)].hi) {
                res.reason = DiscardReason::Constraint;
                return res;
            }
        }
        for (int c = 0; c + 1 < chain_len; ++c) {
            if (q.q[chain[c]][0].hi < q.q[chain[c + 1]][0].lo) {
                res.reason = DiscardReason::Constraint;
                return res;
            }
        }

        // Tightening: intersect coordinates with their constraint-feasible
        // ranges.  Every cut removes only points that certainly violate a
        // constraint at every completion.
        bool changed = false;
        auto clamp = [&](int idx, const Interval& allowed) -> bool {
            auto r = intersect(box[idx], allowed);
            if (!r) return false;
            if (!(box[idx] == *r)) {
                box[idx] = *r;
                changed = true;
            }
            return true;
        };
        auto fail = [&]() {
            res.reason = DiscardReason::EmptyTighten;
            return res;
        };

        const double xh = xlast.hi;
        // y_0 below the furthest-from-axis distance of any body.
        double y0_floor = 0.0;
        for (int i = 0; i < n; ++i) {
            Interval dist2 = sqr(q.q[i][1]);
            if (d == 3) dist2 += sqr(q.q[i][2]);
            y0_floor = std::max(y0_floor, rnd::sqrt_down(dist2.lo));
        }
        if (!clamp(1, Interval(y0_floor, xh))) return fail();
        double x_floor = 0.5;
        for (int i = 0; i < n; ++i) {
            Interval s(0.0);
            for (int c = 0; c < d; ++c) s += sqr(q.q[i][c]);
            x_floor = std::max(x_floor, rnd::sqrt_down(s.lo));
        }
        if (!clamp(rd - 1, Interval(x_floor, xlast.hi))) return fail();

        const double yh = box[1].hi;
        if (!clamp(0, Interval(-xh, xh))) return fail();
        for (int i = 1; i <= n - 3; ++i) {
            if (!clamp(sys.coord_index(i, 0), Interval(-xh, xh))) return fail();
            if (!clamp(sys.coord_index(i, 1), Interval(-yh, yh))) return fail();
            if (d == 3) {
                double zh = (i == 1) ? std::min(yh, xh) : box[sys.coord_index(1, 2)].hi;
                double zl = (i == 1) ? 0.0 : -zh;
                if (!clamp(sys.coord_index(i, 2), Interval(zl, zh))) return fail();
            }
        }
        // x-chain ordering between adjacent free bodies.
        for (int c = 0; c + 1 < chain_len; ++c) {
            int a = chain[c], b = chain[c + 1];
            if (b != n - 1) {
                if (!clamp(sys.coord_index(a, 0), Interval(q.q[b][0].lo, xh))) return fail();
                if (!clamp(sys.coord_index(b, 0), Interval(-xh, q.q[a][0].hi))) return fail();
            } else {
                if (!clamp(sys.coord_index(a, 0), Interval(q.q[b][0].lo, xh))) return fail();
            }
        }

        // Center-of-mass back-propagation: q_{n-1} is confined by the same
        // dominance bounds, which constrains every free coordinate through
        // the linear relation.
        q = sys.embed(box);
        if (knobs().compb)
        for (int c = 0; c < d; ++c) {
            Interval allowed_last(0.0);
            if (c == 0) {
                double hi = xlast.hi;
                if (chain_len >= 2) hi = std::min(hi, q.q[chain[chain_len - 2]][0].hi);
                allowed_last = Interval(-xlast.hi, hi);
            } else if (c == 1) {
                allowed_last = Interval(-box[1].hi, box[1].hi);
            } else {
                double zh = box[sys.coord_index(1, 2)].hi;
                allowed_last = Interval(-zh, zh);
            }
            auto tgt = intersect(allowed_last, q.q[n - 1][c]);
            if (!tgt) return fail();
            for (int b = 0; b <= n - 2; ++b) {
                if (b == 0 && c >= 2) continue;
                if (b == n - 2 && c >= 1) continue;
                Interval rhs = -(ms.m[n - 1] * (*tgt));
                for (int i = 0; i <= n - 2; ++i)
                    if (i != b) rhs -= ms.m[i] * q.q[i][c];
                if (!clamp(sys.coord_index(b, c), rhs / ms.m[b])) return fail();
            }
        }

        if (!changed) break;
    }

    // Collision handling and the residual sign test.
    q = sys.embed(box);
    std::array<std::array<bool, kMaxBodies>, kMaxBodies> straddle{};
    std::array<std::array<Interval, kMaxBodies>, kMaxBodies> s2;
    bool any_straddle = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Interval s(0.0);
            for (int c = 0; c < d; ++c) s += sqr(q.q[i][c] - q.q[j][c]);
            s2[i][j] = s2[j][i] = s;
            if (s.lo <= 0.0) {
                straddle[i][j] = straddle[j][i] = true;
                any_straddle = true;
            }
        }

    if (any_straddle) {
        if (cluster_excludes(sys, q, straddle, s2)) {
            res.reason = DiscardReason::Cluster;
            return res;
        }
        res.keep = true;
        res.collision_free = false;
        return res;
    }

    Box resid;
    if (!sys.try_residual(box, resid)) {  // unreachable: pairs checked above
        res.keep = true;
        res.collision_free = false;
        return res;
    }
    res.newton_plausible = true;
    for (int i = 0; i < resid.dim(); ++i) {
        if (resid[i].excludes_zero()) {
            res.reason = DiscardReason::Residual;
            return res;
        }
        double m = std::fabs(resid[i].mid());
        if (m > knobs().gate_slack * 0.5 * resid[i].width()) res.newton_plausible = false;
    }

    res.keep = true;
    res.collision_free = true;
    return res;
}

namespace {

struct Scale {
    std::array<double, Box::kMaxDim> w{};
    int dim = 0;
};

double scaled_width(const Box& b, const Scale& sc, int* axis) {
    double best = -1.0;
    int bi = 0;
    for (int i = 0; i < b.dim(); ++i) {
        double r = b[i].width() / sc.w[i];
        if (r > best) {
            best = r;
            bi = i;
        }
    }
    if (axis) *axis = bi;
    return best;
}

// Bisection axis: the widest scaled coordinate, upgraded to the largest
// smear |J_ij| w_j among coordinates of comparable scaled width.
int choose_axis(const ReducedSystem& sys, const Box& b, const Scale& sc, bool collision_free) {
    int widest = 0;
    double wmax = -1.0;
    for (int i = 0; i < b.dim(); ++i) {
        double r = b[i].width() / sc.w[i];
        if (r > wmax) {
            wmax = r;
            widest = i;
        }
    }
    if (!knobs().smear || !collision_free) return widest;
    double jac[Box::kMaxDim * Box::kMaxDim];
    if (!sys.jacobian_midpoint(b, jac)) return widest;
    const int rd = b.dim();
    int best = widest;
    double best_score = -1.0;
    for (int j = 0; j < rd; ++j) {
        if (b[j].width() / sc.w[j] < knobs().smear_frac * wmax) continue;
        double colmax = 0.0;
        for (int i = 0; i < rd; ++i) colmax = std::max(colmax, std::fabs(jac[i * rd + j]));
        double score = colmax * b[j].width();
        if (score > best_score) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

Box inflate(const Box& b, double theta) {
    Box r = b;
    for (int i = 0; i < b.dim(); ++i) {
        double pad = theta * 0.5 * (b[i].hi - b[i].lo);
        r[i] = Interval(b[i].lo - pad, b[i].hi + pad);
    }
    return r;
}

struct StepOut {
    int n_children = 0;
    Box child[2];
    bool certified = false;
    Box cert_box;
    bool undecided = false;
    Box und_box;
    bool discarded = false;
    DiscardReason reason = DiscardReason::Constraint;
    Box disc_box;
    bool ran_krawczyk = false;
};

StepOut process_box(const ReducedSystem& sys, const IntervalSystem& isys, const SearchConfig& cfg,
                    const Scale& sc, Box box, bool keep_discards) {
    StepOut out;
    PruneResult pr = prune(sys, box);
    if (!pr.keep) {
        out.discarded = true;
        out.reason = pr.reason;
        if (keep_discards) out.disc_box = box;
        return out;
    }
    Box cur = pr.box;
    int axis = 0;
    double relw = scaled_width(cur, sc, &axis);
    double absw = cur.max_width();

    bool gate_ok = !knobs().gate || pr.newton_plausible || absw <= cfg.min_width;
    if (pr.collision_free && gate_ok && (relw <= cfg.certify_rel_width || absw <= cfg.min_width)) {
        out.ran_krawczyk = true;
        Box infl = inflate(cur, 0.5);
        Certificate cert = krawczyk_step(isys, infl);
        if (cert.status == CertStatus::UniqueZero) {
            auto seed = intersect(infl, cert.K_image);
            out.certified = true;
            out.cert_box = refine(isys, seed ? *seed : infl, 40);
            return out;
        }
        if (cert.status == CertStatus::NoZero) {
            out.discarded = true;
            out.reason = DiscardReason::KrawczykNoZero;
            if (keep_discards) out.disc_box = box;
            return out;
        }
        // Unknown: zeros of cur lie inside K(infl) as well.
        auto tight = intersect(cur, cert.K_image);
        if (!tight) {
            out.discarded = true;
            out.reason = DiscardReason::KrawczykNoZero;
            if (keep_discards) out.disc_box = box;
            return out;
        }
        cur = *tight;
        relw = scaled_width(cur, sc, &axis);
        absw = cur.max_width();
    }

    if (absw <= cfg.min_width) {
        out.undecided = true;
        out.und_box = cur;
        return out;
    }
    axis = choose_axis(sys, cur, sc, pr.collision_free);
    auto halves = cur.bisect(axis);
    out.n_children = 2;
    out.child[0] = halves.first;
    out.child[1] = halves.second;
    return out;
}

struct ProgressMeter {
    std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
    std::uint64_t last_processed = 0;

    void maybe_print(const SearchStats& st, size_t queue_depth) {
        auto now = std::chrono::steady_clock::now();
        double dt = std::chrono::duration<double>(now - last).count();
        if (dt < 2.0) return;
        std::fprintf(stderr, "[search] processed=%llu queue=%zu certified=%llu boxes/s=%.0f\n",
                     static_cast<unsigned long long>(st.processed), queue_depth,
                     static_cast<unsigned long long>(st.certified_raw), (st.processed - last_processed) / dt);
        last = now;
        last_processed = st.processed;
    }
};

void apply_step(const StepOut& so, std::vector<Box>& stack, std::vector<Box>& raw_certified,
                std::vector<Box>& undecided, SearchStats& st, const SearchConfig& cfg) {
    if (so.ran_krawczyk) ++st.krawczyk_calls;
    if (so.discarded) {
        switch (so.reason) {
            case DiscardReason::Constraint: ++st.discarded_constraint; break;
            case DiscardReason::EmptyTighten: ++st.discarded_empty_tighten; break;
            case DiscardReason::Cluster: ++st.discarded_cluster; break;
            case DiscardReason::Residual: ++st.discarded_residual; break;
            case DiscardReason::KrawczykNoZero: ++st.discarded_krawczyk; break;
        }
        if (cfg.on_discard) cfg.on_discard(so.disc_box);
        return;
    }
    if (so.certified) {
        raw_certified.push_back(so.cert_box);
        ++st.certified_raw;
        return;
    }
    if (so.undecided) {
        undecided.push_back(so.und_box);
        return;
    }
    for (int i = 0; i < so.n_children; ++i) stack.push_back(so.child[i]);
}

bool midpoint_less(const Box& a, const Box& b) {
    for (int i = 0; i < a.dim(); ++i) {
        double ma = a[i].mid(), mb = b[i].mid();
        if (ma != mb) return ma < mb;
    }
    return false;
}

} // namespace

std::vector<CertifiedSolution> unify(std::vector<CertifiedSolution> sols, const ReducedSystem& sys) {
    std::sort(sols.begin(), sols.end(),
              [](const CertifiedSolution& a, const CertifiedSolution& b) { return midpoint_less(a.reduced_box, b.reduced_box); });
    std::vector<CertifiedSolution> classes;
    for (auto& s : sols) {
        bool merged = false;
        for (auto& c : classes) {
            if (c.geometry != s.geometry) continue;
            if (!c.inv.U.intersects(s.inv.U) || !c.inv.I.intersects(s.inv.I)) continue;
            if (!find_congruences(sys, c.reduced_box, c.geometry, s.reduced_box, s.geometry).empty() ||
                !find_congruences(sys, s.reduced_box, s.geometry, c.reduced_box, c.geometry).empty()) {
                merged = true;
                break;
            }
        }
        if (!merged) classes.push_back(std::move(s));
    }
    return classes;
}

SearchOutcome run_search(const SearchConfig& cfg) {
    ReducedSystem sys(Masses::equal(cfg.n), cfg.dim);
    IntervalSystem isys = make_interval_system(sys);
    SearchOutcome outcome;
    SearchStats& st = outcome.stats;

    auto wall0 = std::chrono::steady_clock::now();
    std::clock_t cpu0 = std::clock();

    Box dom = initial_domain(cfg);
    Scale sc;
    sc.dim = dom.dim();
    for (int i = 0; i < dom.dim(); ++i) sc.w[i] = std::max(dom[i].width(), 1e-300);

    std::vector<Box> stack{dom};
    std::vector<Box> raw_certified;
    std::vector<Box> undecided;
    ProgressMeter meter;
    const bool keep_discards = static_cast<bool>(cfg.on_discard);

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        while (!stack.empty()) {
            if (cfg.max_boxes && st.processed >= cfg.max_boxes) {
                outcome.budget_exhausted = true;
                break;
            }
            Box b = stack.back();
            stack.pop_back();
            ++st.processed;
            StepOut so = process_box(sys, isys, cfg, sc, b, keep_discards);
            apply_step(so, stack, raw_certified, undecided, st, cfg);
            st.peak_queue = std::max<std::uint64_t>(st.peak_queue, stack.size());
            if (cfg.progress && (st.processed & 0x3fff) == 0) meter.maybe_print(st, stack.size());
        }
    } else {
        std::vector<Box> batch;
        std::vector<StepOut> results;
        while (!stack.empty()) {
            if (cfg.max_boxes && st.processed >= cfg.max_boxes) {
                outcome.budget_exhausted = true;
                break;
            }
            size_t want = std::min<size_t>(stack.size(), static_cast<size_t>(64) * threads);
            if (cfg.max_boxes) want = std::min<size_t>(want, cfg.max_boxes - st.processed);
            batch.assign(stack.end() - want, stack.end());
            stack.resize(stack.size() - want);
            results.assign(want, StepOut{});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#endif
            for (long i = 0; i < static_cast<long>(want); ++i)
                results[i] = process_box(sys, isys, cfg, sc, batch[i], keep_discards);
            st.processed += want;
            for (size_t i = 0; i < want; ++i) apply_step(results[i], stack, raw_certified, undecided, st, cfg);
            st.peak_queue = std::max<std::uint64_t>(st.peak_queue, stack.size());
            if (cfg.progress) meter.maybe_print(st, stack.size());
        }
    }
    if (outcome.budget_exhausted) {
        for (auto& b : stack) undecided.push_back(b);
        stack.clear();
    }

    // Deterministic post-processing regardless of traversal order.
    std::sort(raw_certified.begin(), raw_certified.end(), midpoint_less);

    std::vector<CertifiedSolution> sols;
    for (const Box& b : raw_certified) {
        CertifiedSolution s;
        s.reduced_box = b;
        s.config = sys.embed(b);
        s.inv = sys.invariants(s.config);
        s.conds = sys.check_A1_A2(s.config);
        bool collinear = collinearity_test(sys, b);
        bool coplanar = collinear || coplanarity_test(sys, b);
        s.geometry = collinear ? Geometry::Collinear : (coplanar ? Geometry::Planar : Geometry::Spatial);
        // Reduced-to-full equivalence: coplanar solutions need A1, spatial
        // ones A1 and A2.  Anything unconfirmed is reported undecided.
        bool genuine = (s.conds.a1 == CertBool::True) &&
                       (coplanar || s.conds.a2 == CertBool::True);
        if (!genuine) {
            undecided.push_back(b);
            continue;
        }
        sols.push_back(std::move(s));
    }

    outcome.certified = unify(std::move(sols), sys);
    std::sort(outcome.certified.begin(), outcome.certified.end(),
              [](const CertifiedSolution& a, const CertifiedSolution& b) {
                  if (a.inv.U.mid() != b.inv.U.mid()) return a.inv.U.mid() < b.inv.U.mid();
                  return midpoint_less(a.reduced_box, b.reduced_box);
              });
    outcome.undecided = std::move(undecided);

    st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    st.cpu_seconds = static_cast<double>(std::clock() - cpu0) / CLOCKS_PER_SEC;
    return outcome;
}

} // namespace ccs
