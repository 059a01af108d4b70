#include "ccs/krawczyk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ccs/linalg.hpp"
#include "ccs/model.hpp"

namespace ccs {

namespace {

Matrix midpoint_matrix(const IntervalMatrix& m) {
    Matrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).mid();
    return r;
}

} // namespace

namespace {

// Rigorous point-matrix times interval-vector row product in
// midpoint-radius form: three plain dot products plus an error pad
// covering every floating-point rounding (Rump's trick).
struct MidRad {
    double mid, rad;
};

inline MidRad point_dot_midrad(const double* c, const double* mid, const double* rad, int n) {
    double sm = 0.0, sr = 0.0, sa = 0.0;
    for (int l = 0; l < n; ++l) {
        sm = std::fma(c[l], mid[l], sm);
        double ac = std::fabs(c[l]);
        sr = std::fma(ac, rad[l], sr);
        sa = std::fma(ac, std::fabs(mid[l]), sa);
    }
    // |fl(dot) - dot| <= gamma_n (|c|.(|mid|+rad)); 8n eps dominates 2*gamma_{n+2}
    double pad = rnd::mul_up(8.0 * n * 2.220446049250313e-16, rnd::add_up(sr, sa));
    double r = rnd::add_up(rnd::add_up(sr, pad), 1e-290);
    return {sm, r};
}

} // namespace

Certificate krawczyk_step(const IntervalSystem& sys, const Box& box) {
    Certificate cert;
    cert.box = box;
    cert.K_image = box;

    const int d = sys.dim;
    Box x0 = box.midpoint_box();

    Box gx0;
    thread_local IntervalMatrix dg;
    if (!sys.residual(x0, gx0) || !sys.jacobian(box, dg)) return cert;  // Unknown

    auto c_opt = lu_inverse(midpoint_matrix(dg));
    if (!c_opt) return cert;  // singular midpoint Jacobian -> Unknown
    const Matrix& c = *c_opt;

    // K = x0 - C g(x0) + (Id - C DG)(X - x0), with C as a point matrix.
    Box k(d);
    std::array<double, Box::kMaxDim> crow, gmid, grad;
    std::array<Interval, Box::kMaxDim> dx;
    for (int l = 0; l < d; ++l) {
        dx[l] = box[l] - x0[l];
        double m = gx0[l].mid();
        gmid[l] = m;
        grad[l] = std::max(rnd::sub_up(gx0[l].hi, m), rnd::sub_up(m, gx0[l].lo));
    }
    // dg in midpoint-radius layout, column-major for the row products
    thread_local std::vector<double> dgm, dgr;
    dgm.assign(static_cast<size_t>(d) * d, 0.0);
    dgr.assign(static_cast<size_t>(d) * d, 0.0);
    for (int l = 0; l < d; ++l)
        for (int j = 0; j < d; ++j) {
            const Interval& e = dg(l, j);
            double m = e.mid();
            dgm[static_cast<size_t>(j) * d + l] = m;
            dgr[static_cast<size_t>(j) * d + l] = std::max(rnd::sub_up(e.hi, m), rnd::sub_up(m, e.lo));
        }
    for (int i = 0; i < d; ++i) {
        for (int l = 0; l < d; ++l) crow[l] = c(i, l);
        MidRad cg = point_dot_midrad(crow.data(), gmid.data(), grad.data(), d);
        Interval acc = x0[i] - Interval(rnd::sub_down(cg.mid, cg.rad), rnd::add_up(cg.mid, cg.rad));
        for (int j = 0; j < d; ++j) {
            MidRad cd = point_dot_midrad(crow.data(), &dgm[static_cast<size_t>(j) * d], &dgr[static_cast<size_t>(j) * d], d);
            Interval coeff = (i == j ? Interval(1.0) : Interval(0.0)) -
                             Interval(rnd::sub_down(cd.mid, cd.rad), rnd::add_up(cd.mid, cd.rad));
            acc += coeff * dx[j];
        }
        k[i] = acc;
    }

    cert.K_image = k;
    bool inside = true, disjoint = false;
    for (int i = 0; i < d; ++i) {
        if (!box[i].strictly_contains(k[i])) inside = false;
        if (k[i].disjoint(box[i])) disjoint = true;
    }
    if (inside)
        cert.status = CertStatus::UniqueZero;
    else if (disjoint)
        cert.status = CertStatus::NoZero;
    return cert;
}

bool certify_unique_in_hull(const IntervalSystem& sys, const Box& a, const Box& b) {
    Box h = hull(a, b);
    // A whisker of inflation keeps maximally refined boxes certifiable
    // (uniqueness in a superset is still uniqueness in the hull).
    for (int i = 0; i < h.dim(); ++i) {
        double pad = 0.01 * h[i].width() + 1e-14 * (1.0 + h[i].mag());
        h[i] = Interval(h[i].lo - pad, h[i].hi + pad);
    }
    return krawczyk_step(sys, h).status == CertStatus::UniqueZero;
}

Box refine(const IntervalSystem& sys, Box box, int iterations) {
    // Accept an iterate only when it certifies on its own, so the returned
    // box always re-certifies (stored solutions round-trip through verify).
    // The intersection hugs the operator image, which places the zero right
    // at the cut; padding back toward the interior keeps it certifiable.
    for (int it = 0; it < iterations; ++it) {
        Certificate cert = krawczyk_step(sys, box);
        if (cert.status != CertStatus::UniqueZero) break;
        auto tightened = intersect(box, cert.K_image);
        if (!tightened) break;
        Box cand = *tightened;
        for (int i = 0; i < cand.dim(); ++i) {
            double pad = 0.25 * cand[i].width() + 2e-15 * (1.0 + cand[i].mag());
            cand[i] = Interval(std::max(box[i].lo, cand[i].lo - pad), std::min(box[i].hi, cand[i].hi + pad));
        }
        if (cand == box) break;
        if (krawczyk_step(sys, cand).status != CertStatus::UniqueZero) break;
        box = cand;
    }
    return box;
}

IntervalSystem make_interval_system(const ReducedSystem& sys) {
    IntervalSystem isys;
    isys.dim = sys.reduced_dim();
    isys.residual = [&sys](const Box& b, Box& out) { return sys.try_residual(b, out); };
    isys.jacobian = [&sys](const Box& b, IntervalMatrix& out) { return sys.try_jacobian(b, out); };
    return isys;
}

} // namespace ccs
