#include "ccs/stability.hpp"

#include <algorithm>
#include <cmath>

namespace ccs {

Matrix rotating_frame_jacobian(const std::vector<double>& q_xy, const std::vector<double>& masses) {
    const int n = static_cast<int>(masses.size());
    const int dim2 = 2 * n;
    Matrix m(4 * n, 4 * n);

    // dq/dt = v
    for (int i = 0; i < dim2; ++i) m(i, dim2 + i) = 1.0;

    // A = Id - DG with G_i = sum_j m_j (q_i - q_j) / r_ij^3
    for (int i = 0; i < n; ++i) {
        double dii[4] = {0, 0, 0, 0};
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double ux = q_xy[2 * i] - q_xy[2 * j];
            double uy = q_xy[2 * i + 1] - q_xy[2 * j + 1];
            double r2 = ux * ux + uy * uy;
            double r = std::sqrt(r2);
            double ir3 = 1.0 / (r2 * r);
            double ir5 = ir3 / r2;
            // P(u) = Id/r^3 - 3 u u^T / r^5
            double p[4] = {ir3 - 3 * ux * ux * ir5, -3 * ux * uy * ir5, -3 * uy * ux * ir5, ir3 - 3 * uy * uy * ir5};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    // DG_ij = -m_j P, accumulated into A = Id - DG
                    m(dim2 + 2 * i + a, 2 * j + b) = masses[j] * p[2 * a + b];
                    dii[2 * a + b] += masses[j] * p[2 * a + b];
                }
        }
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m(dim2 + 2 * i + a, 2 * i + b) = (a == b ? 1.0 : 0.0) - dii[2 * a + b];
    }

    // -2 J blocks on the velocity diagonal
    for (int i = 0; i < n; ++i) {
        m(dim2 + 2 * i, dim2 + 2 * i + 1) = 2.0;
        m(dim2 + 2 * i + 1, dim2 + 2 * i) = -2.0;
    }
    return m;
}

Matrix rotating_frame_jacobian(const Configuration& q, const Masses& ms) {
    std::vector<double> q_xy(2 * q.n);
    std::vector<double> m(q.n);
    for (int i = 0; i < q.n; ++i) {
        if (q.dim == 3 && std::fabs(q.q[i][2].mid()) > 1e-9) throw NonPlanarInput();
        q_xy[2 * i] = q.q[i][0].mid();
        q_xy[2 * i + 1] = q.q[i][1].mid();
        m[i] = ms.m[i].mid();
    }
    return rotating_frame_jacobian(q_xy, m);
}

StabilityReport stability_scan(const std::vector<double>& q_xy, const std::vector<double>& masses) {
    Matrix m = rotating_frame_jacobian(q_xy, masses);
    auto ev = eig_nonsymmetric(m);
    if (ev.empty()) throw EigensolverFailure();
    StabilityReport rep;
    rep.eigenvalues = std::move(ev);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    rep.max_real_part = 0.0;
    for (const auto& l : rep.eigenvalues) {
        if (std::abs(l) < kZeroCutoff) {
            ++rep.near_zero_count;
            continue;
        }
        rep.max_real_part = std::max(rep.max_real_part, l.real());
    }
    rep.verdict = rep.max_real_part > kInstabilityThreshold ? StabilityVerdict::Unstable : StabilityVerdict::NotDecided;
    return rep;
}

StabilityReport stability_scan(const Configuration& q, const Masses& ms) {
    std::vector<double> q_xy(2 * q.n);
    std::vector<double> m(q.n);
    for (int i = 0; i < q.n; ++i) {
        if (q.dim == 3 && std::fabs(q.q[i][2].mid()) > 1e-9) throw NonPlanarInput();
        q_xy[2 * i] = q.q[i][0].mid();
        q_xy[2 * i + 1] = q.q[i][1].mid();
        m[i] = ms.m[i].mid();
    }
    return stability_scan(q_xy, m);
}

} // namespace ccs
