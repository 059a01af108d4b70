#include "ccs/model.hpp"

namespace ccs {

namespace {

constexpr int kMaxPairs = kMaxBodies * (kMaxBodies - 1) / 2;

inline int pair_index(int n, int i, int j) {
    // i < j
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

struct PairTable {
    std::array<Interval, kMaxPairs> s;        // |q_i - q_j|^2
    std::array<Interval, kMaxPairs> inv_r3;
    bool ok = false;
};

// Squared distances and 1/r^3 for all pairs; ok = false if any squared
// distance encloses zero.
PairTable pair_table(const Configuration& q) {
    PairTable t;
    const int n = q.n, d = q.dim;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Interval s(0.0);
            for (int c = 0; c < d; ++c) s += sqr(q.q[i][c] - q.q[j][c]);
            const int pi = pair_index(n, i, j);
            t.s[pi] = s;
            if (s.lo <= 0.0) return t;  // collision not excluded
            t.inv_r3[pi] = Interval(1.0) / (s * sqrt(s));
        }
    }
    t.ok = true;
    return t;
}

} // namespace

Masses Masses::equal(int n) {
    if (n < 2 || n > kMaxBodies) throw DimensionError("body count out of range");
    Masses ms;
    ms.n = n;
    Interval v = Interval(1.0) / Interval(static_cast<double>(n));
    for (int i = 0; i < n; ++i) ms.m[i] = v;
    return ms;
}

ReducedSystem::ReducedSystem(const Masses& masses, int dim) : n_(masses.n), dim_(dim), masses_(masses) {
    if (dim != 2 && dim != 3) throw DimensionError("space dimension must be 2 or 3");
    if (n_ < 4) throw DimensionError("reduced system needs n >= 4");
    red_dim_ = 2 + dim_ * (n_ - 3) + 1;
    if (red_dim_ > Box::kMaxDim) throw DimensionError("reduced dimension exceeds box capacity");
    for (int b = 0; b <= n_ - 2; ++b) {
        mass_ratio_[b] = masses_.m[b] / masses_.m[n_ - 1];
        chain_mass_[b] = mass_ratio_[b] * masses_.m[n_ - 1];
    }
}

int ReducedSystem::coord_index(int body, int comp) const {
    if (body == 0) return comp;  // comp in {0,1}
    if (body == n_ - 2) return red_dim_ - 1;
    return 2 + dim_ * (body - 1) + comp;
}

Configuration ReducedSystem::embed(const Box& p) const {
    Configuration q;
    q.n = n_;
    q.dim = dim_;
    q.q[0] = {p[0], p[1], Interval(0.0)};
    for (int i = 1; i <= n_ - 3; ++i) {
        int base = 2 + dim_ * (i - 1);
        q.q[i] = {p[base], p[base + 1], dim_ == 3 ? p[base + 2] : Interval(0.0)};
    }
    q.q[n_ - 2] = {p[red_dim_ - 1], Interval(0.0), Interval(0.0)};
    for (int c = 0; c < dim_; ++c) {
        Interval s(0.0);
        for (int i = 0; i <= n_ - 2; ++i) s += masses_.m[i] * q.q[i][c];
        q.q[n_ - 1][c] = -(s / masses_.m[n_ - 1]);
    }
    if (dim_ == 2) q.q[n_ - 1][2] = Interval(0.0);
    return q;
}

Box ReducedSystem::project(const Configuration& q) const {
    Box p(red_dim_);
    p[0] = q.q[0][0];
    p[1] = q.q[0][1];
    for (int i = 1; i <= n_ - 3; ++i) {
        int base = 2 + dim_ * (i - 1);
        for (int c = 0; c < dim_; ++c) p[base + c] = q.q[i][c];
    }
    p[red_dim_ - 1] = q.q[n_ - 2][0];
    return p;
}

bool try_accelerations(const Configuration& q, const Masses& ms, std::array<BodyPos, kMaxBodies>& acc) {
    PairTable t = pair_table(q);
    if (!t.ok) return false;
    const int n = q.n, d = q.dim;
    for (int i = 0; i < n; ++i) acc[i] = {Interval(0.0), Interval(0.0), Interval(0.0)};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Interval& w = t.inv_r3[pair_index(n, i, j)];
            for (int c = 0; c < d; ++c) {
                Interval dc = (q.q[i][c] - q.q[j][c]) * w;
                acc[i][c] += ms.m[j] * dc;
                acc[j][c] -= ms.m[i] * dc;
            }
        }
    }
    return true;
}

bool ReducedSystem::try_residual(const Box& p, Box& out) const {
    Configuration q = embed(p);
    std::array<BodyPos, kMaxBodies> acc;
    if (!try_accelerations(q, masses_, acc)) return false;
    out = Box(red_dim_);
    int r = 0;
    for (int i = 1; i <= n_ - 3; ++i)
        for (int c = 0; c < dim_; ++c) out[r++] = q.q[i][c] - acc[i][c];
    out[r++] = q.q[n_ - 2][0] - acc[n_ - 2][0];
    out[r++] = q.q[0][0] - acc[0][0];
    out[r++] = q.q[0][1] - acc[0][1];
    return true;
}

Box ReducedSystem::residual_reduced(const Box& p) const {
    Box out;
    if (!try_residual(p, out)) throw CollisionInBox();
    return out;
}

std::vector<Interval> residual_full(const Configuration& q, const Masses& ms) {
    std::array<BodyPos, kMaxBodies> acc;
    if (!try_accelerations(q, ms, acc)) throw CollisionInBox();
    std::vector<Interval> f(static_cast<size_t>(q.n) * q.dim);
    for (int i = 0; i < q.n; ++i)
        for (int c = 0; c < q.dim; ++c) f[static_cast<size_t>(i) * q.dim + c] = q.q[i][c] - acc[i][c];
    return f;
}

bool ReducedSystem::try_jacobian(const Box& p, IntervalMatrix& out) const {
    Configuration q = embed(p);
    PairTable t = pair_table(q);
    if (!t.ok) return false;

    // P_ij = Id / r^3 - 3 d d^T / r^5, symmetric in the pair.
    const int d = dim_;
    std::array<std::array<Interval, 9>, kMaxPairs> P;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            const int pi = pair_index(n_, i, j);
            const Interval& s = t.s[pi];
            Interval m3_r5 = Interval(-3.0) / (pow(s, 2) * sqrt(s));
            BodyPos diff;
            for (int c = 0; c < d; ++c) diff[c] = q.q[i][c] - q.q[j][c];
            for (int a = 0; a < d; ++a)
                for (int b = a; b < d; ++b) {
                    Interval e = (a == b ? sqr(diff[a]) : diff[a] * diff[b]) * m3_r5;
                    if (a == b) e += t.inv_r3[pi];
                    P[pi][a * d + b] = e;
                    P[pi][b * d + a] = e;
                }
        }
    }
    auto pf = [&](int i, int j, int a, int b) -> const Interval& {
        return P[pair_index(n_, std::min(i, j), std::max(i, j))][a * d + b];
    };

    // d(Phi_{e,a})/d(q_{b,c}) with the chain-rule term through q_{n-1};
    // chain_mass_[b] encloses m_b (computed as (m_b/m_{n-1}) m_{n-1}).
    auto entry = [&](int e, int b, int a, int c) {
        Interval v(0.0);
        if (b == e) {
            if (a == c) v = Interval(1.0);
            for (int l = 0; l < n_; ++l)
                if (l != e) v -= masses_.m[l] * pf(e, l, a, c);
        } else {
            v = masses_.m[b] * pf(e, b, a, c);
        }
        v -= chain_mass_[b] * pf(e, n_ - 1, a, c);
        return v;
    };

    out.assign(red_dim_, red_dim_);
    std::array<std::pair<int, int>, Box::kMaxDim> rows;
    int r = 0;
    for (int i = 1; i <= n_ - 3; ++i)
        for (int c = 0; c < d; ++c) rows[r++] = {i, c};
    rows[r++] = {n_ - 2, 0};
    rows[r++] = {0, 0};
    rows[r++] = {0, 1};

    for (int rr = 0; rr < red_dim_; ++rr) {
        const int e = rows[rr].first, a = rows[rr].second;
        out(rr, 0) = entry(e, 0, a, 0);
        out(rr, 1) = entry(e, 0, a, 1);
        for (int ub = 1; ub <= n_ - 3; ++ub) {
            int base = 2 + d * (ub - 1);
            for (int c = 0; c < d; ++c) out(rr, base + c) = entry(e, ub, a, c);
        }
        out(rr, red_dim_ - 1) = entry(e, n_ - 2, a, 0);
    }
    return true;
}

IntervalMatrix ReducedSystem::jacobian_reduced(const Box& p) const {
    IntervalMatrix out;
    if (!try_jacobian(p, out)) throw CollisionInBox();
    return out;
}

bool ReducedSystem::jacobian_midpoint(const Box& p, double* jac) const {
    const int d = dim_, rd = red_dim_;
    double q[kMaxBodies][3];
    double m[kMaxBodies];
    for (int i = 0; i < n_; ++i) m[i] = masses_.m[i].mid();
    q[0][0] = p[0].mid();
    q[0][1] = p[1].mid();
    q[0][2] = 0;
    for (int i = 1; i <= n_ - 3; ++i) {
        int base = 2 + d * (i - 1);
        q[i][0] = p[base].mid();
        q[i][1] = p[base + 1].mid();
        q[i][2] = d == 3 ? p[base + 2].mid() : 0;
    }
    q[n_ - 2][0] = p[rd - 1].mid();
    q[n_ - 2][1] = q[n_ - 2][2] = 0;
    for (int c = 0; c < 3; ++c) {
        double s = 0;
        for (int i = 0; i <= n_ - 2; ++i) s += m[i] * q[i][c];
        q[n_ - 1][c] = -s / m[n_ - 1];
    }

    double P[kMaxBodies][kMaxBodies][9];
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            double s = 0, u[3];
            for (int c = 0; c < d; ++c) {
                u[c] = q[i][c] - q[j][c];
                s += u[c] * u[c];
            }
            if (s < 1e-12) return false;
            double r = std::sqrt(s), ir3 = 1.0 / (s * r), ir5 = ir3 / s;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    double e = -3.0 * u[a] * u[b] * ir5;
                    if (a == b) e += ir3;
                    P[i][j][a * d + b] = P[j][i][a * d + b] = e;
                }
        }

    int rows[Box::kMaxDim][2];
    int r = 0;
    for (int i = 1; i <= n_ - 3; ++i)
        for (int c = 0; c < d; ++c) {
            rows[r][0] = i;
            rows[r][1] = c;
            ++r;
        }
    rows[r][0] = n_ - 2;
    rows[r][1] = 0;
    ++r;
    rows[r][0] = 0;
    rows[r][1] = 0;
    ++r;
    rows[r][0] = 0;
    rows[r][1] = 1;

    auto block_entry = [&](int e, int b, int a, int c) {
        double v;
        if (b == e) {
            v = (a == c) ? 1.0 : 0.0;
            for (int l = 0; l < n_; ++l)
                if (l != e) v -= m[l] * P[e][l][a * d + c];
        } else {
            v = m[b] * P[e][b][a * d + c];
        }
        v -= m[b] * P[e][n_ - 1][a * d + c];
        return v;
    };
    for (int rr = 0; rr < rd; ++rr) {
        int e = rows[rr][0], a = rows[rr][1];
        jac[rr * rd + 0] = block_entry(e, 0, a, 0);
        jac[rr * rd + 1] = block_entry(e, 0, a, 1);
        for (int ub = 1; ub <= n_ - 3; ++ub) {
            int base = 2 + d * (ub - 1);
            for (int c = 0; c < d; ++c) jac[rr * rd + base + c] = block_entry(e, ub, a, c);
        }
        jac[rr * rd + rd - 1] = block_entry(e, n_ - 2, a, 0);
    }
    return true;
}

CCInvariants invariants(const Configuration& q, const Masses& ms) {
    PairTable t = pair_table(q);
    if (!t.ok) throw CollisionInBox();
    const int n = q.n, d = q.dim;
    CCInvariants inv;
    inv.U = Interval(0.0);
    inv.I = Interval(0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            inv.U += ms.m[i] * ms.m[j] / sqrt(t.s[pair_index(n, i, j)]);
        }
        Interval r2(0.0);
        for (int c = 0; c < d; ++c) r2 += sqr(q.q[i][c]);
        inv.I += ms.m[i] * r2;
    }
    inv.J = inv.U * sqrt(inv.I);
    inv.x_last = q.q[n - 2][0];
    return inv;
}

A1A2 check_A1_A2(const Configuration& q) {
    const int n = q.n;
    A1A2 res;
    auto decide = [](const Interval& v) {
        if (v.excludes_zero()) return CertBool::True;
        if (v.lo == 0.0 && v.hi == 0.0) return CertBool::False;
        return CertBool::Undetermined;
    };
    Interval d1 = q.q[n - 2][0] - q.q[n - 1][0];
    res.a1 = decide(d1);
    Interval ax = q.q[0][0] - q.q[n - 1][0];
    Interval ay = q.q[0][1] - q.q[n - 1][1];
    Interval bx = q.q[n - 2][0] - q.q[n - 1][0];
    Interval by = q.q[n - 2][1] - q.q[n - 1][1];
    res.a2 = decide(ax * by - bx * ay);
    return res;
}

} // namespace ccs
