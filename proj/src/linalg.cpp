#include "ccs/linalg.hpp"

#include <cmath>
#include <vector>

namespace ccs {

std::optional<Matrix> lu_inverse(const Matrix& a) {
    const int n = a.rows();
    if (n == 0 || a.cols() != n) return std::nullopt;
    // Gauss-Jordan with partial pivoting on [A | I].
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(w(r, col)) > std::fabs(w(piv, col))) piv = r;
        if (w(piv, col) == 0.0 || !std::isfinite(w(piv, col))) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        double d = 1.0 / w(col, col);
        for (int j = 0; j < n; ++j) {
            w(col, j) *= d;
            inv(col, j) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = w(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(r, j) -= f * w(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(inv(i, j))) return std::nullopt;
    return inv;
}

namespace {

// Classic EISPACK-style routines, kept 1-based internally to match the
// reference formulation.

struct Work {
    int n;
    std::vector<double> a;  // (n+1) x (n+1), 1-based
    double& at(int i, int j) { return a[static_cast<size_t>(i) * (n + 1) + j]; }
};

void balance(Work& w) {
    const double radix = 2.0, sqrdx = radix * radix;
    const int n = w.n;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 1; i <= n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 1; j <= n; ++j)
                if (j != i) {
                    c += std::fabs(w.at(j, i));
                    r += std::fabs(w.at(i, j));
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0, s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (int j = 1; j <= n; ++j) w.at(i, j) *= g;
                    for (int j = 1; j <= n; ++j) w.at(j, i) *= f;
                }
            }
        }
    }
}

void hessenberg(Work& w) {
    const int n = w.n;
    for (int m = 2; m < n; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j <= n; ++j) {
            if (std::fabs(w.at(j, m - 1)) > std::fabs(x)) {
                x = w.at(j, m - 1);
                i = j;
            }
        }
        if (i != m) {
            for (int j = m - 1; j <= n; ++j) std::swap(w.at(i, j), w.at(m, j));
            for (int j = 1; j <= n; ++j) std::swap(w.at(j, i), w.at(j, m));
        }
        if (x != 0.0) {
            for (int k = m + 1; k <= n; ++k) {
                double y = w.at(k, m - 1);
                if (y != 0.0) {
                    y /= x;
                    w.at(k, m - 1) = y;
                    for (int j = m; j <= n; ++j) w.at(k, j) -= y * w.at(m, j);
                    for (int j = 1; j <= n; ++j) w.at(j, m) += y * w.at(j, k);
                }
            }
        }
    }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

bool hqr(Work& wk, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = wk.n;
    auto a = [&](int i, int j) -> double& { return wk.at(i, j); };
    double anorm = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::fabs(a(i, j));
    int nn = n;
    double t = 0.0;
    while (nn >= 1) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 2; --l) {
                double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) + s == s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 2) l = 1;
            double x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn--] = 0.0;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn] = z;
                        wi[nn - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    if (its == 60) return false;
                    if (its == 10 || its == 20 || its == 30 || its == 40 || its == 50) {
                        t += x;
                        for (int i = 1; i <= nn; ++i) a(i, i) -= x;
                        double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        double rr = x - z;
                        double ss = y - z;
                        p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - rr - ss;
                        r = a(m + 2, m + 1);
                        double sc = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= sc;
                        q /= sc;
                        r /= sc;
                        if (m == l) break;
                        double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        double v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        double yy = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            double pp = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                pp += r * a(k + 2, j);
                                a(k + 2, j) -= pp * z;
                            }
                            a(k + 1, j) -= pp * yy;
                            a(k, j) -= pp * x;
                        }
                        int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            double pp = x * a(i, k) + yy * a(i, k + 1);
                            if (k != nn - 1) {
                                pp += z * a(i, k + 2);
                                a(i, k + 2) -= pp * r;
                            }
                            a(i, k + 1) -= pp * q;
                            a(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return true;
}

} // namespace

std::vector<std::complex<double>> eig_nonsymmetric(Matrix m) {
    const int n = m.rows();
    Work w;
    w.n = n;
    w.a.assign(static_cast<size_t>(n + 1) * (n + 1), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w.at(i + 1, j + 1) = m(i, j);
    balance(w);
    hessenberg(w);
    std::vector<double> wr(n + 1), wi(n + 1);
    if (!hqr(w, wr, wi)) return {};
    std::vector<std::complex<double>> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = {wr[i + 1], wi[i + 1]};
    return ev;
}

} // namespace ccs
