#pragma once

// Outward-rounded interval arithmetic on binary64 endpoints.
//
// Directed rounding is realized without touching the FPU rounding mode:
// every primitive computes the nearest-rounded result plus its exact
// residue (2Sum for +/-, fma for *, / and sqrt) and nudges the endpoint
// one ulp outward only when the residue says the rounded value lies on
// the wrong side.  Exact results stay exact.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccs {

struct DivisionByZeroInterval : std::runtime_error {
    DivisionByZeroInterval() : std::runtime_error("interval division by an interval containing zero") {}
};
struct NegativeSqrt : std::runtime_error {
    NegativeSqrt() : std::runtime_error("sqrt of an interval with negative lower endpoint") {}
};
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

namespace rnd {

namespace detail {

// Monotone order-preserving map between doubles and signed integers: walking
// the integer down/up walks the double down/up through +-0.  Branch-free
// apart from the cold infinity guard.
inline std::int64_t to_ordered(double x) {
    std::int64_t i = std::bit_cast<std::int64_t>(x);
    return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
}
inline double from_ordered(std::int64_t k) {
    std::int64_t i = k < 0 ? std::numeric_limits<std::int64_t>::min() - k : k;
    return std::bit_cast<double>(i);
}

// One ulp step in the given direction when `cond` holds; branch-free.
// Stepping down from +inf lands on DBL_MAX (still an upper bound for an
// overflowed product); conditions computed from NaN residues are false, so
// infinite endpoints are never stepped past the representable range.
inline double step_down_if(double x, bool cond) {
    return from_ordered(to_ordered(x) - static_cast<std::int64_t>(cond));
}
inline double step_up_if(double x, bool cond) {
    return from_ordered(to_ordered(x) + static_cast<std::int64_t>(cond));
}

} // namespace detail

inline double next_up(double x) { return detail::step_up_if(x, true); }
inline double next_down(double x) { return detail::step_down_if(x, true); }

// 2Sum residue: exact err with a + b == s + err.
inline double two_sum_err(double a, double b, double s) {
    double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) {
    double s = a + b;
    return detail::step_down_if(s, two_sum_err(a, b, s) < 0);
}
inline double add_up(double a, double b) {
    double s = a + b;
    return detail::step_up_if(s, two_sum_err(a, b, s) > 0);
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    double p = a * b;
    return detail::step_down_if(p, std::fma(a, b, -p) < 0);
}
inline double mul_up(double a, double b) {
    double p = a * b;
    return detail::step_up_if(p, std::fma(a, b, -p) > 0);
}

// q*b == a + r exactly, so q - a/b has the sign of r/b.
inline double div_down(double a, double b) {
    double q = a / b;
    double r = std::fma(q, b, -a);
    return detail::step_down_if(q, (b > 0) ? (r > 0) : (r < 0));
}
inline double div_up(double a, double b) {
    double q = a / b;
    double r = std::fma(q, b, -a);
    return detail::step_up_if(q, (b > 0) ? (r < 0) : (r > 0));
}

inline double sqrt_down(double a) {
    double s = std::sqrt(a);
    return detail::step_down_if(s, std::fma(s, s, -a) > 0);
}
inline double sqrt_up(double a) {
    double s = std::sqrt(a);
    return detail::step_up_if(s, std::fma(s, s, -a) < 0);
}

} // namespace rnd

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval point(double v) { return Interval(v); }

    bool is_point() const { return lo == hi; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_contains(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    bool excludes_zero() const { return lo > 0.0 || hi < 0.0; }
    bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }
    bool intersects(const Interval& o) const { return !disjoint(o); }

    double width() const { return rnd::sub_up(hi, lo); }
    double mid() const {
        double m = 0.5 * (lo + hi);
        if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
        if (m < lo) m = lo;
        if (m > hi) m = hi;
        return m;
    }
    double rad() const { return rnd::sub_up(hi, mid()) > rnd::sub_up(mid(), lo) ? rnd::sub_up(hi, mid()) : rnd::sub_up(mid(), lo); }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    double mig() const { return contains_zero() ? 0.0 : std::min(std::fabs(lo), std::fabs(hi)); }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return {rnd::add_down(a.lo, b.lo), rnd::add_up(a.hi, b.hi)};
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return {rnd::sub_down(a.lo, b.hi), rnd::sub_up(a.hi, b.lo)};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    using namespace rnd;
    if (a.lo >= 0) {
        if (b.lo >= 0) return {mul_down(a.lo, b.lo), mul_up(a.hi, b.hi)};
        if (b.hi <= 0) return {mul_down(a.hi, b.lo), mul_up(a.lo, b.hi)};
        return {mul_down(a.hi, b.lo), mul_up(a.hi, b.hi)};
    }
    if (a.hi <= 0) {
        if (b.lo >= 0) return {mul_down(a.lo, b.hi), mul_up(a.hi, b.lo)};
        if (b.hi <= 0) return {mul_down(a.hi, b.hi), mul_up(a.lo, b.lo)};
        return {mul_down(a.lo, b.hi), mul_up(a.lo, b.lo)};
    }
    if (b.lo >= 0) return {mul_down(a.lo, b.hi), mul_up(a.hi, b.hi)};
    if (b.hi <= 0) return {mul_down(a.hi, b.lo), mul_up(a.lo, b.lo)};
    double lo = std::min(mul_down(a.lo, b.hi), mul_down(a.hi, b.lo));
    double hi = std::max(mul_up(a.lo, b.lo), mul_up(a.hi, b.hi));
    return {lo, hi};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    using namespace rnd;
    if (b.contains_zero()) throw DivisionByZeroInterval();
    if (b.lo > 0) {
        if (a.lo >= 0) return {div_down(a.lo, b.hi), div_up(a.hi, b.lo)};
        if (a.hi <= 0) return {div_down(a.lo, b.lo), div_up(a.hi, b.hi)};
        return {div_down(a.lo, b.lo), div_up(a.hi, b.lo)};
    }
    // b.hi < 0
    if (a.lo >= 0) return {div_down(a.hi, b.hi), div_up(a.lo, b.lo)};
    if (a.hi <= 0) return {div_down(a.hi, b.lo), div_up(a.lo, b.hi)};
    return {div_down(a.hi, b.hi), div_up(a.lo, b.hi)};
}

inline Interval& operator+=(Interval& a, const Interval& b) { a = a + b; return a; }
inline Interval& operator-=(Interval& a, const Interval& b) { a = a - b; return a; }
inline Interval& operator*=(Interval& a, const Interval& b) { a = a * b; return a; }

inline Interval sqrt(const Interval& a) {
    if (a.lo < 0) throw NegativeSqrt();
    return {rnd::sqrt_down(a.lo), rnd::sqrt_up(a.hi)};
}

namespace rnd {
inline double pow_down(double x, int k) {
    double r = x;
    for (int i = 1; i < k; ++i) r = mul_down(r, x);
    return r;
}
inline double pow_up(double x, int k) {
    double r = x;
    for (int i = 1; i < k; ++i) r = mul_up(r, x);
    return r;
}
} // namespace rnd

// Dependency-aware integer power: even powers of a sign-straddling
// interval floor at zero instead of widening like repeated products.
inline Interval pow(const Interval& a, int k) {
    if (k == 0) return Interval(1.0);
    if (k < 0) return Interval(1.0) / pow(a, -k);
    if (k == 1) return a;
    if (k % 2 == 0) {
        double lm = std::fabs(a.lo), hm = std::fabs(a.hi);
        double lo_m = a.contains_zero() ? 0.0 : std::min(lm, hm);
        double hi_m = std::max(lm, hm);
        return {lo_m == 0.0 ? 0.0 : rnd::pow_down(lo_m, k), rnd::pow_up(hi_m, k)};
    }
    return {rnd::pow_down(a.lo, k), rnd::pow_up(a.hi, k)};
}

inline Interval sqr(const Interval& a) { return pow(a, 2); }

inline Interval abs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {0.0, a.mag()};
}

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Axis-aligned product of intervals.  Fixed capacity keeps search boxes
// off the heap; kMaxDim covers the reduced system up to n = 8 in 3D.
class Box {
  public:
    static constexpr int kMaxDim = 18;

    Box() = default;
    explicit Box(int dim) : dim_(check_dim(dim)) {}
    Box(std::initializer_list<Interval> cs) : dim_(check_dim(static_cast<int>(cs.size()))) {
        int i = 0;
        for (const Interval& c : cs) c_[i++] = c;
    }

    int dim() const { return dim_; }
    Interval& operator[](int i) { return c_[i]; }
    const Interval& operator[](int i) const { return c_[i]; }

    double max_width() const {
        double w = 0.0;
        for (int i = 0; i < dim_; ++i) w = std::max(w, c_[i].width());
        return w;
    }

    std::vector<double> midpoint() const {
        std::vector<double> m(dim_);
        for (int i = 0; i < dim_; ++i) m[i] = c_[i].mid();
        return m;
    }
    Box midpoint_box() const {
        Box b(dim_);
        for (int i = 0; i < dim_; ++i) b.c_[i] = Interval(c_[i].mid());
        return b;
    }

    std::pair<Box, Box> bisect(int axis) const {
        if (axis < 0 || axis >= dim_) throw DimensionError("bisect axis out of range");
        double m = c_[axis].mid();
        Box a = *this, b = *this;
        a.c_[axis] = Interval(c_[axis].lo, m);
        b.c_[axis] = Interval(m, c_[axis].hi);
        return {a, b};
    }

    bool contains(const std::vector<double>& p) const {
        if (static_cast<int>(p.size()) != dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (!c_[i].contains(p[i])) return false;
        return true;
    }
    bool contains(const Box& o) const {
        for (int i = 0; i < dim_; ++i)
            if (!c_[i].contains(o.c_[i])) return false;
        return true;
    }
    bool strictly_contains(const Box& o) const {
        for (int i = 0; i < dim_; ++i)
            if (!c_[i].strictly_contains(o.c_[i])) return false;
        return true;
    }

    bool operator==(const Box& o) const {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }

  private:
    static int check_dim(int d) {
        if (d < 0 || d > kMaxDim) throw DimensionError("box dimension out of range");
        return d;
    }
    std::array<Interval, kMaxDim> c_{};
    int dim_ = 0;
};

inline std::optional<Box> intersect(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw DimensionError("intersect: dimension mismatch");
    Box r(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        auto c = intersect(a[i], b[i]);
        if (!c) return std::nullopt;
        r[i] = *c;
    }
    return r;
}

inline Box hull(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw DimensionError("hull: dimension mismatch");
    Box r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

class IntervalMatrix {
  public:
    IntervalMatrix() = default;
    IntervalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    // Reshape reusing existing capacity; entries reset to zero.
    void assign(int rows, int cols) {
        rows_ = rows;
        cols_ = cols;
        a_.assign(static_cast<size_t>(rows) * cols, Interval());
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Interval& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Interval& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static IntervalMatrix identity(int n) {
        IntervalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Interval(1.0);
        return m;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Interval> a_;
};

inline Box operator*(const IntervalMatrix& m, const Box& v) {
    if (m.cols() != v.dim()) throw DimensionError("matrix-vector dimension mismatch");
    Box r(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        Interval s(0.0);
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix-matrix dimension mismatch");
    IntervalMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Interval& aik = a(i, k);
            if (aik.lo == 0.0 && aik.hi == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
    IntervalMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

std::string to_string(const Interval& a);
std::string to_string(const Box& b);

} // namespace ccs
