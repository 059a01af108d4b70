#include "ccs/polya.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ccs {

namespace {

long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<long long>(v);
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f = checked(static_cast<__int128>(f) * i);
    return f;
}

} // namespace

Permutation Permutation::identity(int n) {
    Permutation p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), 0);
    return p;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images[i] != i) return false;
    return true;
}

Permutation Permutation::compose(const Permutation& o) const {
    Permutation r;
    r.images.resize(size());
    for (int i = 0; i < size(); ++i) r.images[i] = images[o.images[i]];
    return r;
}

std::vector<int> Permutation::cycle_type() const {
    const int n = size();
    std::vector<int> alpha(n, 0);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = images[j];
            ++len;
        }
        ++alpha[len - 1];
    }
    return alpha;
}

int Permutation::cycle_count() const {
    auto alpha = cycle_type();
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

Rational::Rational(long long n) : num(n), den(1) {}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rational(checked(n), checked(d));
}

Rational Rational::operator*(const Rational& o) const {
    long long g1 = std::gcd(num < 0 ? -num : num, o.den);
    long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    __int128 n = static_cast<__int128>(num / (g1 ? g1 : 1)) * (o.num / (g2 ? g2 : 1));
    __int128 d = static_cast<__int128>(den / (g2 ? g2 : 1)) * (o.den / (g1 ? g1 : 1));
    return Rational(checked(n), checked(d));
}

std::vector<Permutation> close_group(std::vector<Permutation> perms, int n) {
    std::set<Permutation> s(perms.begin(), perms.end());
    s.insert(Permutation::identity(n));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Permutation> cur(s.begin(), s.end());
        for (const auto& a : cur)
            for (const auto& b : cur) {
                Permutation c = a.compose(b);
                if (s.insert(c).second) grew = true;
                if (s.size() > static_cast<size_t>(factorial(n)))
                    throw NotAGroup("closure exceeded S_n");
            }
    }
    return {s.begin(), s.end()};
}

CycleIndex cycle_index_of_group(const std::vector<Permutation>& perms) {
    if (perms.empty()) throw NotAGroup("empty permutation list");
    const int n = perms.front().size();
    std::set<Permutation> s;
    bool has_id = false;
    for (const auto& p : perms) {
        if (p.size() != n) throw NotAGroup("mixed degrees");
        if (p.is_identity()) has_id = true;
        s.insert(p);
    }
    if (!has_id) throw NotAGroup("identity missing");
    for (const auto& a : s)
        for (const auto& b : s)
            if (!s.count(a.compose(b))) throw NotAGroup("not closed under composition");

    CycleIndex zi;
    zi.n = n;
    const Rational w(1, static_cast<long long>(s.size()));
    for (const auto& p : s) {
        auto alpha = p.cycle_type();
        auto it = zi.terms.find(alpha);
        if (it == zi.terms.end())
            zi.terms.emplace(alpha, w);
        else
            it->second = it->second + w;
    }
    return zi;
}

long long count_colorings(const CycleIndex& zi, long long k) {
    Rational total(0);
    for (const auto& [alpha, coeff] : zi.terms) {
        long long cycles = std::accumulate(alpha.begin(), alpha.end(), 0LL);
        __int128 p = 1;
        for (long long i = 0; i < cycles; ++i) p = p * k;
        total = total + coeff * Rational(checked(p));
    }
    if (!total.is_integer()) throw std::logic_error("non-integer coloring count");
    return total.num;
}

long long burnside_colorings(const std::vector<Permutation>& group, long long k) {
    __int128 sum = 0;
    for (const auto& g : group) {
        __int128 p = 1;
        for (int i = 0; i < g.cycle_count(); ++i) p = p * k;
        sum += p;
    }
    if (sum % static_cast<__int128>(group.size()) != 0) throw std::logic_error("Burnside sum not divisible");
    return checked(sum / static_cast<__int128>(group.size()));
}

namespace {

// Multilinear polynomials over x_1..x_n: subset mask -> coefficient.
// Monomials with any exponent above one can never reach x_1...x_n through
// further multiplication, so they are dropped eagerly.
using MultiPoly = std::map<std::uint32_t, Rational>;

MultiPoly poly_one() { return {{0u, Rational(1)}}; }

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            if (ma & mb) continue;  // repeated variable -> exponent 2, dead
            auto key = ma | mb;
            auto it = r.find(key);
            Rational prod = ca * cb;
            if (it == r.end())
                r.emplace(key, prod);
            else
                it->second = it->second + prod;
        }
    return r;
}

// Power sum s_i = sum_j x_j^i truncated to multilinear monomials.
MultiPoly power_sum(int i, int n) {
    MultiPoly r;
    if (i == 1)
        for (int j = 0; j < n; ++j) r.emplace(1u << j, Rational(1));
    return r;  // empty (zero) for i >= 2
}

} // namespace

long long count_distinct_labelings(const CycleIndex& zi, int n) {
    const std::uint32_t full = (n >= 32) ? 0u : ((1u << n) - 1u);
    Rational total(0);
    for (const auto& [alpha, coeff] : zi.terms) {
        MultiPoly acc = poly_one();
        bool dead = false;
        for (int i = 0; i < zi.n && !dead; ++i) {
            for (int e = 0; e < alpha[i] && !dead; ++e) {
                acc = poly_mul(acc, power_sum(i + 1, n));
                if (acc.empty()) dead = true;
            }
        }
        if (dead) continue;
        auto it = acc.find(full);
        if (it != acc.end()) total = total + coeff * it->second;
    }
    if (!total.is_integer()) throw std::logic_error("non-integer labeling count");
    return total.num;
}

ClassSigmas class_sigmas(Geometry g, const SymmetryGroup& grp) {
    ClassSigmas cs;
    cs.geometry = g;
    for (const auto& e : grp.elements) {
        Permutation p;
        p.images = e.sigma;
        cs.iso.push_back(p);
        bool keep = e.det_sign > 0;
        if (g != Geometry::Spatial) keep = keep && e.keeps_plane_orientation;
        if (keep) cs.homo.push_back(std::move(p));
    }
    return cs;
}

TableCounts count_tables(const std::vector<ClassSigmas>& classes, int n) {
    if (classes.empty()) throw IncompleteCatalog("empty class list");
    TableCounts tc;
    const long long nfact = factorial(n);
    for (const auto& cls : classes) {
        auto iso_group = close_group(cls.iso, n);
        auto homo_group = close_group(cls.homo, n);
        long long iso = count_distinct_labelings(cycle_index_of_group(iso_group), n);
        long long homo = count_distinct_labelings(cycle_index_of_group(homo_group), n);
        if (iso * static_cast<long long>(iso_group.size()) != nfact ||
            homo * static_cast<long long>(homo_group.size()) != nfact)
            throw std::logic_error("labeling count disagrees with n!/|G|");
        tc.per_class.emplace_back(iso, homo);
        tc.iso += iso;
        tc.homo += homo;
    }
    return tc;
}

} // namespace ccs
