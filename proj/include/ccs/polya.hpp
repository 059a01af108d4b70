#pragma once

// Cycle-index computation and Polya counting of mass labelings.  All
// arithmetic is exact: rationals over checked 64-bit integers (every table
// quantity is tiny).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccs/classify.hpp"

namespace ccs {

struct NotAGroup : std::runtime_error {
    explicit NotAGroup(const std::string& what) : std::runtime_error(what) {}
};
struct IncompleteCatalog : std::runtime_error {
    explicit IncompleteCatalog(const std::string& what) : std::runtime_error(what) {}
};

struct Permutation {
    std::vector<int> images;

    static Permutation identity(int n);
    int size() const { return static_cast<int>(images.size()); }
    bool is_identity() const;
    // (a.compose(b))(x) = a(b(x))
    Permutation compose(const Permutation& o) const;
    // alpha[i-1] = number of cycles of length i
    std::vector<int> cycle_type() const;
    int cycle_count() const;
    bool operator<(const Permutation& o) const { return images < o.images; }
    bool operator==(const Permutation& o) const { return images == o.images; }
};

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n);  // NOLINT: implicit by design
    Rational(long long n, long long d);
    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_integer() const { return den == 1; }
};

struct CycleIndex {
    int n = 0;
    // exponent vector alpha (length n) -> coefficient
    std::map<std::vector<int>, Rational> terms;
};

// Adds the identity and closes the set under composition.
std::vector<Permutation> close_group(std::vector<Permutation> perms, int n);

// Exact cycle index; throws NotAGroup unless the list is closed and
// contains the identity.
CycleIndex cycle_index_of_group(const std::vector<Permutation>& perms);

// zeta_G(k, ..., k): colorings with at most k colors.
long long count_colorings(const CycleIndex& zi, long long k);

// Independent Burnside evaluation (average of k^{#cycles}).
long long burnside_colorings(const std::vector<Permutation>& group, long long k);

// Coefficient of x_1 x_2 ... x_n in zeta_G(s_1, ..., s_n) with the power
// sums s_i = sum_j x_j^i: labelings using every color exactly once.
long long count_distinct_labelings(const CycleIndex& zi, int n);

// Permutation lists backing the two group actions of one CC class.
struct ClassSigmas {
    Geometry geometry = Geometry::Undetermined;
    std::vector<Permutation> iso;   // induced by every verified element
    std::vector<Permutation> homo;  // orientation-preserving within the class span
};

ClassSigmas class_sigmas(Geometry g, const SymmetryGroup& grp);

struct TableCounts {
    long long iso = 0;
    long long homo = 0;
    std::vector<std::pair<long long, long long>> per_class;
};

// iso(n)/homo(n) over a complete catalog of CC classes for one (n, d).
TableCounts count_tables(const std::vector<ClassSigmas>& classes, int n);

} // namespace ccs
