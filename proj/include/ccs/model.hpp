#pragma once

// The normalized central-configuration equations for n bodies in dimension
// 2 or 3, in the symmetry-reduced coordinates
//   (x_0, y_0, x_1, y_1[, z_1], ..., x_{n-3}, y_{n-3}[, z_{n-3}], x_{n-2})
// with body n-2 pinned to the positive OX axis, body 0 to the z = 0 plane
// and body n-1 eliminated through the center-of-mass relation.

#include <array>
#include <stdexcept>
#include <vector>

#include "ccs/interval.hpp"

namespace ccs {

struct CollisionInBox : std::runtime_error {
    CollisionInBox() : std::runtime_error("pairwise distance enclosure contains zero") {}
};

constexpr int kMaxBodies = 8;

struct Masses {
    int n = 0;
    std::array<Interval, kMaxBodies> m{};

    // m_i enclosing 1/n, normalized so that the exact total is 1.
    static Masses equal(int n);
};

using BodyPos = std::array<Interval, 3>;

struct Configuration {
    int n = 0;
    int dim = 3;
    std::array<BodyPos, kMaxBodies> q{};
};

enum class CertBool { True, False, Undetermined };

struct CCInvariants {
    Interval U;       // potential sum m_i m_j / r_ij
    Interval I;       // moment of inertia sum m_i |q_i|^2
    Interval J;       // U * sqrt(I)
    Interval x_last;  // x_{n-2}
};

struct A1A2 {
    CertBool a1 = CertBool::Undetermined;
    CertBool a2 = CertBool::Undetermined;
};

// (1/m_i) f_i for every body; false when some pairwise squared distance
// encloses zero.
bool try_accelerations(const Configuration& q, const Masses& masses, std::array<BodyPos, kMaxBodies>& acc);

// Full-system residual F_i = q_i - sum_j m_j (q_i - q_j)/r_ij^3, flattened
// body-major; throws CollisionInBox.  Works for any n >= 2.
std::vector<Interval> residual_full(const Configuration& q, const Masses& masses);

// U, I = sum m_i |q_i|^2, J = U sqrt(I) and x_{n-2}; throws CollisionInBox.
CCInvariants invariants(const Configuration& q, const Masses& masses);

// Reduced-to-full equivalence conditions evaluated on an embedded
// configuration.
A1A2 check_A1_A2(const Configuration& q);

class ReducedSystem {
  public:
    ReducedSystem(const Masses& masses, int dim);

    int n() const { return n_; }
    int space_dim() const { return dim_; }
    int reduced_dim() const { return red_dim_; }
    const Masses& masses() const { return masses_; }

    // Indices of a body's coordinates inside the reduced vector; body n-2
    // contributes only its x, bodies 0 contributes x and y.
    int coord_index(int body, int comp) const;

    Configuration embed(const Box& p) const;
    // Reduced coordinates read back off an embedded configuration.
    Box project(const Configuration& q) const;

    // false when some pairwise squared distance encloses zero.
    bool try_residual(const Box& p, Box& out) const;
    bool try_jacobian(const Box& p, IntervalMatrix& out) const;

    Box residual_reduced(const Box& p) const;               // throws CollisionInBox
    IntervalMatrix jacobian_reduced(const Box& p) const;    // throws CollisionInBox

    std::vector<Interval> residual_full(const Configuration& q) const { return ccs::residual_full(q, masses_); }
    CCInvariants invariants(const Configuration& q) const { return ccs::invariants(q, masses_); }
    A1A2 check_A1_A2(const Configuration& q) const { return ccs::check_A1_A2(q); }

    // Plain floating-point Jacobian at the box midpoint (row-major,
    // reduced_dim^2 entries); heuristics only, false near a collision.
    bool jacobian_midpoint(const Box& p, double* jac) const;

  private:
    int n_;
    int dim_;
    int red_dim_;
    Masses masses_;
    std::array<Interval, kMaxBodies> mass_ratio_;  // m_b / m_{n-1}
    std::array<Interval, kMaxBodies> chain_mass_;  // (m_b / m_{n-1}) m_{n-1}
};

} // namespace ccs
