#pragma once

// Krawczyk operator certification: proves existence-and-uniqueness of a
// zero inside a box, proves absence, or reports Unknown.  Bisection
// strategy belongs to the caller.

#include <functional>

#include "ccs/interval.hpp"

namespace ccs {

enum class CertStatus { UniqueZero, NoZero, Unknown };

struct Certificate {
    CertStatus status = CertStatus::Unknown;
    Box K_image;  // operator image K(x0, X); meaningful unless the step aborted
    Box box;      // the input box
};

// A square interval system.  The callables return false when the box is
// not evaluable (e.g. a collision enclosure); the step then reports Unknown.
struct IntervalSystem {
    int dim = 0;
    std::function<bool(const Box&, Box&)> residual;
    std::function<bool(const Box&, IntervalMatrix&)> jacobian;
};

// K(x0, X) = x0 - C G(x0) + (Id - C DG(X)) (X - x0) with x0 = mid(X) and
// C the floating-point inverse of mid(DG(X)).  K strictly inside X proves
// a unique zero; K disjoint from X proves there is none.
Certificate krawczyk_step(const IntervalSystem& sys, const Box& box);

// Uniqueness in hull(a, b); with both boxes individually certified this
// proves their zeros coincide.
bool certify_unique_in_hull(const IntervalSystem& sys, const Box& a, const Box& b);

// Iterated box <- intersect(box, K) starting from a certified box.
Box refine(const IntervalSystem& sys, Box box, int iterations);

class ReducedSystem;

// Adapter exposing the reduced central-configuration equations.
IntervalSystem make_interval_system(const ReducedSystem& sys);

} // namespace ccs
