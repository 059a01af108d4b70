#pragma once

// Geometry certification (collinearity / coplanarity through symmetric-hull
// uniqueness) and the orthogonal-symmetry search for certified solutions:
// candidate frames built from body positions, permutations extended by
// unique image intersection, every candidate verified with the Krawczyk
// operator on the hull of the box and its transformed image.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccs/interval.hpp"
#include "ccs/model.hpp"

namespace ccs {

struct AssumptionViolated : std::runtime_error {
    explicit AssumptionViolated(const std::string& what) : std::runtime_error(what) {}
};

enum class Geometry { Undetermined, Collinear, Planar, Spatial };

enum class ElementKind { Identity, Rotation, Reflection, PointInversion, RotoReflection, Undecidable };

struct SymmetryElement {
    IntervalMatrix R;            // dim x dim enclosure of the orthogonal map
    std::vector<int> sigma;      // body permutation, q_{sigma(i)} = R q_i
    ElementKind kind = ElementKind::Identity;
    int order = 1;               // cycle order k; angle = 2 pi turns / order
    int turns = 0;
    int det_sign = +1;
    // (R e_z | e_z) > 0 certified; distinguishes in-plane rotations of a
    // planar configuration from half-turns that flip its plane.
    bool keeps_plane_orientation = true;
    std::array<double, 3> mirror_normal{0.0, 0.0, 0.0};
};

struct SymmetryGroup {
    std::vector<SymmetryElement> elements;  // identity included
    int order() const { return static_cast<int>(elements.size()); }
};

// Theorem-style tests: true means certified (all z_i = 0, resp. all
// y_i = z_i = 0); false only means "not proven".
bool coplanarity_test(const ReducedSystem& sys, const Box& certified_box);
bool collinearity_test(const ReducedSystem& sys, const Box& certified_box);

// Verified congruences (R, sigma) mapping the unique solution in `a` onto
// the unique solution in `b`; both boxes must be individually certified,
// refined tight, and carry certified geometry (a genuine CC by the reduced
// system equivalence conditions).  With a == b this is the symmetry group
// of the solution, identity excluded.
std::vector<SymmetryElement> find_congruences(const ReducedSystem& sys, const Box& a, Geometry geom_a,
                                              const Box& b, Geometry geom_b);

// All verified orthogonal symmetries, identity first.  Requires a
// non-collinear solution with x_{n-2} > 0 and y_0 > 0 certified.
SymmetryGroup find_symmetries(const ReducedSystem& sys, const Box& certified_box, Geometry geom);

// Like find_symmetries but also handles collinear solutions (identity plus
// the verified order reversal, when present).
SymmetryGroup symmetry_group_for(const ReducedSystem& sys, const Box& certified_box, Geometry geom);

// Fills kind / order / turns / mirror data from sigma, det(R) and trace(R).
void classify_element(const ReducedSystem& sys, const Configuration& q, SymmetryElement& e);

// Catalog label from geometry class, invariant enclosures and group order;
// "unnamed" when nothing matches.
std::string name_geometry(int n, Geometry g, const CCInvariants& inv, int group_order);

} // namespace ccs
