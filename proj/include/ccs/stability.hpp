#pragma once

// Non-rigorous linear stability of planar configurations in the frame
// rotating with unit angular velocity.  Floating point throughout.

#include <complex>
#include <stdexcept>
#include <vector>

#include "ccs/linalg.hpp"
#include "ccs/model.hpp"

namespace ccs {

struct NonPlanarInput : std::runtime_error {
    NonPlanarInput() : std::runtime_error("stability scan requires a planar configuration") {}
};
struct EigensolverFailure : std::runtime_error {
    EigensolverFailure() : std::runtime_error("QR iteration failed to converge") {}
};

enum class StabilityVerdict { Unstable, NotDecided };

struct StabilityReport {
    std::vector<std::complex<double>> eigenvalues;  // sorted by real part, descending
    double max_real_part = 0.0;                     // over modes with |lambda| above the zero cutoff
    int near_zero_count = 0;                        // |lambda| < kZeroCutoff
    StabilityVerdict verdict = StabilityVerdict::NotDecided;
};

inline constexpr double kInstabilityThreshold = 1e-6;
inline constexpr double kZeroCutoff = 1e-8;

// Linearization of  dq_i/dt = v_i,  dv_i/dt = -2 J v_i + q_i - G_i(q)
// at the fixed point (q, 0): block matrix [[0, Id], [A, -2J]], 4n x 4n.
// q_xy holds n planar positions (x_0, y_0, x_1, y_1, ...).
Matrix rotating_frame_jacobian(const std::vector<double>& q_xy, const std::vector<double>& masses);

// Overload taking configuration midpoints; throws NonPlanarInput when any
// |z| midpoint exceeds 1e-9.
Matrix rotating_frame_jacobian(const Configuration& q, const Masses& masses);

StabilityReport stability_scan(const std::vector<double>& q_xy, const std::vector<double>& masses);
StabilityReport stability_scan(const Configuration& q, const Masses& masses);

} // namespace ccs
