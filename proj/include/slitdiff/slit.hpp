#pragma once

#include <optional>
#include <utility>

#include "slitdiff/wavefunction.hpp"

namespace slitdiff {

struct Slit {
    double width = 1.0;
    double center = 0.0;

    void validate() const {
        if (!(width > 0.0)) throw InvalidInputError("slit width must be positive");
    }
};

struct AdmissibilityTolerances {
    double boundary = 1e-8;
    double growth = 1.05;
};

struct AdmissibilityReport {
    bool boundary_vanishes = false;
    bool derivative_square_integrable = false;
    bool admissible = false;
    std::pair<double, double> boundary_magnitudes{0.0, 0.0};  // |phi(-w/2)|*sqrt(w), |phi(+w/2)|*sqrt(w)
};

// Restriction of a wavefunction to a slit, renormalized.  The state lives on
// slit-centered coordinates [-w/2, w/2]; boundary_left/right are the one-sided
// limits of the unnormalized restriction.
struct PreparedState {
    SampledState state;
    double overlap_norm = 0.0;
    Complex boundary_left{0.0, 0.0};
    Complex boundary_right{0.0, 0.0};
    PhysicalUnits units;
    Slit slit;
    WaveFunction source = PlaneWave{0.0};
    std::optional<bool> derivative_l2_exact;
};

inline constexpr double kOverlapTolerance = 1e-12;
inline constexpr std::size_t kDefaultPositionPoints = 4097;

PreparedState project(const WaveFunction& wf, const Slit& slit, const PhysicalUnits& units,
                      std::size_t n = kDefaultPositionPoints,
                      double overlap_tol = kOverlapTolerance);

// One-sided boundary amplitudes of the normalized state at -w/2 and +w/2.
std::pair<Complex, Complex> boundary_values(const PreparedState& prepared);

AdmissibilityReport classify_admissibility(const PreparedState& prepared,
                                           const AdmissibilityTolerances& tol = {});

} // namespace slitdiff
