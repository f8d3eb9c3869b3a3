#pragma once

#include <utility>
#include <vector>

#include "slitdiff/slit.hpp"

namespace slitdiff {

// Symmetric uniform grid on [-p_max, p_max]; n_p odd so p = 0 is a node and
// values[j] == -values[n_p - 1 - j] exactly.
struct MomentumGrid {
    double p_max = 0.0;
    std::size_t n_p = 0;
    std::vector<double> values;

    double spacing() const { return p_max / static_cast<double>((n_p - 1) / 2); }
};

MomentumGrid make_momentum_grid(double p_max, std::size_t n_p);

struct MomentumSpectrum {
    MomentumGrid grid;
    std::vector<Complex> amplitudes;
    PhysicalUnits units;
    Slit source_slit;
};

struct DerivativeState {
    SampledState interior;
    std::pair<Complex, Complex> edge_terms;  // (-phi(+w/2), +phi(-w/2))
};

struct TailModel {
    double period = 0.0;
    double mean_level = 0.0;
    std::pair<double, double> fit_window{0.0, 0.0};
    double residual = 0.0;
};

// phi_hat(p) = (2*pi*hbar)^{-1/2} Integral e^{-i p x / hbar} phi(x) dx over the
// slit.  Resamples the state internally when the position spacing is coarser
// than 1/16 of the shortest oscillation 2*pi*hbar/p_max.
MomentumSpectrum fourier_transform(const PreparedState& prepared, const MomentumGrid& grid);

MomentumGrid default_momentum_grid(const Slit& slit, const PhysicalUnits& units);

DerivativeState derivative(const PreparedState& prepared);

double plancherel_residual(const PreparedState& prepared, const MomentumSpectrum& spectrum);

TailModel tail_asymptote(const MomentumSpectrum& spectrum, std::pair<double, double> window);

inline constexpr std::size_t kDefaultMomentumPoints = 16001;
inline constexpr double kDefaultMomentumWindowFactor = 200.0;  // p_max = 200 hbar/width

} // namespace slitdiff
