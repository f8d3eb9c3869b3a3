#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "slitdiff/numerics.hpp"
#include "slitdiff/units.hpp"

namespace slitdiff {

struct PlaneWave {
    double k = 0.0;  // e^{ikx}
};

struct Gaussian {
    double center = 0.0;
    double width = 1.0;  // standard deviation of the position density
};

// The extremal state sqrt(2/w) cos(pi x / w) on the slit it is paired with.
struct CosineHump {};

// exp(-x^2/(4 s^2)) cos(pi x / w) on the slit, 0 outside; normalized at
// projection time.
struct TaperedGaussian {
    double s = 0.25;
};

struct Sampled {
    std::vector<double> xs;  // strictly increasing
    std::vector<Complex> values;
};

using WaveFunction = std::variant<PlaneWave, Gaussian, CosineHump, TaperedGaussian, Sampled>;

// Families defined in slit-centered coordinates rather than the lab frame.
bool is_slit_anchored(const WaveFunction& wf);

// Exact answer where the family makes it known; nullopt for raw samples,
// which get the grid-refinement test instead.
std::optional<bool> has_square_integrable_derivative(const WaveFunction& wf);

void validate_wavefunction(const WaveFunction& wf);

struct SampledState {
    double xmin = 0.0;
    double xmax = 1.0;
    std::vector<Complex> values;
    PhysicalUnits units;

    std::size_t size() const { return values.size(); }
    double spacing() const { return (xmax - xmin) / static_cast<double>(values.size() - 1); }
    double x(std::size_t i) const { return xmin + spacing() * static_cast<double>(i); }
};

Complex evaluate(const WaveFunction& wf, double slit_width, double x);

SampledState sample(const WaveFunction& wf, double slit_width, double a, double b, std::size_t n,
                    const PhysicalUnits& units);

double l2_norm(const SampledState& state);

// Unit L2 norm with a canonical global phase: the largest-magnitude value is
// made real and positive, so scaling the input by any nonzero complex number
// leaves the output unchanged.
SampledState normalize(const SampledState& state);

} // namespace slitdiff
