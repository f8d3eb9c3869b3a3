#include "slitdiff/slit.hpp"

#include <cmath>

#include "slitdiff/spectral.hpp"

namespace slitdiff {

PreparedState project(const WaveFunction& wf, const Slit& slit, const PhysicalUnits& units,
                      std::size_t n, double overlap_tol) {
    slit.validate();
    units.validate();
    validate_wavefunction(wf);
    if (n < 2) throw InvalidInputError("projection needs at least 2 grid points");

    const double half = 0.5 * slit.width;
    const bool anchored = is_slit_anchored(wf);
    const std::vector<double> ys = uniform_grid(-half, half, n);

    SampledState restricted;
    restricted.xmin = -half;
    restricted.xmax = half;
    restricted.units = units;
    restricted.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = anchored ? ys[i] : ys[i] + slit.center;
        restricted.values[i] = evaluate(wf, slit.width, x);
    }

    PreparedState prepared;
    prepared.overlap_norm = l2_norm(restricted);
    if (!(prepared.overlap_norm > overlap_tol))
        throw ZeroOverlapError("state has no overlap with the slit");
    prepared.boundary_left = restricted.values.front();
    prepared.boundary_right = restricted.values.back();
    prepared.state = normalize(restricted);
    prepared.units = units;
    prepared.slit = slit;
    prepared.source = wf;
    prepared.derivative_l2_exact = has_square_integrable_derivative(wf);
    return prepared;
}

std::pair<Complex, Complex> boundary_values(const PreparedState& prepared) {
    return {prepared.state.values.front(), prepared.state.values.back()};
}

namespace {

double interior_derivative_norm(const PreparedState& prepared) {
    return l2_norm(derivative(prepared).interior);
}

} // namespace

AdmissibilityReport classify_admissibility(const PreparedState& prepared,
                                           const AdmissibilityTolerances& tol) {
    AdmissibilityReport report;
    const auto [left, right] = boundary_values(prepared);
    const double scale = std::sqrt(prepared.slit.width);
    report.boundary_magnitudes = {std::abs(left) * scale, std::abs(right) * scale};
    report.boundary_vanishes = report.boundary_magnitudes.first <= tol.boundary &&
                               report.boundary_magnitudes.second <= tol.boundary;

    if (prepared.derivative_l2_exact) {
        report.derivative_square_integrable = *prepared.derivative_l2_exact;
    } else {
        const std::size_t n = prepared.state.size();
        const double coarse = interior_derivative_norm(prepared);
        const PreparedState refined =
            project(prepared.source, prepared.slit, prepared.units, 2 * n - 1);
        const double fine = interior_derivative_norm(refined);
        if (coarse == 0.0)
            report.derivative_square_integrable = fine == 0.0;
        else
            report.derivative_square_integrable = fine / coarse < tol.growth;
    }

    report.admissible = report.boundary_vanishes && report.derivative_square_integrable;
    return report;
}

} // namespace slitdiff
