#include "slitdiff/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slitdiff {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> position_density(const PreparedState& prepared) {
    std::vector<double> rho(prepared.state.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(prepared.state.values[i]);
    return rho;
}

// Integrates p^2 |phi_hat|^2 over grid nodes with |p| <= P.
double windowed_second_moment(const MomentumSpectrum& spectrum, double P) {
    const std::size_t m = (spectrum.grid.n_p - 1) / 2;
    const double dp = spectrum.grid.spacing();
    const std::size_t k = std::min(m, static_cast<std::size_t>(std::floor(P / dp + 1e-9)));
    if (k == 0) return 0.0;
    std::vector<double> vals(2 * k + 1);
    for (std::size_t i = 0; i <= 2 * k; ++i) {
        const std::size_t j = m - k + i;
        const double p = spectrum.grid.values[j];
        vals[i] = p * p * std::norm(spectrum.amplitudes[j]);
    }
    return trapezoid(vals, dp);
}

} // namespace

std::string to_string(SigmaPRoute route) {
    switch (route) {
        case SigmaPRoute::Derivative: return "derivative";
        case SigmaPRoute::MomentumQuadrature: return "momentum-quadrature";
        default: return "both";
    }
}

std::pair<double, double> sigma_x(const PreparedState& prepared) {
    const std::vector<double> rho = position_density(prepared);
    const double h = prepared.state.spacing();
    const double mass = trapezoid(rho, h);
    std::vector<double> weighted(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) weighted[i] = prepared.state.x(i) * rho[i];
    const double mean_centered = trapezoid(weighted, h) / mass;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double d = prepared.state.x(i) - mean_centered;
        weighted[i] = d * d * rho[i];
    }
    const double variance = trapezoid(weighted, h) / mass;
    return {mean_centered + prepared.slit.center, std::sqrt(std::max(0.0, variance))};
}

namespace {

// (mean_p, <p^2>) on one grid; both carry O(h^2) discretization error.
std::pair<double, double> derivative_route_moments(const PreparedState& prepared) {
    const double hbar = prepared.units.hbar;
    const DerivativeState ds = derivative(prepared);
    const double h = prepared.state.spacing();
    const double dnorm = l2_norm(ds.interior);
    std::vector<double> cross(prepared.state.size());
    for (std::size_t i = 0; i < cross.size(); ++i)
        cross[i] = (std::conj(prepared.state.values[i]) * ds.interior.values[i]).imag();
    return {hbar * trapezoid(cross, h), hbar * hbar * dnorm * dnorm};
}

} // namespace

std::pair<double, double> sigma_p_derivative(const PreparedState& prepared) {
    // Richardson extrapolation over a doubled grid cancels the h^2 term; the
    // extremal state sits exactly on the pi*hbar floor, so the plain one-grid
    // value would land measurably below it.
    const auto [mean_coarse, second_coarse] = derivative_route_moments(prepared);
    const PreparedState refined =
        project(prepared.source, prepared.slit, prepared.units, 2 * prepared.state.size() - 1);
    const auto [mean_fine, second_fine] = derivative_route_moments(refined);
    const double mean_p = (4.0 * mean_fine - mean_coarse) / 3.0;
    const double second = (4.0 * second_fine - second_coarse) / 3.0;
    return {mean_p, std::sqrt(std::max(0.0, second - mean_p * mean_p))};
}

SigmaPClassification sigma_p(const PreparedState& prepared, const AdmissibilityReport& report,
                             const MomentumSpectrum& spectrum) {
    const double hbar = prepared.units.hbar;
    const double width = prepared.slit.width;
    if (!report.admissible) {
        const double p_max = spectrum.grid.p_max;
        const double lo = std::max(8.0 * pi * hbar / width, 0.15 * p_max);
        const double hi = 0.9 * p_max;
        return DivergentSigmaP{tail_asymptote(spectrum, {lo, hi})};
    }

    const auto [mean_p, sp_deriv] = sigma_p_derivative(prepared);

    // Independent check: windowed second moment extrapolated with a c/P tail
    // model fitted at P and P/2.
    const double p_max = spectrum.grid.p_max;
    const double m2_full = cutoff_second_moment(spectrum, p_max);
    const double m2_half = cutoff_second_moment(spectrum, 0.5 * p_max);
    const double second_extrap = 2.0 * m2_full - m2_half;
    const double dp = spectrum.grid.spacing();
    std::vector<double> pdens(spectrum.grid.n_p);
    for (std::size_t i = 0; i < spectrum.grid.n_p; ++i)
        pdens[i] = spectrum.grid.values[i] * std::norm(spectrum.amplitudes[i]);
    const double mean_q = trapezoid(pdens, dp);
    const double sp_quad = std::sqrt(std::max(0.0, second_extrap - mean_q * mean_q));

    const double discrepancy = sp_deriv > 0.0 ? std::abs(sp_deriv - sp_quad) / sp_deriv : 0.0;
    if (discrepancy > kRouteErrorTolerance)
        throw RouteInconsistencyError(
            "derivative and momentum-quadrature routes disagree; refine the grids");
    return FiniteSigmaP{sp_deriv, SigmaPRoute::Both, discrepancy};
}

double cutoff_second_moment(const MomentumSpectrum& spectrum, double P) {
    if (P < 0.0) throw InvalidInputError("cutoff momentum must be nonnegative");
    if (P > spectrum.grid.p_max * (1.0 + 1e-12))
        throw InvalidInputError("cutoff momentum exceeds the computed range");
    return windowed_second_moment(spectrum, P);
}

MomentReport moment_report(const PreparedState& prepared, const AdmissibilityReport& report,
                           const MomentumSpectrum& spectrum) {
    MomentReport out;
    out.units = prepared.units;
    const auto [mx, sx] = sigma_x(prepared);
    out.mean_x = mx;
    out.sigma_x = sx;
    out.sigma_p = sigma_p(prepared, report, spectrum);
    if (const auto* finite = std::get_if<FiniteSigmaP>(&out.sigma_p)) {
        out.mean_p = sigma_p_derivative(prepared).first;
        out.product_sigma = finite->value * sx;
        out.product_slit = finite->value * prepared.slit.width;
    } else {
        const double dp = spectrum.grid.spacing();
        std::vector<double> pdens(spectrum.grid.n_p), dens(spectrum.grid.n_p);
        for (std::size_t i = 0; i < spectrum.grid.n_p; ++i) {
            dens[i] = std::norm(spectrum.amplitudes[i]);
            pdens[i] = spectrum.grid.values[i] * dens[i];
        }
        const double mass = trapezoid(dens, dp);
        out.mean_p = mass > 0.0 ? trapezoid(pdens, dp) / mass : 0.0;
    }
    return out;
}

BoundCheck check_bounds(const MomentReport& report, const Slit& slit) {
    BoundCheck out;
    out.kennard_rhs = 0.5 * report.units.hbar;
    out.slit_rhs = pi * report.units.hbar;
    if (std::holds_alternative<DivergentSigmaP>(report.sigma_p)) {
        out.divergent_case = true;
        out.kennard_ok = true;
        out.slit_ok = true;
        return out;
    }
    const double sp = std::get<FiniteSigmaP>(report.sigma_p).value;
    out.kennard_lhs = sp * report.sigma_x;
    out.slit_lhs = sp * slit.width;
    out.kennard_ok = *out.kennard_lhs >= out.kennard_rhs * (1.0 - kBoundRelativeSlack);
    out.slit_ok = *out.slit_lhs >= out.slit_rhs * (1.0 - kBoundRelativeSlack);
    return out;
}

} // namespace slitdiff
