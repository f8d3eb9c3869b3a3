#include "slitdiff/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace slitdiff {

namespace {

constexpr double pi = std::numbers::pi;

double tail_oscillation_period(const Slit& slit, const PhysicalUnits& units) {
    return 2.0 * pi * units.hbar / slit.width;
}

// Mean of p^2 |phi_hat|^2 over the outermost oscillation period, both ends of
// the window averaged together.
double outer_period_mean(const MomentumSpectrum& spectrum) {
    const double T = tail_oscillation_period(spectrum.source_slit, spectrum.units);
    const double cut = spectrum.grid.p_max - T;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < spectrum.grid.n_p; ++i) {
        const double p = spectrum.grid.values[i];
        if (std::abs(p) >= cut) {
            sum += p * p * std::norm(spectrum.amplitudes[i]);
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

} // namespace

MomentumGrid make_momentum_grid(double p_max, std::size_t n_p) {
    if (!(p_max > 0.0) || !std::isfinite(p_max))
        throw InvalidInputError("p_max must be positive and finite");
    if (n_p < 3 || n_p % 2 == 0) throw InvalidInputError("momentum grid needs an odd n_p >= 3");
    MomentumGrid grid;
    grid.p_max = p_max;
    grid.n_p = n_p;
    grid.values.resize(n_p);
    const std::size_t m = (n_p - 1) / 2;
    const double dp = p_max / static_cast<double>(m);
    grid.values[m] = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        const double p = dp * static_cast<double>(k);
        grid.values[m + k] = p;
        grid.values[m - k] = -p;
    }
    return grid;
}

MomentumGrid default_momentum_grid(const Slit& slit, const PhysicalUnits& units) {
    slit.validate();
    units.validate();
    return make_momentum_grid(kDefaultMomentumWindowFactor * units.hbar / slit.width,
                              kDefaultMomentumPoints);
}

MomentumSpectrum fourier_transform(const PreparedState& prepared, const MomentumGrid& grid) {
    if (grid.values.size() != grid.n_p || grid.n_p < 3)
        throw InvalidInputError("momentum grid is not initialized");
    const double hbar = prepared.units.hbar;

    // Resolve the fastest oscillation e^{-i p_max x / hbar} with >= 16 points
    // per period.
    const double max_spacing = (2.0 * pi * hbar / grid.p_max) / 16.0;
    PreparedState refined;
    const SampledState* st = &prepared.state;
    if (prepared.state.spacing() > max_spacing) {
        const std::size_t n_fine =
            static_cast<std::size_t>(std::ceil(prepared.slit.width / max_spacing)) + 1;
        refined = project(prepared.source, prepared.slit, prepared.units, n_fine);
        st = &refined.state;
    }

    const std::size_t n = st->size();
    const double h = st->spacing();
    const double x0 = st->xmin;
    const double x_end = st->xmax;
    const double norm_factor = h / std::sqrt(2.0 * pi * hbar);

    MomentumSpectrum spectrum;
    spectrum.grid = grid;
    spectrum.units = prepared.units;
    spectrum.source_slit = prepared.slit;
    spectrum.amplitudes.resize(grid.n_p);
    for (std::size_t j = 0; j < grid.n_p; ++j) {
        const double p = grid.values[j];
        Complex z = unit_phase(-p * x0 / hbar);
        const Complex step = unit_phase(-p * h / hbar);
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            acc += st->values[i] * z;
            z *= step;
        }
        acc -= 0.5 * (st->values.front() * unit_phase(-p * x0 / hbar) +
                      st->values.back() * unit_phase(-p * x_end / hbar));
        spectrum.amplitudes[j] = norm_factor * acc;
    }
    return spectrum;
}

DerivativeState derivative(const PreparedState& prepared) {
    const SampledState& st = prepared.state;
    const std::size_t n = st.size();
    const double h = st.spacing();
    DerivativeState out;
    out.interior.xmin = st.xmin;
    out.interior.xmax = st.xmax;
    out.interior.units = st.units;
    out.interior.values.resize(n);
    out.interior.values[0] = (st.values[1] - st.values[0]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out.interior.values[i] = (st.values[i + 1] - st.values[i - 1]) / (2.0 * h);
    out.interior.values[n - 1] = (st.values[n - 1] - st.values[n - 2]) / h;
    const auto [left, right] = boundary_values(prepared);
    out.edge_terms = {-right, left};
    return out;
}

double plancherel_residual(const PreparedState& prepared, const MomentumSpectrum& spectrum) {
    const double dp = spectrum.grid.spacing();
    std::vector<double> density(spectrum.grid.n_p);
    for (std::size_t i = 0; i < spectrum.grid.n_p; ++i)
        density[i] = std::norm(spectrum.amplitudes[i]);
    const double mass = trapezoid(density, dp);

    const double T = tail_oscillation_period(prepared.slit, prepared.units);
    double residual = std::abs(1.0 - mass);
    if (spectrum.grid.p_max < 2.0 * T) return residual;

    const double tail_mean = outer_period_mean(spectrum);
    residual += 2.0 * tail_mean / spectrum.grid.p_max;

    // For states with vanishing boundary values the second moment is also
    // reachable through the derivative; fold in the relative gap.
    const double scale = std::sqrt(prepared.slit.width);
    const auto [left, right] = boundary_values(prepared);
    const AdmissibilityTolerances tol;
    const bool boundary_ok =
        std::abs(left) * scale <= tol.boundary && std::abs(right) * scale <= tol.boundary;
    if (boundary_ok && prepared.derivative_l2_exact.value_or(false)) {
        const double hbar = prepared.units.hbar;
        const DerivativeState ds = derivative(prepared);
        const double dnorm = l2_norm(ds.interior);
        const double d2 = hbar * hbar * dnorm * dnorm;
        std::vector<double> p2density(spectrum.grid.n_p);
        for (std::size_t i = 0; i < spectrum.grid.n_p; ++i) {
            const double p = spectrum.grid.values[i];
            p2density[i] = p * p * density[i];
        }
        const double q2 = trapezoid(p2density, dp) + 2.0 * tail_mean * spectrum.grid.p_max;
        if (d2 > 0.0) residual += std::abs(q2 - d2) / d2;
    }
    return residual;
}

TailModel tail_asymptote(const MomentumSpectrum& spectrum, std::pair<double, double> window) {
    const double hbar = spectrum.units.hbar;
    const double width = spectrum.source_slit.width;
    const double T_expected = tail_oscillation_period(spectrum.source_slit, spectrum.units);
    const auto [p_lo, p_hi] = window;
    if (!(p_lo < p_hi)) throw InvalidWindowError("tail window must have p_lo < p_hi");
    if (p_lo < 8.0 * pi * hbar / width)
        throw InvalidWindowError("tail window starts inside the central diffraction lobes");
    if (p_hi > spectrum.grid.p_max * (1.0 + 1e-12))
        throw InvalidWindowError("tail window exceeds the computed momentum range");
    if (p_hi - p_lo < 3.0 * T_expected)
        throw InvalidWindowError("tail window must span at least 3 oscillation periods");

    std::vector<double> ps, ys;
    for (std::size_t i = 0; i < spectrum.grid.n_p; ++i) {
        const double p = spectrum.grid.values[i];
        if (p >= p_lo && p <= p_hi) {
            ps.push_back(p);
            ys.push_back(p * p * std::norm(spectrum.amplitudes[i]));
        }
    }
    if (ps.size() < 16) throw InvalidWindowError("tail window contains too few grid points");

    double sum_y2 = 0.0;
    for (double y : ys) sum_y2 += y * y;

    // y = a + b cos(w p) + c sin(w p), linear in (a, b, c) at fixed w; scan w
    // around the slit frequency, then refine.
    const auto sse_and_params = [&](double omega) {
        Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
        Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const double cw = std::cos(omega * ps[i]);
            const double sw = std::sin(omega * ps[i]);
            const Eigen::Vector3d row(1.0, cw, sw);
            A += row * row.transpose();
            rhs += ys[i] * row;
        }
        const Eigen::Vector3d x = A.ldlt().solve(rhs);
        const double sse = sum_y2 - 2.0 * x.dot(rhs) + x.dot(A * x);
        return std::pair<double, Eigen::Vector3d>(sse, x);
    };
    const auto sse_of = [&](double omega) { return sse_and_params(omega).first; };

    const double omega_expected = 2.0 * pi / T_expected;
    const double span = p_hi - p_lo;
    const double step = (pi / 6.0) / span;
    double best_omega = omega_expected;
    double best_sse = sse_of(best_omega);
    for (double omega = 0.5 * omega_expected; omega <= 1.5 * omega_expected; omega += step) {
        const double s = sse_of(omega);
        if (s < best_sse) {
            best_sse = s;
            best_omega = omega;
        }
    }
    best_omega = golden_section_minimize(sse_of, best_omega - step, best_omega + step,
                                         1e-10 * omega_expected);

    const auto [sse, params] = sse_and_params(best_omega);
    TailModel model;
    model.period = 2.0 * pi / best_omega;
    model.mean_level = std::max(0.0, params[0]);
    model.fit_window = window;
    const double rms_y = std::sqrt(sum_y2 / static_cast<double>(ys.size()));
    model.residual =
        rms_y > 0.0 ? std::sqrt(std::max(0.0, sse) / static_cast<double>(ys.size())) / rms_y : 0.0;
    return model;
}

} // namespace slitdiff
