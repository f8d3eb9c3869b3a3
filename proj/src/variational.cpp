#include "slitdiff/variational.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

namespace slitdiff {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::size_t kAssemblyPoints = 32769;

double normal_draw(std::mt19937_64& rng) {
    // Box-Muller on raw 53-bit uniforms; std distributions are not
    // reproducible across standard libraries.
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

std::vector<double> combination_values(const SineBasis& basis, const std::vector<double>& c,
                                       const std::vector<double>& xs) {
    std::vector<double> values(xs.size(), 0.0);
    for (std::size_t n = 1; n <= c.size(); ++n) {
        if (c[n - 1] == 0.0) continue;
        for (std::size_t i = 0; i < xs.size(); ++i)
            values[i] += c[n - 1] * sine_basis_value(basis, n, xs[i]);
    }
    return values;
}

} // namespace

double sine_basis_value(const SineBasis& basis, std::size_t n, double x) {
    const double w = basis.slit.width;
    const double t = (x + 0.5 * w) / w;
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::sqrt(2.0 / w) * std::sin(static_cast<double>(n) * pi * t);
}

double rayleigh_quotient(const std::vector<double>& coefficients, const SineBasis& basis,
                         const PhysicalUnits& units) {
    basis.validate();
    units.validate();
    if (coefficients.empty() || coefficients.size() > basis.n_max)
        throw InvalidInputError("coefficient vector does not fit the basis");
    double num = 0.0, den = 0.0;
    for (std::size_t n = 1; n <= coefficients.size(); ++n) {
        const double c2 = coefficients[n - 1] * coefficients[n - 1];
        num += static_cast<double>(n) * static_cast<double>(n) * c2;
        den += c2;
    }
    if (!(den > 0.0)) throw InvalidInputError("coefficient vector must be nonzero");
    const double k = pi * units.hbar / basis.slit.width;
    return k * k * num / den;
}

VariationalResult minimize(const SineBasis& basis, const PhysicalUnits& units) {
    basis.validate();
    units.validate();
    const double w = basis.slit.width;
    const double hbar = units.hbar;
    const std::size_t nb = basis.n_max;

    // Stiffness matrix by quadrature: sample each mode, difference it, and
    // integrate the derivative products on a grid fine enough for 1e-8
    // agreement with the exact diagonal form.
    const std::size_t nq = kAssemblyPoints;
    const std::vector<double> xs = uniform_grid(-0.5 * w, 0.5 * w, nq);
    const double h = xs[1] - xs[0];
    std::vector<std::vector<double>> dmodes(nb, std::vector<double>(nq));
    for (std::size_t n = 1; n <= nb; ++n) {
        std::vector<double> u(nq);
        for (std::size_t i = 0; i < nq; ++i) u[i] = sine_basis_value(basis, n, xs[i]);
        std::vector<double>& du = dmodes[n - 1];
        du[0] = (u[1] - u[0]) / h;
        for (std::size_t i = 1; i + 1 < nq; ++i) du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
        du[nq - 1] = (u[nq - 1] - u[nq - 2]) / h;
    }
    Eigen::MatrixXd K(nb, nb);
    std::vector<double> prod(nq);
    for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = a; b < nb; ++b) {
            for (std::size_t i = 0; i < nq; ++i) prod[i] = dmodes[a][i] * dmodes[b][i];
            K(a, b) = K(b, a) = hbar * hbar * trapezoid(prod, h);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K);
    if (solver.info() != Eigen::Success)
        throw RouteInconsistencyError("eigenvalue solve failed on the assembled matrix");

    const double closed_form = hbar * hbar * pi * pi / (w * w);
    const double assembled_min = solver.eigenvalues()(0);
    if (std::abs(assembled_min - closed_form) > 1e-8 * closed_form)
        throw RouteInconsistencyError(
            "assembled minimum disagrees with the closed-form ground value");

    Eigen::VectorXd v = solver.eigenvectors().col(0);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0) v = -v;

    VariationalResult result;
    result.min_sigma_p_sq = closed_form;
    result.coefficients.assign(v.data(), v.data() + nb);
    result.sigma_p_dx = std::sqrt(closed_form) * w;
    double err2 = 0.0;
    for (std::size_t n = 0; n < nb; ++n) {
        const double target = n == 0 ? 1.0 : 0.0;
        err2 += (result.coefficients[n] - target) * (result.coefficients[n] - target);
    }
    result.l2_error_vs_ground = std::sqrt(err2);
    result.assembled_eigenvalues.assign(solver.eigenvalues().data(),
                                        solver.eigenvalues().data() + nb);
    return result;
}

PreparedState random_admissible(std::uint64_t seed, const SineBasis& basis, double decay,
                                const PhysicalUnits& units) {
    basis.validate();
    units.validate();
    if (!(decay > 0.5)) throw InvalidInputError("coefficient decay must exceed 1/2");

    std::mt19937_64 rng(seed);
    std::vector<double> c(basis.n_max);
    double norm2 = 0.0;
    for (std::size_t n = 1; n <= basis.n_max; ++n) {
        c[n - 1] = normal_draw(rng) / std::pow(static_cast<double>(n), decay + 1.0);
        norm2 += c[n - 1] * c[n - 1];
    }
    if (norm2 == 0.0) c[0] = 1.0;
    const double inv = 1.0 / std::sqrt(norm2 == 0.0 ? 1.0 : norm2);
    for (double& v : c) v *= inv;

    // The source carries a 4x oversampled grid so downstream refinement (the
    // Richardson step in the derivative route, transform resampling) lands on
    // exact nodes instead of interpolating.
    const double w = basis.slit.width;
    const std::size_t n_source = 4 * (kDefaultPositionPoints - 1) + 1;
    const std::vector<double> xs = uniform_grid(-0.5 * w, 0.5 * w, n_source);
    const std::vector<double> values = combination_values(basis, c, xs);
    Sampled source;
    source.xs.resize(n_source);
    for (std::size_t i = 0; i < n_source; ++i) source.xs[i] = xs[i] + basis.slit.center;
    source.values.assign(values.begin(), values.end());

    PreparedState prepared = project(source, basis.slit, units, kDefaultPositionPoints);
    prepared.derivative_l2_exact = true;
    return prepared;
}

FamilyScan gaussian_limit_scan(const std::vector<double>& s_values, const Slit& slit,
                               const PhysicalUnits& units, std::size_t n) {
    slit.validate();
    units.validate();
    if (s_values.empty()) throw InvalidInputError("scan needs at least one s value");
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] > 0.0) || !(s_values[i] < 0.5 * slit.width))
            throw InvalidInputError("scan values must satisfy 0 < s < width/2");
        if (i > 0 && !(s_values[i] < s_values[i - 1]))
            throw InvalidInputError("scan values must be strictly decreasing");
    }

    const double h = slit.width / static_cast<double>(n - 1);
    for (double s : s_values) {
        const auto points_across_peak = static_cast<long>(std::floor(4.0 * s / h)) + 1;
        if (points_across_peak < 32) {
            const long required =
                static_cast<long>(std::ceil(31.0 * slit.width / (4.0 * s))) + 1;
            throw ResolutionError("grid too coarse to resolve s = " + std::to_string(s) +
                                      "; need at least " + std::to_string(required) +
                                      " position points",
                                  required);
        }
    }

    const MomentumGrid grid = default_momentum_grid(slit, units);
    FamilyScan scan;
    for (double s : s_values) {
        const PreparedState prepared = project(TaperedGaussian{s}, slit, units, n);
        const AdmissibilityReport report = classify_admissibility(prepared);
        const MomentumSpectrum spectrum = fourier_transform(prepared, grid);
        const MomentReport moments = moment_report(prepared, report, spectrum);
        const double sp = std::get<FiniteSigmaP>(moments.sigma_p).value;
        scan.points.push_back({s, moments.sigma_x, sp, *moments.product_sigma,
                               *moments.product_slit});
    }
    return scan;
}

std::vector<double> default_scan_s_values(double width) {
    return {width / 4.0, width / 8.0, width / 16.0, width / 32.0};
}

} // namespace slitdiff
