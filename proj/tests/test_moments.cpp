#include "doctest.h"

#include <cmath>

#include "slitdiff/moments.hpp"

using namespace slitdiff;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalUnits kUnits{};
const Slit kSlit{1.0, 0.0};

MomentumSpectrum default_spectrum(const PreparedState& prepared) {
    return fourier_transform(prepared, default_momentum_grid(prepared.slit, prepared.units));
}

PreparedState boosted_hump(double k) {
    Sampled wf;
    wf.xs = uniform_grid(-0.5, 0.5, 16385);
    wf.values.resize(wf.xs.size());
    for (std::size_t i = 0; i < wf.xs.size(); ++i)
        wf.values[i] = evaluate(CosineHump{}, 1.0, wf.xs[i]) * unit_phase(k * wf.xs[i]);
    return project(wf, kSlit, kUnits);
}

} // namespace

TEST_CASE("sigma_x of the flat state is the uniform-density value") {
    const PreparedState prepared = project(PlaneWave{0.0}, kSlit, kUnits);
    const auto [mean, sigma] = sigma_x(prepared);
    CHECK(std::abs(mean) < 1e-12);
    CHECK(std::abs(sigma - 0.2886751345948129) < 1e-7);
}

TEST_CASE("sigma_x of the cosine hump") {
    const PreparedState prepared = project(CosineHump{}, kSlit, kUnits);
    const auto [mean, sigma] = sigma_x(prepared);
    CHECK(std::abs(mean) < 1e-12);
    CHECK(std::abs(sigma - 0.18075602759566398) < 1e-8);
}

TEST_CASE("sigma_x never exceeds half the width") {
    for (std::size_t n : {129u, 513u, 4097u}) {
        const auto [mean, sigma] = sigma_x(project(PlaneWave{0.0}, kSlit, kUnits, n));
        CHECK(sigma <= 0.5);
        CHECK(mean == mean);
    }
}

TEST_CASE("mean position is reported in the lab frame") {
    const PreparedState centered = project(Gaussian{0.1, 0.3}, Slit{1.0, 0.0}, kUnits);
    const PreparedState moved = project(Gaussian{2.6, 0.3}, Slit{1.0, 2.5}, kUnits);
    const auto [mean_a, sigma_a] = sigma_x(centered);
    const auto [mean_b, sigma_b] = sigma_x(moved);
    CHECK(std::abs(mean_b - mean_a - 2.5) < 1e-10);
    CHECK(std::abs(sigma_b - sigma_a) < 1e-12);
}

TEST_CASE("derivative-route sigma_p of the hump sits on the floor") {
    const PreparedState prepared = project(CosineHump{}, kSlit, kUnits);
    const auto [mean_p, sp] = sigma_p_derivative(prepared);
    CHECK(std::abs(mean_p) < 1e-12);
    CHECK(std::abs(sp - pi) < 1e-8);
}

TEST_CASE("a boosted state shifts mean momentum but not the spreads") {
    const PreparedState prepared = boosted_hump(2.0);
    const AdmissibilityReport report = classify_admissibility(prepared);
    CHECK(report.admissible);
    const auto [mean_p, sp] = sigma_p_derivative(prepared);
    CHECK(std::abs(mean_p - 2.0) < 1e-6);
    CHECK(std::abs(sp - pi) < 1e-6);
    const auto [mean_x, sx] = sigma_x(prepared);
    CHECK(std::abs(sx - 0.18075602759566398) < 1e-6);
}

TEST_CASE("both sigma_p routes agree for the hump") {
    const PreparedState prepared = project(CosineHump{}, kSlit, kUnits);
    const AdmissibilityReport report = classify_admissibility(prepared);
    const SigmaPClassification cls = sigma_p(prepared, report, default_spectrum(prepared));
    REQUIRE(std::holds_alternative<FiniteSigmaP>(cls));
    const FiniteSigmaP& finite = std::get<FiniteSigmaP>(cls);
    CHECK(finite.route == SigmaPRoute::Both);
    CHECK(std::abs(finite.value - pi) < 1e-6);
    CHECK(finite.route_discrepancy < 1e-3);
}

TEST_CASE("mismatched spectrum input trips the route guard") {
    const PreparedState hump = project(CosineHump{}, kSlit, kUnits);
    const AdmissibilityReport report = classify_admissibility(hump);
    const PreparedState other = project(TaperedGaussian{0.25}, kSlit, kUnits);
    CHECK_THROWS_AS(sigma_p(hump, report, default_spectrum(other)), RouteInconsistencyError);
}

TEST_CASE("boundary-carrying states classify as divergent") {
    for (const WaveFunction wf : {WaveFunction{PlaneWave{0.0}}, WaveFunction{Gaussian{0.0, 5.0}}}) {
        const PreparedState prepared = project(wf, kSlit, kUnits);
        const AdmissibilityReport report = classify_admissibility(prepared);
        CHECK_FALSE(report.admissible);
        const SigmaPClassification cls = sigma_p(prepared, report, default_spectrum(prepared));
        REQUIRE(std::holds_alternative<DivergentSigmaP>(cls));
        const TailModel& tail = std::get<DivergentSigmaP>(cls).tail;
        CHECK(std::abs(tail.period - 2.0 * pi) / (2.0 * pi) < 0.01);
        CHECK(tail.fit_window.first == 30.0);
        CHECK(tail.fit_window.second == 180.0);
    }
}

TEST_CASE("a vanishing boundary alone does not make sigma_p finite") {
    Sampled cusp;
    cusp.xs = uniform_grid(-0.5, 0.5, 65537);
    cusp.values.resize(cusp.xs.size());
    for (std::size_t i = 0; i < cusp.xs.size(); ++i) {
        const double d = 0.5 - std::abs(cusp.xs[i]);
        cusp.values[i] = Complex{d > 0.0 ? std::pow(d, 0.25) : 0.0, 0.0};
    }
    const PreparedState prepared = project(cusp, kSlit, kUnits);
    const AdmissibilityReport report = classify_admissibility(prepared);
    CHECK(report.boundary_vanishes);
    CHECK_FALSE(report.admissible);
    const MomentumSpectrum spectrum = fourier_transform(prepared, make_momentum_grid(200.0, 4001));
    const SigmaPClassification cls = sigma_p(prepared, report, spectrum);
    CHECK(std::holds_alternative<DivergentSigmaP>(cls));
}

TEST_CASE("cutoff second moment grows linearly for the flat state") {
    const PreparedState prepared = project(PlaneWave{0.0}, kSlit, kUnits);
    const MomentumSpectrum spectrum = default_spectrum(prepared);
    const double m80 = cutoff_second_moment(spectrum, 80.0);
    const double m160 = cutoff_second_moment(spectrum, 160.0);
    // M2(P) = (2/pi)(P - sin P)
    CHECK(std::abs(m80 - 51.56231096) / 51.56231096 < 1e-3);
    CHECK(std::abs(m160 - 101.7194731) / 101.7194731 < 1e-3);
    const double slope = (m160 - m80) / 80.0;
    CHECK(std::abs(slope - 2.0 / pi) / (2.0 / pi) < 0.02);
}

TEST_CASE("cutoff second moment saturates for the hump") {
    const PreparedState prepared = project(CosineHump{}, kSlit, kUnits);
    const MomentumSpectrum spectrum = default_spectrum(prepared);
    // M2(P) = pi^2 - 4 pi / P + 4 pi sin(P) / P^2
    CHECK(std::abs(cutoff_second_moment(spectrum, 180.0) - 9.799480503) < 1e-3);
    const double growth = cutoff_second_moment(spectrum, 200.0) - cutoff_second_moment(spectrum, 100.0);
    CHECK(growth > 0.0);
    CHECK(growth < 0.1);
}

TEST_CASE("moment report for the hump carries the uncertainty products") {
    const PreparedState prepared = project(CosineHump{}, kSlit, kUnits);
    const AdmissibilityReport report = classify_admissibility(prepared);
    const MomentReport moments = moment_report(prepared, report, default_spectrum(prepared));
    REQUIRE(moments.product_sigma.has_value());
    REQUIRE(moments.product_slit.has_value());
    CHECK(std::abs(*moments.product_slit / pi - 1.0) < 1e-6);
    CHECK(std::abs(*moments.product_sigma / 0.5 - 1.1357236167732239) < 1e-6);

    const BoundCheck bounds = check_bounds(moments, kSlit);
    CHECK(bounds.kennard_ok);
    CHECK(bounds.slit_ok);
    CHECK_FALSE(bounds.divergent_case);
    REQUIRE(bounds.kennard_lhs.has_value());
    CHECK(std::llround(100.0 * *bounds.kennard_lhs / bounds.kennard_rhs) == 114);
    CHECK(bounds.slit_rhs == pi);
    CHECK(bounds.kennard_rhs == 0.5);
}

TEST_CASE("moment report for a divergent state omits the products") {
    const PreparedState prepared = project(PlaneWave{0.0}, kSlit, kUnits);
    const AdmissibilityReport report = classify_admissibility(prepared);
    const MomentReport moments = moment_report(prepared, report, default_spectrum(prepared));
    CHECK_FALSE(moments.product_sigma.has_value());
    CHECK_FALSE(moments.product_slit.has_value());
    CHECK(std::abs(moments.mean_p) < 1e-9);

    const BoundCheck bounds = check_bounds(moments, kSlit);
    CHECK(bounds.divergent_case);
    CHECK_FALSE(bounds.kennard_lhs.has_value());
    CHECK_FALSE(bounds.slit_lhs.has_value());
    CHECK(bounds.kennard_ok);
    CHECK(bounds.slit_ok);
}

TEST_CASE("route names render for reports") {
    CHECK(to_string(SigmaPRoute::Derivative) == "derivative");
    CHECK(to_string(SigmaPRoute::MomentumQuadrature) == "momentum-quadrature");
    CHECK(to_string(SigmaPRoute::Both) == "both");
}
