#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "slitdiff/spectral.hpp"

namespace slitdiff {

enum class SigmaPRoute { Derivative, MomentumQuadrature, Both };

std::string to_string(SigmaPRoute route);

struct FiniteSigmaP {
    double value = 0.0;             // authoritative (derivative-route) sigma_p
    SigmaPRoute route = SigmaPRoute::Derivative;
    double route_discrepancy = 0.0;  // |deriv - quad| / deriv when both ran
};

struct DivergentSigmaP {
    TailModel tail;
};

using SigmaPClassification = std::variant<FiniteSigmaP, DivergentSigmaP>;

struct MomentReport {
    double mean_x = 0.0;
    double sigma_x = 0.0;
    double mean_p = 0.0;
    SigmaPClassification sigma_p = FiniteSigmaP{};
    std::optional<double> product_sigma;  // sigma_p * sigma_x, finite case only
    std::optional<double> product_slit;   // sigma_p * width, finite case only
    PhysicalUnits units;
};

struct BoundCheck {
    std::optional<double> kennard_lhs;  // absent in the divergent case
    double kennard_rhs = 0.0;
    std::optional<double> slit_lhs;
    double slit_rhs = 0.0;
    bool kennard_ok = false;
    bool slit_ok = false;
    bool divergent_case = false;
};

std::pair<double, double> sigma_x(const PreparedState& prepared);

// Fast path: mean_p and sigma_p straight from the interior derivative.  Valid
// only for states with vanishing boundary values.
std::pair<double, double> sigma_p_derivative(const PreparedState& prepared);

SigmaPClassification sigma_p(const PreparedState& prepared, const AdmissibilityReport& report,
                             const MomentumSpectrum& spectrum);

double cutoff_second_moment(const MomentumSpectrum& spectrum, double P);

MomentReport moment_report(const PreparedState& prepared, const AdmissibilityReport& report,
                           const MomentumSpectrum& spectrum);

BoundCheck check_bounds(const MomentReport& report, const Slit& slit);

inline constexpr double kBoundRelativeSlack = 1e-9;
inline constexpr double kRouteErrorTolerance = 1e-2;

} // namespace slitdiff
