#pragma once

#include <cstdint>
#include <vector>

#include "slitdiff/moments.hpp"

namespace slitdiff {

// Dirichlet sine modes u_n(x) = sqrt(2/w) sin(n pi (x + w/2)/w) on the slit,
// n = 1..n_max; u_1 is the extremal cosine hump.
struct SineBasis {
    std::size_t n_max = 1;
    Slit slit;

    void validate() const {
        if (n_max < 1) throw InvalidInputError("sine basis needs n_max >= 1");
        slit.validate();
    }
};

// x in slit-centered coordinates; exactly 0 outside [-w/2, w/2].
double sine_basis_value(const SineBasis& basis, std::size_t n, double x);

struct VariationalResult {
    double min_sigma_p_sq = 0.0;
    std::vector<double> coefficients;
    double sigma_p_dx = 0.0;
    double l2_error_vs_ground = 0.0;
    std::vector<double> assembled_eigenvalues;
};

struct FamilyScanPoint {
    double s = 0.0;
    double sigma_x = 0.0;
    double sigma_p = 0.0;
    double product_sigma = 0.0;
    double product_slit = 0.0;
};

struct FamilyScan {
    std::vector<FamilyScanPoint> points;
};

double rayleigh_quotient(const std::vector<double>& coefficients, const SineBasis& basis,
                         const PhysicalUnits& units);

VariationalResult minimize(const SineBasis& basis, const PhysicalUnits& units);

PreparedState random_admissible(std::uint64_t seed, const SineBasis& basis, double decay = 1.0,
                                const PhysicalUnits& units = {});

FamilyScan gaussian_limit_scan(const std::vector<double>& s_values, const Slit& slit,
                               const PhysicalUnits& units,
                               std::size_t n = kDefaultPositionPoints);

std::vector<double> default_scan_s_values(double width);

} // namespace slitdiff
