#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace slitdiff {

using Complex = std::complex<double>;

/// Composite trapezoidal rule on a uniform grid with spacing h.
double trapezoid(const std::vector<double>& values, double h);

/// Trapezoidal rule for complex integrands.
Complex trapezoid(const std::vector<Complex>& values, double h);

/// sqrt(integral of |values|^2) on a uniform grid with spacing h.
double trapezoid_l2_norm(const std::vector<Complex>& values, double h);

/// exp(i*angle) with exact conjugate symmetry: unit_phase(-a) == conj(unit_phase(a)).
inline Complex unit_phase(double angle) {
    const double a = std::abs(angle);
    Complex z(std::cos(a), std::sin(a));
    return angle < 0.0 ? std::conj(z) : z;
}

/// n evenly spaced points covering [a, b], endpoints included. n >= 2.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// Minimize a smooth 1-d function on [a, b] by golden-section search.
double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol);

} // namespace slitdiff
