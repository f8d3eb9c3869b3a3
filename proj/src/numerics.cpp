#include "slitdiff/numerics.hpp"

#include "slitdiff/errors.hpp"

namespace slitdiff {

double trapezoid(const std::vector<double>& values, double h) {
    if (values.size() < 2) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    sum -= 0.5 * (values.front() + values.back());
    return sum * h;
}

Complex trapezoid(const std::vector<Complex>& values, double h) {
    if (values.size() < 2) return {0.0, 0.0};
    Complex sum{0.0, 0.0};
    for (const Complex& v : values) sum += v;
    sum -= 0.5 * (values.front() + values.back());
    return sum * h;
}

double trapezoid_l2_norm(const std::vector<Complex>& values, double h) {
    if (values.size() < 2) return 0.0;
    double sum = 0.0;
    for (const Complex& v : values) sum += std::norm(v);
    sum -= 0.5 * (std::norm(values.front()) + std::norm(values.back()));
    return std::sqrt(sum * h);
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    if (n < 2) throw InvalidInputError("uniform_grid needs at least 2 points");
    if (!(a < b)) throw InvalidInputError("uniform_grid needs a < b");
    std::vector<double> xs(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = a + h * static_cast<double>(i);
    xs.back() = b;
    return xs;
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace slitdiff
