#include "slitdiff/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slitdiff {

namespace {

constexpr double pi = std::numbers::pi;

Complex interpolate(const Sampled& wf, double x) {
    if (wf.xs.size() < 2) throw InvalidInputError("sampled wavefunction needs at least 2 points");
    if (x < wf.xs.front() || x > wf.xs.back()) return {0.0, 0.0};
    auto it = std::upper_bound(wf.xs.begin(), wf.xs.end(), x);
    if (it == wf.xs.end()) return wf.values.back();
    if (it == wf.xs.begin()) return wf.values.front();
    const std::size_t hi = static_cast<std::size_t>(it - wf.xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - wf.xs[lo]) / (wf.xs[hi] - wf.xs[lo]);
    return wf.values[lo] + t * (wf.values[hi] - wf.values[lo]);
}

} // namespace

bool is_slit_anchored(const WaveFunction& wf) {
    return std::holds_alternative<CosineHump>(wf) || std::holds_alternative<TaperedGaussian>(wf);
}

std::optional<bool> has_square_integrable_derivative(const WaveFunction& wf) {
    if (std::holds_alternative<Sampled>(wf)) return std::nullopt;
    return true;
}

void validate_wavefunction(const WaveFunction& wf) {
    if (const auto* g = std::get_if<Gaussian>(&wf)) {
        if (!(g->width > 0.0)) throw InvalidInputError("gaussian width must be positive");
    } else if (const auto* t = std::get_if<TaperedGaussian>(&wf)) {
        if (!(t->s > 0.0)) throw InvalidInputError("tapered gaussian s must be positive");
    } else if (const auto* s = std::get_if<Sampled>(&wf)) {
        if (s->xs.size() < 2) throw InvalidInputError("sampled wavefunction needs at least 2 points");
        if (s->xs.size() != s->values.size())
            throw InvalidInputError("sampled grid and values differ in length");
        for (std::size_t i = 0; i + 1 < s->xs.size(); ++i)
            if (!(s->xs[i] < s->xs[i + 1]))
                throw InvalidInputError("sampled grid must be strictly increasing");
        for (const Complex& v : s->values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InvalidInputError("sampled values must be finite");
    }
}

Complex evaluate(const WaveFunction& wf, double slit_width, double x) {
    if (!(slit_width > 0.0)) throw InvalidInputError("slit width must be positive");
    if (const auto* pw = std::get_if<PlaneWave>(&wf)) {
        return unit_phase(pw->k * x);
    }
    if (const auto* g = std::get_if<Gaussian>(&wf)) {
        const double s2 = g->width * g->width;
        const double amp = std::pow(2.0 * pi * s2, -0.25);
        const double d = x - g->center;
        return {amp * std::exp(-d * d / (4.0 * s2)), 0.0};
    }
    if (std::holds_alternative<CosineHump>(wf)) {
        const double half = 0.5 * slit_width;
        if (x <= -half || x >= half) return {0.0, 0.0};
        return {std::sqrt(2.0 / slit_width) * std::cos(pi * x / slit_width), 0.0};
    }
    if (const auto* t = std::get_if<TaperedGaussian>(&wf)) {
        const double half = 0.5 * slit_width;
        if (x <= -half || x >= half) return {0.0, 0.0};
        return {std::exp(-x * x / (4.0 * t->s * t->s)) * std::cos(pi * x / slit_width), 0.0};
    }
    return interpolate(std::get<Sampled>(wf), x);
}

SampledState sample(const WaveFunction& wf, double slit_width, double a, double b, std::size_t n,
                    const PhysicalUnits& units) {
    if (n < 2) throw InvalidInputError("sample needs at least 2 points");
    if (!(a < b)) throw InvalidInputError("sample needs a < b");
    units.validate();
    validate_wavefunction(wf);
    SampledState state;
    state.xmin = a;
    state.xmax = b;
    state.units = units;
    state.values.resize(n);
    const std::vector<double> xs = uniform_grid(a, b, n);
    for (std::size_t i = 0; i < n; ++i) state.values[i] = evaluate(wf, slit_width, xs[i]);
    return state;
}

double l2_norm(const SampledState& state) {
    return trapezoid_l2_norm(state.values, state.spacing());
}

SampledState normalize(const SampledState& state) {
    const double norm = l2_norm(state);
    if (!(norm > 0.0)) throw DegenerateStateError("cannot normalize a zero-norm state");
    SampledState out = state;
    for (Complex& v : out.values) v /= norm;
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double m = std::abs(out.values[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    const Complex peak = out.values[imax];
    if (peak.imag() == 0.0) {
        if (peak.real() < 0.0)
            for (Complex& v : out.values) v = -v;
    } else {
        const Complex rot = unit_phase(-std::arg(peak));
        for (Complex& v : out.values) v *= rot;
    }
    return out;
}

} // namespace slitdiff
