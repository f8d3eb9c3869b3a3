#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slitdiff/analysis.hpp"

namespace py = pybind11;

namespace {

std::string analyze_json(const std::string& config) {
    const slitdiff::AnalysisConfig parsed = slitdiff::config_from_json(config);
    return slitdiff::report_to_json(slitdiff::analyze(parsed));
}

std::string spectrum_csv(const std::string& config) {
    const slitdiff::AnalysisConfig parsed = slitdiff::config_from_json(config);
    const slitdiff::WaveFunction wf =
        slitdiff::make_wavefunction(parsed.family, parsed.parameters, parsed.slit);
    const slitdiff::PreparedState prepared =
        slitdiff::project(wf, parsed.slit, parsed.units, parsed.nx, parsed.overlap_tolerance);
    const slitdiff::MomentumGrid grid =
        slitdiff::make_momentum_grid(parsed.resolved_p_max(), parsed.np);
    return slitdiff::spectrum_to_csv(slitdiff::fourier_transform(prepared, grid));
}

std::string variational_json(std::size_t n_max, double width, double hbar) {
    const slitdiff::SineBasis basis{n_max, slitdiff::Slit{width, 0.0}};
    slitdiff::PhysicalUnits units;
    units.hbar = hbar;
    return slitdiff::variational_to_json(slitdiff::minimize(basis, units), basis, units);
}

std::string limit_scan_csv(const std::vector<double>& s_values, double width, double hbar) {
    const slitdiff::Slit slit{width, 0.0};
    slitdiff::PhysicalUnits units;
    units.hbar = hbar;
    const std::vector<double> s =
        s_values.empty() ? slitdiff::default_scan_s_values(width) : s_values;
    return slitdiff::scan_to_csv(slitdiff::gaussian_limit_scan(s, slit, units), units, slit);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "single-slit diffraction uncertainty analysis";
    m.attr("__version__") = slitdiff::kToolVersion;

    py::register_exception<slitdiff::ZeroOverlapError>(m, "ZeroOverlapError", PyExc_ValueError);
    py::register_exception<slitdiff::RouteInconsistencyError>(m, "RouteInconsistencyError",
                                                              PyExc_RuntimeError);
    py::register_exception<slitdiff::InvalidWindowError>(m, "InvalidWindowError", PyExc_ValueError);
    py::register_exception<slitdiff::ResolutionError>(m, "ResolutionError", PyExc_ValueError);

    m.def("analyze_json", &analyze_json, py::arg("config"),
          "Run the slit analysis described by a JSON config string; returns the JSON report.");
    m.def("spectrum_csv", &spectrum_csv, py::arg("config"),
          "Momentum spectrum for a JSON config string, as CSV text.");
    m.def("variational_json", &variational_json, py::arg("n_max") = 8, py::arg("width") = 1.0,
          py::arg("hbar") = 1.0,
          "Minimize the momentum spread over the sine basis; returns the JSON result.");
    m.def("limit_scan_csv", &limit_scan_csv, py::arg("s_values") = std::vector<double>{},
          py::arg("width") = 1.0, py::arg("hbar") = 1.0,
          "Sweep the tapered-gaussian family toward small taper widths, as CSV text.");
}
