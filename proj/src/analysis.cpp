#include "slitdiff/analysis.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>
#include <set>

#include "json.hpp"

namespace slitdiff {

namespace {

using nlohmann::json;

constexpr double pi = std::numbers::pi;

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown_params(const std::map<std::string, double>& params,
                           const std::set<std::string>& allowed, const std::string& family) {
    for (const auto& [key, value] : params)
        if (allowed.find(key) == allowed.end())
            throw InvalidInputError("unknown parameter '" + key + "' for family " + family);
}

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json tail_to_json(const TailModel& tail) {
    return json{{"fit_window", {tail.fit_window.first, tail.fit_window.second}},
                {"mean_level", tail.mean_level},
                {"period", tail.period},
                {"residual", tail.residual}};
}

json config_to_json(const AnalysisConfig& config) {
    json parameters = json::object();
    for (const auto& [key, value] : config.parameters) parameters[key] = value;
    json out{{"family", config.family},
             {"format", config.format},
             {"hbar", config.units.hbar},
             {"np", config.np},
             {"nx", config.nx},
             {"out", config.out},
             {"overlap_tolerance", config.overlap_tolerance},
             {"p_max", config.resolved_p_max()},
             {"parameters", parameters},
             {"slit_center", config.slit.center},
             {"slit_width", config.slit.width},
             {"tolerance_boundary", config.tolerances.boundary},
             {"tolerance_growth", config.tolerances.growth}};
    if (config.seed)
        out["seed"] = *config.seed;
    else
        out["seed"] = nullptr;
    return out;
}

} // namespace

WaveFunction make_wavefunction(const std::string& family,
                               const std::map<std::string, double>& parameters,
                               const Slit& slit) {
    if (family == "plane-wave") {
        reject_unknown_params(parameters, {"k"}, family);
        return PlaneWave{require_param(parameters, "k", 0.0)};
    }
    if (family == "gaussian") {
        reject_unknown_params(parameters, {"center", "width"}, family);
        return Gaussian{require_param(parameters, "center", 0.0),
                        require_param(parameters, "width", slit.width)};
    }
    if (family == "cosine-hump") {
        reject_unknown_params(parameters, {}, family);
        return CosineHump{};
    }
    if (family == "tapered-gaussian") {
        reject_unknown_params(parameters, {"s"}, family);
        return TaperedGaussian{require_param(parameters, "s", slit.width / 4.0)};
    }
    throw InvalidInputError("unknown wavefunction family: " + family);
}

AnalysisReport analyze(const AnalysisConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.slit.validate();
    config.units.validate();
    if (config.nx < 2) throw InvalidInputError("nx must be at least 2");
    if (!(config.tolerances.boundary > 0.0)) throw InvalidInputError("boundary tolerance must be positive");
    if (!(config.tolerances.growth > 1.0)) throw InvalidInputError("growth tolerance must exceed 1");
    if (!(config.overlap_tolerance > 0.0)) throw InvalidInputError("overlap tolerance must be positive");

    const WaveFunction wf = make_wavefunction(config.family, config.parameters, config.slit);
    const PreparedState prepared =
        project(wf, config.slit, config.units, config.nx, config.overlap_tolerance);
    const AdmissibilityReport admissibility = classify_admissibility(prepared, config.tolerances);
    const MomentumGrid grid = make_momentum_grid(config.resolved_p_max(), config.np);
    const MomentumSpectrum spectrum = fourier_transform(prepared, grid);
    const MomentReport moments = moment_report(prepared, admissibility, spectrum);

    AnalysisReport report;
    report.config = config;
    report.admissibility = admissibility;
    report.moments = moments;
    report.bounds = check_bounds(moments, config.slit);
    if (const auto* divergent = std::get_if<DivergentSigmaP>(&moments.sigma_p))
        report.tail = divergent->tail;
    const auto end = std::chrono::steady_clock::now();
    report.duration_seconds = std::chrono::duration<double>(end - start).count();
    return report;
}

std::string report_to_json(const AnalysisReport& report) {
    json moments{{"mean_p", report.moments.mean_p},
                 {"mean_x", report.moments.mean_x},
                 {"sigma_x", report.moments.sigma_x}};
    if (const auto* finite = std::get_if<FiniteSigmaP>(&report.moments.sigma_p)) {
        moments["sigma_p"] = json{{"kind", "finite"},
                                  {"route", to_string(finite->route)},
                                  {"route_discrepancy", finite->route_discrepancy},
                                  {"value", finite->value}};
    } else {
        const auto& divergent = std::get<DivergentSigmaP>(report.moments.sigma_p);
        moments["sigma_p"] = json{{"kind", "divergent"}, {"tail", tail_to_json(divergent.tail)}};
    }
    moments["product_sigma"] =
        report.moments.product_sigma ? json(*report.moments.product_sigma) : json(nullptr);
    moments["product_slit"] =
        report.moments.product_slit ? json(*report.moments.product_slit) : json(nullptr);

    json bounds{{"divergent_case", report.bounds.divergent_case},
                {"kennard_lhs",
                 report.bounds.kennard_lhs ? json(*report.bounds.kennard_lhs) : json(nullptr)},
                {"kennard_ok", report.bounds.kennard_ok},
                {"kennard_rhs", report.bounds.kennard_rhs},
                {"slit_lhs", report.bounds.slit_lhs ? json(*report.bounds.slit_lhs) : json(nullptr)},
                {"slit_ok", report.bounds.slit_ok},
                {"slit_rhs", report.bounds.slit_rhs}};

    json admissibility{{"admissible", report.admissibility.admissible},
                       {"boundary_magnitudes",
                        {report.admissibility.boundary_magnitudes.first,
                         report.admissibility.boundary_magnitudes.second}},
                       {"boundary_vanishes", report.admissibility.boundary_vanishes},
                       {"derivative_square_integrable",
                        report.admissibility.derivative_square_integrable}};

    json root{{"admissibility", admissibility},
              {"bounds", bounds},
              {"config", config_to_json(report.config)},
              {"duration_seconds", report.duration_seconds},
              {"moments", moments},
              {"spectrum_file", report.spectrum_file ? json(*report.spectrum_file) : json(nullptr)},
              {"tail", report.tail ? tail_to_json(*report.tail) : json(nullptr)},
              {"version", report.version}};
    return root.dump(2) + "\n";
}

std::string spectrum_to_csv(const MomentumSpectrum& spectrum) {
    std::string out = "p,re,im,density,p2density\n";
    for (std::size_t i = 0; i < spectrum.grid.n_p; ++i) {
        const double p = spectrum.grid.values[i];
        const Complex a = spectrum.amplitudes[i];
        const double density = std::norm(a);
        out += format_sig(p);
        out += ',';
        out += format_sig(a.real());
        out += ',';
        out += format_sig(a.imag());
        out += ',';
        out += format_sig(density);
        out += ',';
        out += format_sig(p * p * density);
        out += '\n';
    }
    return out;
}

std::string variational_to_json(const VariationalResult& result, const SineBasis& basis,
                                const PhysicalUnits& units) {
    json root{{"assembled_eigenvalues", result.assembled_eigenvalues},
              {"coefficients", result.coefficients},
              {"hbar", units.hbar},
              {"l2_error_vs_ground", result.l2_error_vs_ground},
              {"min_sigma_p_sq", result.min_sigma_p_sq},
              {"n_max", basis.n_max},
              {"sigma_p_dx", result.sigma_p_dx},
              {"slit_width", basis.slit.width},
              {"version", kToolVersion}};
    return root.dump(2) + "\n";
}

std::string scan_to_csv(const FamilyScan& scan, const PhysicalUnits& units, const Slit& slit) {
    (void)slit;
    std::string out = "s,sigma_x,sigma_p,product_sigma_over_hbar_half,product_slit_over_pi_hbar\n";
    for (const FamilyScanPoint& point : scan.points) {
        out += format_sig(point.s);
        out += ',';
        out += format_sig(point.sigma_x);
        out += ',';
        out += format_sig(point.sigma_p);
        out += ',';
        out += format_sig(point.product_sigma / (0.5 * units.hbar));
        out += ',';
        out += format_sig(point.product_slit / (pi * units.hbar));
        out += '\n';
    }
    return out;
}

AnalysisConfig config_from_json(const std::string& text, const AnalysisConfig& base) {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw InvalidInputError("config document must be a JSON object");
    static const std::set<std::string> known{
        "family",          "parameters",        "slit_width",       "slit_center",
        "hbar",            "nx",                "np",               "p_max",
        "tolerance_boundary", "tolerance_growth", "overlap_tolerance", "format",
        "out",             "seed"};
    for (const auto& [key, value] : doc.items())
        if (known.find(key) == known.end())
            throw InvalidInputError("unknown config field: " + key);

    AnalysisConfig config = base;
    if (doc.contains("family")) config.family = doc.at("family").get<std::string>();
    if (doc.contains("parameters")) {
        for (const auto& [key, value] : doc.at("parameters").items())
            config.parameters[key] = value.get<double>();
    }
    if (doc.contains("slit_width")) config.slit.width = doc.at("slit_width").get<double>();
    if (doc.contains("slit_center")) config.slit.center = doc.at("slit_center").get<double>();
    if (doc.contains("hbar")) config.units.hbar = doc.at("hbar").get<double>();
    if (doc.contains("nx")) config.nx = doc.at("nx").get<std::size_t>();
    if (doc.contains("np")) config.np = doc.at("np").get<std::size_t>();
    if (doc.contains("p_max") && !doc.at("p_max").is_null())
        config.p_max = doc.at("p_max").get<double>();
    if (doc.contains("tolerance_boundary"))
        config.tolerances.boundary = doc.at("tolerance_boundary").get<double>();
    if (doc.contains("tolerance_growth"))
        config.tolerances.growth = doc.at("tolerance_growth").get<double>();
    if (doc.contains("overlap_tolerance"))
        config.overlap_tolerance = doc.at("overlap_tolerance").get<double>();
    if (doc.contains("format")) config.format = doc.at("format").get<std::string>();
    if (doc.contains("out")) config.out = doc.at("out").get<std::string>();
    if (doc.contains("seed") && !doc.at("seed").is_null())
        config.seed = doc.at("seed").get<std::uint64_t>();
    return config;
}

} // namespace slitdiff
