#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slitdiff/analysis.hpp"

namespace {

struct CommonFlags {
    CLI::App* cmd = nullptr;
    std::string family;
    std::vector<std::string> params;
    double slit_width = 0.0;
    double slit_center = 0.0;
    double hbar = 0.0;
    double pmax = 0.0;
    std::size_t np = 0;
    std::size_t nx = 0;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    f.cmd = cmd;
    cmd->add_option("--family", f.family,
                    "wavefunction family: plane-wave, gaussian, cosine-hump, tapered-gaussian");
    cmd->add_option("--param", f.params, "family parameter as key=value (repeatable)");
    cmd->add_option("--slit-width", f.slit_width, "slit width");
    cmd->add_option("--slit-center", f.slit_center, "slit center");
    cmd->add_option("--hbar", f.hbar, "reduced Planck constant");
    cmd->add_option("--pmax", f.pmax, "momentum window half-width (default 200*hbar/width)");
    cmd->add_option("--np", f.np, "momentum grid points, odd");
    cmd->add_option("--nx", f.nx, "position grid points");
    cmd->add_option("--out", f.out, "output path; default is standard output");
    cmd->add_option("--format", f.format, "output format: json or csv");
    cmd->add_option("--seed", f.seed, "seed echoed into the report");
    cmd->add_option("--config", f.config_path, "JSON config file; explicit flags override it");
}

std::pair<std::string, double> parse_param(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw slitdiff::InvalidInputError("--param needs key=value, got: " + text);
    const std::string key = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw slitdiff::InvalidInputError("--param value is not a number: " + text);
    }
    if (used != value.size())
        throw slitdiff::InvalidInputError("--param value is not a number: " + text);
    return {key, parsed};
}

slitdiff::AnalysisConfig build_config(const CommonFlags& f, const std::string& default_format) {
    slitdiff::AnalysisConfig config;
    config.format = default_format;
    if (f.cmd->count("--config") > 0) {
        std::ifstream in(f.config_path, std::ios::binary);
        if (!in) throw slitdiff::InvalidInputError("cannot read config file: " + f.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        config = slitdiff::config_from_json(text.str(), config);
    }
    if (f.cmd->count("--family") > 0) config.family = f.family;
    if (f.cmd->count("--param") > 0) {
        for (const std::string& p : f.params) {
            const auto [key, value] = parse_param(p);
            config.parameters[key] = value;
        }
    }
    if (f.cmd->count("--slit-width") > 0) config.slit.width = f.slit_width;
    if (f.cmd->count("--slit-center") > 0) config.slit.center = f.slit_center;
    if (f.cmd->count("--hbar") > 0) config.units.hbar = f.hbar;
    if (f.cmd->count("--pmax") > 0) config.p_max = f.pmax;
    if (f.cmd->count("--np") > 0) config.np = f.np;
    if (f.cmd->count("--nx") > 0) config.nx = f.nx;
    if (f.cmd->count("--out") > 0) config.out = f.out;
    if (f.cmd->count("--format") > 0) config.format = f.format;
    if (f.cmd->count("--seed") > 0) config.seed = f.seed;
    return config;
}

// Writes through a temporary so a failed run never leaves a partial file.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp(target);
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw std::runtime_error("failed writing output file: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw std::runtime_error("cannot move output into place: " + target.string());
    }
}

void require_format(const slitdiff::AnalysisConfig& config, const std::string& wanted,
                    const std::string& command) {
    if (config.format != wanted)
        throw slitdiff::InvalidInputError(command + " emits " + wanted + "; got --format " +
                                          config.format);
}

int run_analyze(const CommonFlags& f) {
    slitdiff::AnalysisConfig config = build_config(f, "json");
    require_format(config, "json", "analyze");
    const slitdiff::AnalysisReport report = slitdiff::analyze(config);
    write_output(config.out, slitdiff::report_to_json(report));
    return 0;
}

int run_spectrum(const CommonFlags& f) {
    slitdiff::AnalysisConfig config = build_config(f, "csv");
    require_format(config, "csv", "spectrum");
    const slitdiff::WaveFunction wf =
        slitdiff::make_wavefunction(config.family, config.parameters, config.slit);
    const slitdiff::PreparedState prepared =
        slitdiff::project(wf, config.slit, config.units, config.nx, config.overlap_tolerance);
    const slitdiff::MomentumGrid grid =
        slitdiff::make_momentum_grid(config.resolved_p_max(), config.np);
    write_output(config.out, slitdiff::spectrum_to_csv(slitdiff::fourier_transform(prepared, grid)));
    return 0;
}

int run_variational(const CommonFlags& f, std::size_t n_max) {
    slitdiff::AnalysisConfig config = build_config(f, "json");
    require_format(config, "json", "variational");
    const slitdiff::SineBasis basis{n_max, config.slit};
    const slitdiff::VariationalResult result = slitdiff::minimize(basis, config.units);
    write_output(config.out, slitdiff::variational_to_json(result, basis, config.units));
    return 0;
}

int run_limit_scan(const CommonFlags& f, const std::vector<double>& s_values) {
    slitdiff::AnalysisConfig config = build_config(f, "csv");
    require_format(config, "csv", "limit-scan");
    const std::vector<double> s =
        s_values.empty() ? slitdiff::default_scan_s_values(config.slit.width) : s_values;
    const slitdiff::FamilyScan scan =
        slitdiff::gaussian_limit_scan(s, config.slit, config.units, config.nx);
    write_output(config.out, slitdiff::scan_to_csv(scan, config.units, config.slit));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-slit diffraction uncertainty analysis"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, spectrum_flags, variational_flags, scan_flags;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "project a state through the slit and report moments and bounds");
    add_common(analyze_cmd, analyze_flags);
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "emit the momentum spectrum as CSV");
    add_common(spectrum_cmd, spectrum_flags);
    CLI::App* variational_cmd =
        app.add_subcommand("variational", "minimize the Rayleigh quotient over the sine basis");
    add_common(variational_cmd, variational_flags);
    std::size_t n_max = 8;
    variational_cmd->add_option("--nmax", n_max, "number of sine modes");
    CLI::App* scan_cmd =
        app.add_subcommand("limit-scan", "sweep the tapered-gaussian family toward small widths");
    add_common(scan_cmd, scan_flags);
    std::vector<double> s_values;
    scan_cmd->add_option("--s", s_values, "taper widths, strictly decreasing (default w/4..w/32)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (analyze_cmd->parsed()) return run_analyze(analyze_flags);
        if (spectrum_cmd->parsed()) return run_spectrum(spectrum_flags);
        if (variational_cmd->parsed()) return run_variational(variational_flags, n_max);
        return run_limit_scan(scan_flags, s_values);
    } catch (const slitdiff::ZeroOverlapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const slitdiff::RouteInconsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const slitdiff::ResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
