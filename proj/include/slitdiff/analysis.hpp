#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "slitdiff/variational.hpp"

namespace slitdiff {

inline constexpr const char* kToolVersion = "0.1.0";

struct AnalysisConfig {
    std::string family = "cosine-hump";
    std::map<std::string, double> parameters;
    Slit slit;
    PhysicalUnits units;
    std::size_t nx = kDefaultPositionPoints;
    std::size_t np = kDefaultMomentumPoints;
    std::optional<double> p_max;  // absolute momentum; default 200 hbar/width
    AdmissibilityTolerances tolerances;
    double overlap_tolerance = kOverlapTolerance;
    std::string format = "json";
    std::string out;  // empty means standard output
    std::optional<std::uint64_t> seed;

    double resolved_p_max() const {
        return p_max ? *p_max
                     : kDefaultMomentumWindowFactor * units.hbar / slit.width;
    }
};

struct AnalysisReport {
    AnalysisConfig config;
    AdmissibilityReport admissibility;
    MomentReport moments;
    BoundCheck bounds;
    std::optional<TailModel> tail;
    std::optional<std::string> spectrum_file;
    std::string version = kToolVersion;
    double duration_seconds = 0.0;
};

WaveFunction make_wavefunction(const std::string& family,
                               const std::map<std::string, double>& parameters,
                               const Slit& slit);

AnalysisReport analyze(const AnalysisConfig& config);

std::string report_to_json(const AnalysisReport& report);
std::string spectrum_to_csv(const MomentumSpectrum& spectrum);
std::string variational_to_json(const VariationalResult& result, const SineBasis& basis,
                                const PhysicalUnits& units);
std::string scan_to_csv(const FamilyScan& scan, const PhysicalUnits& units, const Slit& slit);

AnalysisConfig config_from_json(const std::string& text, const AnalysisConfig& base = {});

} // namespace slitdiff
