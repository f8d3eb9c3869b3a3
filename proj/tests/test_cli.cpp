#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double pi = 3.14159265358979323846;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const char* exe = std::getenv("SLITDIFF_CLI");
    REQUIRE(exe != nullptr);
    const std::string cmd = std::string(exe) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = output;
    return result;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "slitdiff_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string strip_duration(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("duration_seconds") == std::string::npos) out += line + "\n";
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

TEST_CASE("analyze reports the extremal product on stdout") {
    const RunResult r = run_cli("analyze --family cosine-hump --np 2001 --pmax 60");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["moments"]["sigma_p"]["kind"] == "finite");
    CHECK(std::abs(doc["moments"]["sigma_p"]["value"].get<double>() - pi) < 1e-6);
    CHECK(doc["bounds"]["slit_ok"] == true);
    CHECK(doc["bounds"]["kennard_ok"] == true);
    CHECK(doc["config"]["p_max"] == 60.0);
}

TEST_CASE("analyze flags the flat state as divergent with the slit period") {
    const RunResult r = run_cli("analyze --family plane-wave --np 2001 --pmax 60");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["moments"]["sigma_p"]["kind"] == "divergent");
    const double period = doc["tail"]["period"].get<double>();
    CHECK(std::abs(period - 2.0 * pi) / (2.0 * pi) < 0.01);
    CHECK(doc["bounds"]["divergent_case"] == true);
}

TEST_CASE("analyze output is reproducible") {
    const std::string args = "analyze --family tapered-gaussian --param s=0.2 --np 1001 --pmax 40 --seed 9";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(strip_duration(a.output) == strip_duration(b.output));
    CHECK(json::parse(a.output)["config"]["seed"] == 9);
}

TEST_CASE("spectrum writes a csv file atomically") {
    const fs::path out = scratch_dir() / "spectrum.csv";
    fs::remove(out);
    const RunResult r =
        run_cli("spectrum --family cosine-hump --nx 257 --np 41 --pmax 20 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.empty());
    REQUIRE(fs::exists(out));
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
    const std::string csv = slurp(out);
    CHECK(csv.rfind("p,re,im,density,p2density\n", 0) == 0);
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n' ? 1 : 0;
    CHECK(rows == 42);
}

TEST_CASE("config file settings are overridden by explicit flags") {
    const fs::path cfg = scratch_dir() / "config.json";
    std::ofstream(cfg) << R"({"family": "plane-wave", "np": 2001, "p_max": 60.0})";

    const RunResult from_file = run_cli("analyze --config " + cfg.string());
    REQUIRE(from_file.exit_code == 0);
    CHECK(json::parse(from_file.output)["config"]["family"] == "plane-wave");

    const RunResult overridden =
        run_cli("analyze --config " + cfg.string() + " --family cosine-hump");
    REQUIRE(overridden.exit_code == 0);
    const json doc = json::parse(overridden.output);
    CHECK(doc["config"]["family"] == "cosine-hump");
    CHECK(doc["config"]["np"] == 2001);
}

TEST_CASE("variational emits the assembled spectrum") {
    const RunResult r = run_cli("variational --nmax 4");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(std::abs(doc["min_sigma_p_sq"].get<double>() - pi * pi) < 1e-6);
    CHECK(doc["assembled_eigenvalues"].size() == 4);
}

TEST_CASE("limit-scan emits the two monotone trends") {
    const RunResult r = run_cli("limit-scan");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "s,sigma_x,sigma_p,product_sigma_over_hbar_half,product_slit_over_pi_hbar");
    std::vector<double> sigma_ratio, slit_ratio;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int i = 0; i < 3; ++i) std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        sigma_ratio.push_back(std::stod(cell));
        std::getline(cells, cell, ',');
        slit_ratio.push_back(std::stod(cell));
    }
    REQUIRE(sigma_ratio.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(sigma_ratio[i] < sigma_ratio[i - 1]);
        CHECK(slit_ratio[i] > slit_ratio[i - 1]);
    }
    CHECK(sigma_ratio.back() < 1.05);
    CHECK(slit_ratio.back() > 2.0);
}

TEST_CASE("a state missing the slit exits with the overlap code") {
    const RunResult r =
        run_cli("analyze --family gaussian --param center=100 --param width=0.1 --np 801 --pmax 40");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("an unresolvable scan width exits with the resolution code") {
    const RunResult r = run_cli("limit-scan --s 0.001");
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("need at least") != std::string::npos);
    CHECK(r.output.find("7751") != std::string::npos);
}

TEST_CASE("usage errors exit with code one") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("analyze --no-such-flag").exit_code == 1);
    CHECK(run_cli("analyze --family does-not-exist --np 101 --pmax 20").exit_code == 1);
    CHECK(run_cli("analyze --format csv").exit_code == 1);
    CHECK(run_cli("spectrum --format json --np 41 --pmax 20 --nx 129").exit_code == 1);
    CHECK(run_cli("analyze --param k").exit_code == 1);
    CHECK(run_cli("analyze --param k=abc").exit_code == 1);
    CHECK(run_cli("analyze --config /no/such/file.json").exit_code == 1);
    CHECK(run_cli("analyze --np 800 --pmax 20").exit_code == 1);
}

TEST_CASE("rejected config fields exit with code one") {
    const fs::path cfg = scratch_dir() / "bad.json";
    std::ofstream(cfg) << R"({"slitwidth": 2.0})";
    const RunResult r = run_cli("analyze --config " + cfg.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("unknown config field") != std::string::npos);
}

TEST_CASE("help exits cleanly and names the subcommands") {
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("analyze") != std::string::npos);
    CHECK(r.output.find("limit-scan") != std::string::npos);
}

TEST_CASE("a failed run leaves no partial output file") {
    const fs::path out = scratch_dir() / "never.json";
    fs::remove(out);
    const RunResult r = run_cli(
        "analyze --family gaussian --param center=100 --param width=0.1 --np 801 --pmax 40 --out " +
        out.string());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
}
