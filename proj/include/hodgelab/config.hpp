#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgelab/fourier_form.hpp"

namespace hodgelab {

// Raised on any malformed, inconsistent, or out-of-range configuration.
// The driver maps it to exit code 2 before any output file is created.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeedConfig {
    std::string kind = "divergence-free-synthetic";
    int m = 1;
    int band = 1;
    std::uint64_t rngSeed = 1;
    double targetC1Norm = -1;             // <= 0 means "auto"
    std::vector<std::string> fieldFiles;  // kind "explicit": form files, config-relative
};

struct RunConfig {
    std::string experiment;
    TorusGeometry geometry{2, 6, 2};
    SeedConfig seed;
    int order = 4;         // series truncation order N
    int sampleCount = 200; // random draws (calibration, random-form experiments)
    int instancesPerTag = 50;
    std::uint64_t rngSeed = 1;
    std::vector<double> tGrid{0.0, 0.5, 0.9};
    std::map<std::string, double> tolerances;

    // majorant experiment (exact arithmetic; c, x1, tau are rational literals)
    std::string majorantC = "1";
    std::string majorantX1 = "1";
    std::string majorantTau;  // empty: half the convergence radius
    int majorantOrder = 50;

    int threads = 1;  // resolved from HODGELAB_THREADS
    nlohmann::json raw;

    double tolerance(const std::string& name, double fallback) const;
};

const std::vector<std::string>& experimentKinds();
const std::vector<std::string>& seedKinds();

// Parses and validates; every violation throws ConfigError with the offending
// key in the message.  `baseDir` resolves relative seed field paths.
RunConfig parseConfig(const nlohmann::json& j, const std::string& baseDir = ".");

RunConfig loadConfigFile(const std::string& path);

} // namespace hodgelab
