#include <CLI11.hpp>

#include "hodgelab/experiments.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

using namespace hodgelab;

// Exit codes: 0 every check passed, 1 at least one check failed, 2 the run
// could not be carried out (bad configuration, bad seed, unwritable output).
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int resolveThreads() {
    const char* env = std::getenv("HODGELAB_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1)
        throw ConfigError("HODGELAB_THREADS must be a positive integer, got \"" +
                          std::string(env) + "\"");
    // The numerical core is single-threaded, so any cap >= 1 is honoured.
    return int(v);
}

void printChecks(const ExperimentReport& rep) {
    for (const CheckRecord& c : rep.checks)
        std::printf("[%s] %-24s %12.5g <= %-10.5g  %s\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.residual, c.tolerance, c.anchor.c_str());
    int passed = 0;
    for (const CheckRecord& c : rep.checks) passed += c.pass;
    std::printf("%s (%d/%d checks)\n", rep.allPass() ? "PASS" : "FAIL", passed,
                int(rep.checks.size()));
}

int finish(ExperimentReport& rep, const std::string& outDir) {
    if (!outDir.empty()) {
        writeReport(rep, outDir);
        std::printf("report: %s/report.json\n", outDir.c_str());
    }
    printChecks(rep);
    return rep.allPass() ? kExitPass : kExitFail;
}

int runMain(const std::string& configPath, const std::string& outDir) {
    RunConfig cfg = loadConfigFile(configPath);
    cfg.threads = resolveThreads();
    ExperimentReport rep = runExperiment(cfg);
    return finish(rep, outDir);
}

int calibrateMain(int n, int K, int oversample, int samples, std::uint64_t seed,
                  const std::string& outDir) {
    nlohmann::json j = {{"experiment", "calibrate"},
                        {"geometry", {{"n", n}, {"K", K}, {"oversample", oversample}}},
                        {"sampleCount", samples},
                        {"rngSeed", seed}};
    RunConfig cfg = parseConfig(j);
    cfg.threads = resolveThreads();
    ExperimentReport rep = runExperiment(cfg);
    std::printf("C1hat: %.17g\nC2hat: %.17g\n", rep.summary["calibration"]["C1hat"].get<double>(),
                rep.summary["calibration"]["C2hat"].get<double>());
    return finish(rep, outDir);
}

int majorantMain(const std::string& c, const std::string& x1, int order, const std::string& tau,
                 const std::string& outDir) {
    nlohmann::json m = {{"c", c}, {"x1", x1}, {"order", order}};
    if (!tau.empty()) m["tau"] = tau;
    nlohmann::json j = {{"experiment", "majorant"}, {"majorant", m}};
    RunConfig cfg = parseConfig(j);
    cfg.threads = resolveThreads();
    ExperimentReport rep = runExperiment(cfg);
    if (rep.summary["radiusFinite"].get<bool>())
        std::printf("radius: %s\n", rep.summary["radius"].get<std::string>().c_str());
    else
        std::printf("radius: infinite\n");
    std::printf("tau: %s\nS(tau): %.17g\n", rep.summary["tau"].get<std::string>().c_str(),
                rep.summary["closedValue"].get<double>());
    return finish(rep, outDir);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hodgelab: numerical and exact checks for Hodge-theoretic "
                 "deformation machinery on flat complex tori"};
    app.require_subcommand(1);

    std::string configPath, outDir;
    CLI::App* run = app.add_subcommand("run", "run an experiment described by a JSON config");
    run->add_option("--config", configPath, "experiment configuration file")->required();
    run->add_option("--out", outDir, "output directory for report.json and CSV tables")
        ->required();

    int n = 2, K = 6, oversample = 2, samples = 200;
    std::uint64_t seed = 1;
    std::string calOut;
    CLI::App* cal = app.add_subcommand("calibrate",
                                       "estimate the smoothing and contraction constants");
    cal->add_option("--n", n, "complex dimension");
    cal->add_option("--K", K, "band limit");
    cal->add_option("--oversample", oversample, "grid oversampling factor");
    cal->add_option("--samples", samples, "random draws after the deterministic sweep");
    cal->add_option("--seed", seed, "random stream seed");
    cal->add_option("--out", calOut, "optional output directory");

    std::string cArg, x1Arg, tauArg, majOut;
    int order = 50;
    CLI::App* maj = app.add_subcommand("majorant",
                                       "exact quadratic-recursion majorant series");
    maj->add_option("--c", cArg, "recursion constant (rational literal)")->required();
    maj->add_option("--x1", x1Arg, "first coefficient (rational literal)")->required();
    maj->add_option("--order", order, "number of coefficients");
    maj->add_option("--tau", tauArg, "evaluation point (rational literal)");
    maj->add_option("--out", majOut, "optional output directory");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return runMain(configPath, outDir);
        if (cal->parsed()) return calibrateMain(n, K, oversample, samples, seed, calOut);
        if (maj->parsed()) return majorantMain(cArg, x1Arg, order, tauArg, majOut);
        return kExitError;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
}
