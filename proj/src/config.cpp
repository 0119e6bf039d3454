#include "hodgelab/config.hpp"

#include "hodgelab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace hodgelab {

const std::vector<std::string>& experimentKinds() {
    static const std::vector<std::string> kinds = {
        "verify-identities", "quasi-isometry", "dbar-inverse", "kuranishi",
        "kahler-family",     "majorant",       "calibrate"};
    return kinds;
}

const std::vector<std::string>& seedKinds() {
    static const std::vector<std::string> kinds = {"harmonic-constant",
                                                   "divergence-free-synthetic", "explicit"};
    return kinds;
}

double RunConfig::tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void rejectUnknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                   const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) fail(std::string("unknown key \"") + it.key() + "\" in " + where);
    }
}

long intField(const nlohmann::json& j, const char* key, long fallback, long lo, long hi) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer())
        fail(std::string(key) + " must be an integer");
    long v = it->get<long>();
    if (v < lo || v > hi)
        fail(std::string(key) + " = " + std::to_string(v) + " out of range [" +
             std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

std::uint64_t seedField(const nlohmann::json& j, const char* key, std::uint64_t fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() &&
                                     it->get<long long>() < 0))
        fail(std::string(key) + " must be a nonnegative integer");
    return it->get<std::uint64_t>();
}

std::string stringField(const nlohmann::json& j, const char* key, const std::string& fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_string()) fail(std::string(key) + " must be a string");
    return it->get<std::string>();
}

void checkRationalLiteral(const std::string& text, const char* key) {
    try {
        Rational r(text);
        (void)r;
    } catch (const std::exception&) {
        fail(std::string(key) + " = \"" + text + "\" is not a rational literal");
    }
}

} // namespace

RunConfig parseConfig(const nlohmann::json& j, const std::string& baseDir) {
    if (!j.is_object()) fail("top level must be an object");
    rejectUnknown(j,
                  {"experiment", "geometry", "seed", "order", "sampleCount", "instancesPerTag",
                   "rngSeed", "tGrid", "tolerances", "majorant"},
                  "top level");

    RunConfig cfg;
    cfg.raw = j;

    auto exp = j.find("experiment");
    if (exp == j.end() || !exp->is_string()) fail("\"experiment\" (string) is required");
    cfg.experiment = exp->get<std::string>();
    const auto& kinds = experimentKinds();
    if (std::find(kinds.begin(), kinds.end(), cfg.experiment) == kinds.end())
        fail("unknown experiment \"" + cfg.experiment + "\"");

    if (auto g = j.find("geometry"); g != j.end()) {
        if (!g->is_object()) fail("geometry must be an object");
        rejectUnknown(*g, {"n", "K", "oversample"}, "geometry");
        cfg.geometry.n = int(intField(*g, "n", 2, 1, 8));
        cfg.geometry.K = int(intField(*g, "K", 6, 1, 512));
        cfg.geometry.oversample = int(intField(*g, "oversample", 2, 2, 8));
        double axis = double(cfg.geometry.oversample) * (2.0 * cfg.geometry.K + 1);
        if (std::pow(axis, 2.0 * cfg.geometry.n) > 7e7)
            fail("geometry grid too large: (oversample*(2K+1))^(2n) exceeds 7e7 points");
    }

    if (auto s = j.find("seed"); s != j.end()) {
        if (!s->is_object()) fail("seed must be an object");
        rejectUnknown(*s, {"kind", "m", "band", "rngSeed", "targetC1Norm", "fields"}, "seed");
        cfg.seed.kind = stringField(*s, "kind", cfg.seed.kind);
        const auto& sk = seedKinds();
        if (std::find(sk.begin(), sk.end(), cfg.seed.kind) == sk.end())
            fail("unknown seed kind \"" + cfg.seed.kind + "\"");
        cfg.seed.m = int(intField(*s, "m", 1, 1, 8));
        cfg.seed.band = int(intField(*s, "band", 1, 1, cfg.geometry.K));
        cfg.seed.rngSeed = seedField(*s, "rngSeed", 1);
        if (auto t = s->find("targetC1Norm"); t != s->end()) {
            if (t->is_string()) {
                if (t->get<std::string>() != "auto")
                    fail("targetC1Norm must be a positive number or \"auto\"");
                cfg.seed.targetC1Norm = -1;
            } else if (t->is_number()) {
                cfg.seed.targetC1Norm = t->get<double>();
                if (!(cfg.seed.targetC1Norm > 0) || !std::isfinite(cfg.seed.targetC1Norm))
                    fail("targetC1Norm must be a positive number or \"auto\"");
            } else {
                fail("targetC1Norm must be a positive number or \"auto\"");
            }
        }
        if (auto f = s->find("fields"); f != s->end()) {
            if (!f->is_array()) fail("seed.fields must be an array of file paths");
            for (const auto& entry : *f) {
                if (!entry.is_string()) fail("seed.fields must be an array of file paths");
                std::filesystem::path p(entry.get<std::string>());
                if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
                cfg.seed.fieldFiles.push_back(p.string());
            }
        }
        if (cfg.seed.kind == "explicit") {
            if (cfg.seed.fieldFiles.empty()) fail("seed kind \"explicit\" requires seed.fields");
            if (int(cfg.seed.fieldFiles.size()) != cfg.seed.m)
                fail("seed.fields must list exactly m = " + std::to_string(cfg.seed.m) +
                     " files");
        } else if (!cfg.seed.fieldFiles.empty()) {
            fail("seed.fields is only valid for seed kind \"explicit\"");
        }
    }

    cfg.order = int(intField(j, "order", cfg.order, 1, 64));
    cfg.sampleCount = int(intField(j, "sampleCount", cfg.sampleCount, 1, 1000000));
    cfg.instancesPerTag = int(intField(j, "instancesPerTag", cfg.instancesPerTag, 1, 100000));
    cfg.rngSeed = seedField(j, "rngSeed", cfg.rngSeed);

    if (auto t = j.find("tGrid"); t != j.end()) {
        if (!t->is_array() || t->empty()) fail("tGrid must be a nonempty array of numbers");
        cfg.tGrid.clear();
        for (const auto& v : *t) {
            if (!v.is_number()) fail("tGrid must be a nonempty array of numbers");
            double x = v.get<double>();
            if (!(x >= 0 && x < 1)) fail("tGrid values must lie in [0, 1)");
            cfg.tGrid.push_back(x);
        }
    }

    if (auto t = j.find("tolerances"); t != j.end()) {
        if (!t->is_object()) fail("tolerances must be an object of name -> positive number");
        for (auto it = t->begin(); it != t->end(); ++it) {
            if (!it->is_number() || !(it->get<double>() > 0))
                fail("tolerance \"" + it.key() + "\" must be a positive number");
            cfg.tolerances[it.key()] = it->get<double>();
        }
    }

    if (auto m = j.find("majorant"); m != j.end()) {
        if (!m->is_object()) fail("majorant must be an object");
        rejectUnknown(*m, {"c", "x1", "tau", "order"}, "majorant");
        cfg.majorantC = stringField(*m, "c", cfg.majorantC);
        cfg.majorantX1 = stringField(*m, "x1", cfg.majorantX1);
        cfg.majorantTau = stringField(*m, "tau", cfg.majorantTau);
        cfg.majorantOrder = int(intField(*m, "order", cfg.majorantOrder, 1, 1000000));
        checkRationalLiteral(cfg.majorantC, "majorant.c");
        checkRationalLiteral(cfg.majorantX1, "majorant.x1");
        if (!cfg.majorantTau.empty()) checkRationalLiteral(cfg.majorantTau, "majorant.tau");
    }

    return cfg;
}

RunConfig loadConfigFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(path + ": " + e.what());
    }
    std::string base = std::filesystem::path(path).parent_path().string();
    if (base.empty()) base = ".";
    return parseConfig(j, base);
}

} // namespace hodgelab
