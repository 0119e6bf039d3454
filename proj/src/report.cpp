#include "hodgelab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace hodgelab {

namespace fs = std::filesystem;

CheckRecord boundCheck(std::string name, std::string anchor, double value, double tolerance) {
    CheckRecord c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.lhs = value;
    c.rhs = tolerance;
    c.residual = value;
    c.tolerance = tolerance;
    c.pass = std::isfinite(value) && value <= tolerance;
    return c;
}

CheckRecord equalityCheck(std::string name, std::string anchor, double lhs, double rhs,
                          double tolerance) {
    CheckRecord c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::abs(lhs - rhs);
    c.tolerance = tolerance;
    c.pass = std::isfinite(c.residual) && c.residual <= tolerance;
    return c;
}

CheckRecord flagCheck(std::string name, std::string anchor, bool pass) {
    CheckRecord c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.residual = pass ? 0 : 1;
    c.pass = pass;
    return c;
}

bool ExperimentReport::allPass() const {
    for (const CheckRecord& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string formatDouble(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

nlohmann::json reportJson(const ExperimentReport& rep) {
    nlohmann::json j;
    j["kind"] = rep.kind;
    j["config"] = rep.config;
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckRecord& c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"anchor", c.anchor},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    j["checks"] = std::move(checks);
    j["summary"] = rep.summary;
    j["pass"] = rep.allPass();
    return j;
}

static void atomicWrite(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out.flush())
            throw ReportWriteError("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw ReportWriteError("cannot rename " + tmp.string() + ": " + ec.message());
}

static std::string timestampUtc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

static std::string csvCell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void writeReport(const ExperimentReport& rep, const std::string& outDir) {
    fs::path dir(outDir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ReportWriteError("cannot create " + dir.string() + ": " + ec.message());

    nlohmann::json j = reportJson(rep);
    j["generatedAt"] = timestampUtc();
    atomicWrite(dir / "report.json", j.dump(2) + "\n");

    for (const CsvTable& t : rep.tables) {
        std::string body;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) body += ',';
            body += csvCell(t.columns[i]);
        }
        body += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) body += ',';
                body += csvCell(row[i]);
            }
            body += '\n';
        }
        atomicWrite(dir / (t.name + ".csv"), body);
    }
}

} // namespace hodgelab
