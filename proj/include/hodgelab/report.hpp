#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hodgelab {

// One verified quantity: the measured residual against its tolerance, plus
// the two sides of the comparison when the check is an equality or a bound.
struct CheckRecord {
    std::string name;    // stable machine name, used for tolerance overrides
    std::string anchor;  // the relation being checked, in mathematical terms
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
};

CheckRecord boundCheck(std::string name, std::string anchor, double value, double tolerance);
CheckRecord equalityCheck(std::string name, std::string anchor, double lhs, double rhs,
                          double tolerance);
CheckRecord flagCheck(std::string name, std::string anchor, bool pass);

// A CSV table with preformatted cells; the writer emits it verbatim, so the
// producer controls number formatting and the output stays deterministic.
struct CsvTable {
    std::string name;  // file stem, written as <name>.csv
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
    std::string kind;
    nlohmann::json config;  // resolved configuration echo
    std::vector<CheckRecord> checks;
    std::vector<CsvTable> tables;
    nlohmann::json summary = nlohmann::json::object();

    bool allPass() const;
};

struct ReportWriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest representation that round-trips the double.
std::string formatDouble(double v);

// Serializes the report without the timestamp; writeReport adds a
// "generatedAt" field, so two runs of the same experiment differ in that
// line only.
nlohmann::json reportJson(const ExperimentReport& rep);

// Writes report.json plus one <table>.csv per table into outDir, creating
// the directory if needed.  Each file is written to a temporary name and
// renamed into place, so a crash never leaves a partial report behind.
void writeReport(const ExperimentReport& rep, const std::string& outDir);

} // namespace hodgelab
