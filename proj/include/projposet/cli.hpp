#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace projposet {

constexpr int schema_version = 1;

enum ExitCode : int {
    exit_pass = 0,
    exit_falsification = 1,
    exit_usage = 2,
    exit_budget = 3,
};

struct CliOptions {
    std::string verb;
    std::size_t n = 0;
    std::string field = "2";
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::uint64_t budget_nodes = 0;
    std::string out_dir;
    std::string checkpoint;
    std::string format = "json";
    /// lattice | poset, for the export verbs.
    std::string object = "lattice";
    /// Lattice maps to re-verify instead of enumerating (verify-ftpg).
    std::string maps;
    /// 0 picks the verb's default.
    std::size_t samples = 0;
    std::optional<unsigned> twist;
    /// Adds wall time to the report, which then is no longer reproducible byte for byte.
    bool timings = false;
};

struct VerbInfo {
    std::string name;
    std::string summary;
};

const std::vector<VerbInfo> & verbs();

struct VerbOutcome {
    nlohmann::json report;
    /// DOT text for export-dot; empty otherwise.
    std::string dot;
    int exit_code = exit_pass;
};

/// Runs one verb and turns every library error into a report with its exit code.
VerbOutcome run_verb(const CliOptions & options);

/// Parses argv, runs the verb, prints the report and writes it under --out.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

} // namespace projposet
