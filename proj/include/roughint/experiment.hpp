#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughint/integrator.hpp"

namespace roughint {

enum class OutputFormat { Csv, Json };

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

inline const std::vector<std::string>& experiment_commands() {
    static const std::vector<std::string> names{"integrate-simplex", "integrate-polygon", "integrate-domain",
                                                "convergence-table", "stokes-check",      "chain-rule-check",
                                                "degree-check",      "vanishing-check",   "bounds-audit"};
    return names;
}

/// Validated experiment description. `body` holds every setting of the
/// command with defaults filled in; it is echoed into the output.
struct ExperimentConfig {
    std::string command;
    nlohmann::json body = nlohmann::json::object();
    CertMode mode = CertMode::Warn;
    OutputFormat format = OutputFormat::Json;
    /// Default seed for weierstrass fields that do not carry one.
    std::optional<std::uint64_t> seed;
    /// 0 keeps the library default.
    int threads = 0;
    /// Off: wall_time_ms columns are written as 0 so outputs are
    /// byte-reproducible.
    bool timing = true;
};

/// Throws ConfigError with a message naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& j);
/// Inverse of parse_config: parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& c);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// A table (one row per level, triangle, ...) plus constants for the header.
struct Report {
    nlohmann::json header = nlohmann::json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
    nlohmann::json summary = nlohmann::json::object();
    /// True when every certificate or check of the command held.
    bool ok = true;
};

std::string render(const Report& r, const ExperimentConfig& c);

struct RunResult {
    int exit_code = 0;
    std::string output;
    Report report;
};

/// Runs the command. Exit code 2 when a certificate or check fails in
/// strict mode; usage errors surface as ConfigError.
RunResult run(const ExperimentConfig& c);

} // namespace roughint
