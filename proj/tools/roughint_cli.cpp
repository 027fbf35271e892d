#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "roughint/errors.hpp"
#include "roughint/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Integrals of f dg1 ^ dg2 for Hoelder continuous g"};
    std::string command, config_path, out_path, format, certified;
    int threads = -1;
    std::uint64_t seed = 0;
    bool no_timing = false;
    app.add_option("command", command, "Command; overrides the one in the config")
        ->check(CLI::IsMember(roughint::experiment_commands()));
    app.add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "Worker thread cap")->check(CLI::NonNegativeNumber);
    app.add_option("--certified", certified, "Certification mode")->check(CLI::IsMember({"strict", "warn"}));
    auto* seed_opt = app.add_option("--seed", seed, "Default seed for weierstrass fields without one");
    app.add_flag("--no-timing", no_timing, "Write 0 for wall-clock columns");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    nlohmann::json j = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: cannot parse " << config_path << ": " << e.what() << "\n";
            return 1;
        }
        if (!j.is_object()) {
            std::cerr << "error: config must be a JSON object\n";
            return 1;
        }
    }
    if (!command.empty()) j["command"] = command;
    if (!format.empty()) j["format"] = format;
    if (!certified.empty()) j["certified"] = certified;
    if (threads >= 0) j["threads"] = threads;
    if (*seed_opt) j["seed"] = seed;
    if (no_timing) j["timing"] = false;

    try {
        const roughint::ExperimentConfig cfg = roughint::parse_config(j);
        const roughint::RunResult r = roughint::run(cfg);
        if (out_path.empty()) {
            std::cout << r.output;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 1;
            }
            out << r.output;
        }
        if (r.exit_code == 2) std::cerr << "certification failed: " << r.report.summary.dump() << "\n";
        return r.exit_code;
    } catch (const roughint::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const roughint::CertificationError& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return 2;
    } catch (const roughint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
