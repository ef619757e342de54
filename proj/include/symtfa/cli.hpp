#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace symtfa::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kPrecondition = 2, kNumerical = 3 };

// Fully merged settings for one run; flags override fields of the config file.
struct RunConfig {
    std::string command;
    std::string matrix = "tau:1/2";
    std::string f = "gaussian", g = "gaussian", f2, g2;
    nlohmann::json f_state, g_state;  // explicit Gaussian states override the descriptors
    int grid_n = 256;
    double grid_dx = 1.0 / 16.0;
    double p = 2.0, q = 2.0, s = 0.0;
    std::optional<double> tau;
    std::vector<double> t{0.05, 0.1};
    int radius = 2;
    std::vector<std::pair<double, double>> offsets;
    std::string kernel = "bandlimited";
    nlohmann::json hamiltonian = "free";
    nlohmann::json representation;  // {"tau": r} or {"A11", "A13", "A21"}; null means use matrix
    std::string out;
    std::string format = "csv";
    std::string report;
    bool json_stdout = false;
};

// Schema check and conversion; throws io::ConfigError on unknown or ill-typed fields.
RunConfig config_from_json(const nlohmann::json& j);

// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_config(const RunConfig& cfg, std::ostream& out);

}  // namespace symtfa::cli
