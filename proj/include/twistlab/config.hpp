#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <string>

#include "twistlab/errors.hpp"

namespace twistlab {

/// Run-wide configuration: tolerances, enumeration caps, RNG seed and output
/// selection. Identical configuration (including seed) must yield
/// byte-identical reports.
struct RunConfig {
    double tol_constraint = 1e-9;
    double tol_period = 1e-6;
    double h_fd = 1e-5;
    std::uint64_t weyl_cap = 1000000;
    std::uint64_t orbit_cap = 100000;
    int rk4_steps = 10000; // per full turn
    std::uint64_t seed = 20230517;
    std::string format = "json"; // json | csv | text
    std::string output_path;     // empty: stdout

    void validate() const {
        if (tol_constraint <= 0 || tol_period <= 0 || h_fd <= 0)
            throw ConfigError("tolerances must be positive");
        if (weyl_cap == 0 || orbit_cap == 0) throw ConfigError("caps must be positive");
        if (rk4_steps < 1) throw ConfigError("rk4_steps must be positive");
        if (format != "json" && format != "csv" && format != "text")
            throw ConfigError("format must be json, csv or text");
    }

    /// Lowest-priority seed source: the TWISTLAB_SEED environment variable.
    void apply_env() {
        if (const char* env = std::getenv("TWISTLAB_SEED")) {
            try {
                seed = std::stoull(env);
            } catch (const std::exception&) {
                throw ConfigError("TWISTLAB_SEED is not a valid integer");
            }
        }
    }

    /// key=value overrides, one per line; '#' starts a comment.
    void apply_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos || line[start] == '#') continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key=value");
            auto trim = [](std::string s) {
                std::size_t a = s.find_first_not_of(" \t");
                std::size_t b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    void set_key(const std::string& key, const std::string& value) {
        try {
            if (key == "tol_constraint")
                tol_constraint = std::stod(value);
            else if (key == "tol_period")
                tol_period = std::stod(value);
            else if (key == "h_fd")
                h_fd = std::stod(value);
            else if (key == "weyl_cap")
                weyl_cap = std::stoull(value);
            else if (key == "orbit_cap")
                orbit_cap = std::stoull(value);
            else if (key == "rk4_steps")
                rk4_steps = std::stoi(value);
            else if (key == "seed")
                seed = std::stoull(value);
            else if (key == "format")
                format = value;
            else if (key == "output")
                output_path = value;
            else
                throw ConfigError("unknown config key: " + key);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad value for config key " + key + ": " + value);
        }
    }
};

} // namespace twistlab
