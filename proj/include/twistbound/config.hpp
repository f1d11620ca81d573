#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twistbound/numtheory.hpp"

namespace twistbound {

inline constexpr const char* kToolName = "twistbound";
inline constexpr const char* kToolVersion = "0.1.0";

/// Run-wide knobs; loaded from a `key = value` file (TWISTBOUND_CONFIG or
/// --config), overridden by command-line flags, and echoed into every
/// output for reproducibility.
struct RunConfig {
    unsigned long factor_trial_bound = 1'000'000;
    unsigned long rho_budget = 10'000'000;
    unsigned long search_height = 100;
    unsigned long prime_limit = 100;
    std::string output_mode = "json";  // "json" or "table"
    unsigned long random_seed = 0;

    FactorEffort effort() const { return FactorEffort{factor_trial_bound, rho_budget}; }

    void validate() const {
        if (factor_trial_bound == 0 || rho_budget == 0 || search_height == 0 || prime_limit == 0)
            throw std::domain_error("configuration bounds must be positive");
        if (output_mode != "json" && output_mode != "table")
            throw std::domain_error("output mode must be json or table");
    }

    void set(const std::string& key, const std::string& value) {
        auto as_ulong = [&value, &key]() {
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(value, &used);
            } catch (const std::exception&) {
                used = std::string::npos;
            }
            if (used != value.size())
                throw std::domain_error("bad value \"" + value + "\" for config key " + key);
            return v;
        };
        if (key == "factor_trial_bound")
            factor_trial_bound = as_ulong();
        else if (key == "rho_budget")
            rho_budget = as_ulong();
        else if (key == "search_height")
            search_height = as_ulong();
        else if (key == "prime_limit")
            prime_limit = as_ulong();
        else if (key == "random_seed")
            random_seed = as_ulong();
        else if (key == "output_mode")
            output_mode = value;
        else
            throw std::domain_error("unknown config key " + key);
    }

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file " + path);
        RunConfig config;
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const auto first = s.find_first_not_of(" \t\r");
                if (first == std::string::npos) return std::string();
                const auto last = s.find_last_not_of(" \t\r");
                return s.substr(first, last - first + 1);
            };
            if (trim(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line without '=': " + line);
            config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        return config;
    }

    nlohmann::ordered_json to_json() const {
        return nlohmann::ordered_json{{"factor_trial_bound", factor_trial_bound},
                                      {"rho_budget", rho_budget},
                                      {"search_height", search_height},
                                      {"prime_limit", prime_limit},
                                      {"output_mode", output_mode},
                                      {"random_seed", random_seed}};
    }
};

}  // namespace twistbound
