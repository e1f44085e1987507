#pragma once

#include <cstdint>
#include <string>

namespace supnorm {

// environment variable naming the default config file
constexpr const char* kConfigEnv = "SUPNORM_CONFIG";

struct RunConfig {
    double transform_rtol = 1e-6;    // closed form vs quadrature
    double recurrence_tol = 1e-8;    // finite-difference derivative checks
    double ibp_rtol = 1e-6;
    double float_rtol = 1e-9;        // float paths of exact identities
    double box_limit = 1e9;          // enumeration cap
    double time_budget = 600;        // seconds for a verify run
    std::uint64_t seed = 20240607;
    std::string format = "json";     // json or csv
    std::string output;              // empty: stdout

    // flat "key = value" lines, '#' starts a comment
    static RunConfig from_file(const std::string& path);
    // unknown keys and bad values throw std::invalid_argument
    void set(const std::string& key, const std::string& value);
    void validate() const;
};

}  // namespace supnorm
