#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "supnorm/config.hpp"

namespace supnorm {

constexpr int kReportVersion = 1;

struct PropertyRecord {
    std::string id;
    std::string anchor;          // the statement being tested
    std::size_t instances = 0;
    double fitted_constant = 0;  // worst constant / error / violation count seen
    double limit = 0;            // pinned upper limit for fitted_constant
    double max_ratio = 0;        // fitted_constant / limit (0 when limit is 0)
    std::size_t errors = 0;      // instances that threw
    bool resource_cap = false;   // at least one error was a cap breach
    bool passed = false;
    std::string detail;

    // pass iff fitted_constant <= limit and nothing errored
    void finish();
};

struct VerificationReport {
    int version = kReportVersion;
    std::uint64_t seed = 0;
    std::string selector;
    std::vector<PropertyRecord> properties;

    bool passed() const;
    bool resource_cap_hit() const;
};

struct PropertyDef {
    std::string id;
    std::string anchor;
    std::function<PropertyRecord(const RunConfig&, std::uint64_t seed)> run;
};

const std::vector<PropertyDef>& property_registry();
// glob match with * and ?
bool selector_matches(const std::string& pattern, const std::string& id);
// deterministic under (config, seed, selector)
VerificationReport run_verify(const RunConfig& cfg, const std::string& selector);
PropertyRecord run_property(const std::string& id, const RunConfig& cfg);

std::string report_json(const VerificationReport& r);
std::string report_csv(const VerificationReport& r);
// temp file then rename; throws std::runtime_error if the path is unwritable
void write_atomically(const std::string& path, const std::string& content);
void emit_report(const VerificationReport& r, const std::string& format, const std::string& path);

}  // namespace supnorm
