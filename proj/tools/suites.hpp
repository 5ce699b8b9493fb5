#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "misr/io.hpp"

namespace misr::suites {

struct SuiteResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    int skipped = 0;  // builds that threw a documented failure
    json measured = json::object();
    std::vector<std::string> notes;  // first few failure descriptions
    bool pass() const { return failures == 0 && 2 * skipped <= trials; }
};

struct SuiteConfig {
    int n = 10;
    int trials = 20;
    std::uint64_t seed = 1;
    bool strict = false;
};

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace misr::suites
