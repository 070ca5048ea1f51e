#pragma once

// Run configuration for the verification driver: flags take precedence
// over the optional JSON config file, which takes precedence over the
// defaults. The environment variable IWA_VERIFY_CONFIG names a default
// config file.

#include <cstdint>
#include <string>
#include <vector>

namespace iwa {

struct RunConfig {
    uint32_t p = 3;
    uint32_t l = 1;
    uint32_t m = 2;
    uint32_t N = 8;
    uint32_t D = 8;
    uint32_t D_max = 6;
    uint32_t s = 0;
    uint64_t seed = 0;
    std::vector<std::string> suites;  // empty = all, in canonical order
    std::string out;                  // empty = stdout
    std::string format = "human";     // "human" or "records"
    std::string inject_fault;         // "" or "jacobi"
    bool no_timing = false;
    uint32_t bch_samples = 500;
    uint32_t commutator_samples = 300;
    uint32_t pair_samples = 200;
    uint32_t ideal_samples = 200;
    uint32_t delta_samples = 200;
    uint32_t cleaning_samples = 50;
    uint64_t table_limit = uint64_t(1) << 20;
};

const std::vector<std::string>& all_suite_names();

// Compatibility rules; throws invalid_parameter naming the violated rule.
void validate_config(const RunConfig& cfg);

// Parses CLI arguments (argv without the program name). A config file is
// taken from --config or IWA_VERIFY_CONFIG.
RunConfig parse_config(const std::vector<std::string>& args);

} // namespace iwa
