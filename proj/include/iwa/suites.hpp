#pragma once

// Named verification suites over the other modules. Suites are independent
// and deterministic for a fixed (config, seed): randomized sweeps derive
// their generator state from the seed and the check id only.

#include <vector>

#include "iwa/config.hpp"
#include "iwa/report.hpp"

namespace iwa {

SuiteReport run_bch_suite(const RunConfig& cfg);
SuiteReport run_graded_ring_suite(const RunConfig& cfg);
SuiteReport run_filtration_suite(const RunConfig& cfg);
SuiteReport run_rho_map_suite(const RunConfig& cfg);
SuiteReport run_frobenius_suite(const RunConfig& cfg);
SuiteReport run_delta_cleaning_suite(const RunConfig& cfg);
SuiteReport run_hypothesis_suite(const RunConfig& cfg);

// Executes the selected suites (all of them when the selection is empty).
std::vector<SuiteReport> run_suite(const RunConfig& cfg);

} // namespace iwa
