#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdecay/constants.hpp"

namespace hdecay {

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;   // the measured residual/error the threshold applies to
    double threshold = 0.0;
    std::string detail;      // human-readable context (targets, timings, pairs)
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed = false;
    double seconds = 0.0;
};

// Suites: lemma21, symmetry, coeffs, bargmann, jnk, decay, all.
// A pair override restricts pair-dependent checks to that single pair;
// by default the canonical pairs (0.6,0.6), (0.3,1.2), (2.0,0.25) are used.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& suite,
                      std::optional<GaussianEnvelopePair> pair_override = {});

std::string format_report(const SuiteResult& result);

}  // namespace hdecay
