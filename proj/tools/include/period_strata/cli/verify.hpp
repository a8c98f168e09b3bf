#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace period_strata::cli {

struct HypothesisEntry {
    std::string hypothesis;
    bool checked = false;  // false: assumed
    std::string detail;
};

struct VerificationReport {
    std::string suite;
    uint64_t seed = 0;
    size_t cases = 0;
    std::vector<std::string> failures;  // each carries the inputs needed to replay it
    std::vector<HypothesisEntry> ledger;

    bool ok() const { return failures.empty(); }
};

std::vector<std::string> suite_names();
// throws std::invalid_argument for an unknown suite
VerificationReport run_suite(const std::string& name, uint64_t seed);

}  // namespace period_strata::cli
