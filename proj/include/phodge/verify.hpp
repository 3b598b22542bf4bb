#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phodge/rational.hpp"
#include "phodge/tableaux.hpp"

namespace phodge {

// One named check of a self-verification suite.
struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    int count = 0;                  // 0 picks the suite default
    std::optional<Partition> shape; // functor shape override
    std::optional<int> rank;        // rank override; below the threshold this
                                    // switches to an expected-failure probe
    Rational prime = 2;
};

struct SuiteReport {
    std::string suite;
    SuiteOptions options; // count resolved to the value actually used
    std::vector<Verdict> verdicts;

    bool pass() const {
        if (verdicts.empty()) return false;
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
};

// Available suites: statement-level drivers over seeded generated instances.
//   ht-tensor      tensor integrality implies a common normalizing twist
//   ht-schur       functor-image integrality implies a normalizing twist
//   sst-tensor     full twist-recovery pipeline on tensor-semistable pairs
//   sst-schur      full twist-recovery pipeline on functor-semistable modules
//   counterexample the sharp rank-2 instance where no twist can exist
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Runs the named suite deterministically in opt.seed. Unknown names raise
// ParseError; everything a suite checks lands in the verdict list instead of
// escaping as an exception.
SuiteReport run_suite(const std::string& suite, const SuiteOptions& opt);

} // namespace phodge
