// selftest.hpp -- randomized identity and invariance checks shared by the
// `verify` command and the acceptance suite: every structural identity the
// implementation relies on, exercised on generated instances.
#pragma once

#include "rootdens/model.hpp"

#include <string>
#include <vector>

namespace rootdens {

struct SelfTestCheck {
    std::string name;
    long instances = 0; // instances actually exercised
    bool pass = false;
    std::string detail; // first counterexample when failing
};

struct SelfTestReport {
    unsigned long seed = 0;
    long trials = 0;
    std::vector<SelfTestCheck> checks;
    bool all_pass = false;
};

// Runs every identity check on `trials` random instances each (seeded, hence
// reproducible): the factored form of the rank-r correction, the closed-form
// products, representative-flip and generator-change invariance, exact
// agreement with the finite model, the functional-count crosscheck, and the
// value bounds.
SelfTestReport run_self_tests(long trials, unsigned long seed,
                              long model_bound = default_model_bound);

} // namespace rootdens
