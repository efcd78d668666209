#pragma once

#include <cstdint>

#include "json.hpp"
#include "selfsim/action.hpp"

namespace selfsim {

// Seeded self-checks over the bundled corpus: semigroup laws, table group
// laws, the chain complex identity, homology witnesses, and the frozen
// worked examples.  The report is pure data; equal seeds and budgets give
// byte-identical dumps.
nlohmann::json selftest_report(uint64_t seed, const Budget& budget = {});

bool selftest_passed(const nlohmann::json& report);

}  // namespace selfsim
