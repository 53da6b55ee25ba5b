#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ladder/chain_model.hpp"
#include "ladder/duration_solver.hpp"
#include "ladder/exact_solvers.hpp"

namespace ladder {

struct ValidationCheck {
    std::string name;
    std::string instance;
    double max_abs_diff;
    double tolerance;  // 0 means exact rational equality
    bool pass;
};

struct ValidationReport {
    double p;
    int max_k;
    std::vector<ValidationCheck> checks;

    bool passed() const;
};

/// Finite-horizon solvers under test. Defaults are the library solvers;
/// tests substitute altered versions to prove the suite catches them.
struct SolverHooks {
    std::function<FiniteHorizonRuin<Rational>(const ChainParams&, const Barriers&, int)> ruin =
        [](const ChainParams& params, const Barriers& barriers, int k) {
            return iterate_ruin<Rational>(params, barriers, k);
        };
    std::function<FiniteHorizonDuration<Rational>(const ChainParams&, const Barriers&, int)>
        duration = [](const ChainParams& params, const Barriers& barriers, int k) {
            return iterate_duration<Rational>(params, barriers, k);
        };
};

inline constexpr int kDefaultValidationMaxK = 12;

/// Cross-checks every solver of L(2,2,p) against the enumeration oracle on a
/// fixed grid of strips, all starts and all k <= max_k, in exact rational
/// arithmetic; then checks the stationary identities (complement, method
/// agreement, duration bound, closed form at the critical p).
ValidationReport validate(const ChainParams& params, int max_k = kDefaultValidationMaxK,
                          const SolverHooks& hooks = {});

}  // namespace ladder
