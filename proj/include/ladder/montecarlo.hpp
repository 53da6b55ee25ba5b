#pragma once

#include <cstdint>
#include <vector>

#include "ladder/chain_model.hpp"

namespace ladder {

struct MCEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t censored = 0;
    std::uint64_t horizon = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

/// Trials, horizon and seed fully determine an estimate. `workers` only
/// affects wall time (0 = hardware concurrency).
struct MCConfig {
    std::uint64_t trials = 100'000;
    std::uint64_t horizon = 10'000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
};

inline constexpr std::uint64_t kDefaultBarrierHorizon = 10'000;
inline constexpr std::uint64_t kDefaultReturnHorizon = 100'000;

struct RuinEstimate {
    MCEstimate alpha;
    MCEstimate beta;
};

/// Lower/upper exits within the horizon from x. Censored trials count toward
/// neither event.
RuinEstimate estimate_ruin(const ChainParams& params, const Barriers& barriers, std::int64_t x,
                           const MCConfig& config);

/// Mean of tau_k^x with k = horizon: censored trials contribute the horizon.
MCEstimate estimate_duration(const ChainParams& params, const Barriers& barriers,
                             std::int64_t x, const MCConfig& config);

/// All three barrier estimates from one pass over the same trials.
struct BarrierEstimates {
    MCEstimate alpha;
    MCEstimate beta;
    MCEstimate duration;
};

BarrierEstimates simulate_barrier(const ChainParams& params, const Barriers& barriers,
                                  std::int64_t x, const MCConfig& config);

/// P(T <= horizon) for T = inf{n >= 1 : S_n = 0}, unbounded walk from 0 with
/// fresh memory. `censored` counts trials that did not return.
MCEstimate estimate_return_probability(const ChainParams& params, const MCConfig& config);

/// Same estimate at several horizons from one pass; trial i uses the same
/// stream at every horizon, so results equal separate calls with the same seed.
std::vector<MCEstimate> estimate_return_probabilities(const ChainParams& params,
                                                      const std::vector<std::uint64_t>& horizons,
                                                      std::uint64_t trials, std::uint64_t seed,
                                                      unsigned workers = 0);

}  // namespace ladder
