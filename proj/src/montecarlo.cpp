#include "ladder/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ladder/counter_rng.hpp"

namespace ladder {
namespace {

constexpr std::uint64_t kBlockTrials = 1024;

__extension__ typedef unsigned __int128 Wide;

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `work(first, last)` over fixed trial blocks on `workers` threads and
/// returns the per-block partials in block order. Block boundaries depend
/// only on the trial count, so the ordered reduction is schedule-independent.
template <typename Partial, typename Work>
std::vector<Partial> run_blocks(std::uint64_t trials, unsigned workers, Work work) {
    const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<Partial> partials(blocks);
    std::atomic<std::uint64_t> next{0};
    const auto drain = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            const std::uint64_t first = b * kBlockTrials;
            partials[b] = work(first, std::min(trials, first + kBlockTrials));
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(blocks, 1)));
    if (threads <= 1) {
        drain();
        return partials;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(drain);
    pool.clear();  // joins
    return partials;
}

struct BarrierTally {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    std::uint64_t censored = 0;
    Wide sum_tau = 0;
    Wide sum_tau_sq = 0;
};

MCEstimate binomial(std::uint64_t hits, const MCConfig& config, std::uint64_t censored) {
    const double n = static_cast<double>(config.trials);
    const double est = static_cast<double>(hits) / n;
    return {est, std::sqrt(est * (1.0 - est) / n), config.trials, censored, config.horizon,
            config.seed};
}

void require_trials(std::uint64_t trials) {
    if (trials == 0) throw InvalidArgument("trials must be >= 1");
}

}  // namespace

BarrierEstimates simulate_barrier(const ChainParams& params, const Barriers& barriers,
                                  std::int64_t x, const MCConfig& config) {
    require_trials(config.trials);
    if (!barriers.contains(x)) throw InvalidArgument("start must satisfy lower <= x <= upper");

    const double p = params.p();
    const auto partials = run_blocks<BarrierTally>(
        config.trials, config.workers, [&](std::uint64_t first, std::uint64_t last) {
            BarrierTally tally;
            for (std::uint64_t trial = first; trial < last; ++trial) {
                TrialStream stream(config.seed, trial);
                const auto outcome = run_until_exit(params, barriers, x, config.horizon, [&] {
                    return stream.next_uniform() < p ? Sign::plus : Sign::minus;
                });
                switch (outcome.exit_side) {
                    case ExitSide::lower: ++tally.lower; break;
                    case ExitSide::upper: ++tally.upper; break;
                    case ExitSide::censored: ++tally.censored; break;
                }
                const Wide tau = outcome.exit_time;
                tally.sum_tau += tau;
                tally.sum_tau_sq += tau * tau;
            }
            return tally;
        });

    BarrierTally total;
    for (const auto& t : partials) {
        total.lower += t.lower;
        total.upper += t.upper;
        total.censored += t.censored;
        total.sum_tau += t.sum_tau;
        total.sum_tau_sq += t.sum_tau_sq;
    }

    const double n = static_cast<double>(config.trials);
    const double mean = static_cast<double>(total.sum_tau) / n;
    double std_error = 0.0;
    if (config.trials > 1) {
        // Sum of squared deviations, formed in integers before dividing.
        const Wide n_int = config.trials;
        const Wide scaled = n_int * total.sum_tau_sq - total.sum_tau * total.sum_tau;
        const double sample_var = static_cast<double>(scaled) / (n * (n - 1.0));
        std_error = std::sqrt(sample_var / n);
    }
    return {binomial(total.lower, config, total.censored),
            binomial(total.upper, config, total.censored),
            {mean, std_error, config.trials, total.censored, config.horizon, config.seed}};
}

RuinEstimate estimate_ruin(const ChainParams& params, const Barriers& barriers, std::int64_t x,
                           const MCConfig& config) {
    const auto all = simulate_barrier(params, barriers, x, config);
    return {all.alpha, all.beta};
}

MCEstimate estimate_duration(const ChainParams& params, const Barriers& barriers,
                             std::int64_t x, const MCConfig& config) {
    return simulate_barrier(params, barriers, x, config).duration;
}

std::vector<MCEstimate> estimate_return_probabilities(const ChainParams& params,
                                                      const std::vector<std::uint64_t>& horizons,
                                                      std::uint64_t trials, std::uint64_t seed,
                                                      unsigned workers) {
    require_trials(trials);
    if (horizons.empty()) return {};
    const std::uint64_t longest = *std::max_element(horizons.begin(), horizons.end());
    const double p = params.p();

    using Counts = std::vector<std::uint64_t>;
    const auto partials = run_blocks<Counts>(trials, workers, [&](std::uint64_t first,
                                                                  std::uint64_t last) {
        Counts returned(horizons.size(), 0);
        for (std::uint64_t trial = first; trial < last; ++trial) {
            TrialStream stream(seed, trial);
            WalkState state{0, 0};
            for (std::uint64_t n = 1; n <= longest; ++n) {
                state = step(params, state,
                             stream.next_uniform() < p ? Sign::plus : Sign::minus);
                if (state.position == 0) {
                    for (std::size_t h = 0; h < horizons.size(); ++h) {
                        if (n <= horizons[h]) ++returned[h];
                    }
                    break;
                }
            }
        }
        return returned;
    });

    std::vector<MCEstimate> estimates;
    estimates.reserve(horizons.size());
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        std::uint64_t hits = 0;
        for (const auto& part : partials) hits += part[h];
        const MCConfig config{trials, horizons[h], seed, workers};
        estimates.push_back(binomial(hits, config, trials - hits));
    }
    return estimates;
}

MCEstimate estimate_return_probability(const ChainParams& params, const MCConfig& config) {
    return estimate_return_probabilities(params, {config.horizon}, config.trials, config.seed,
                                         config.workers)
        .front();
}

}  // namespace ladder
