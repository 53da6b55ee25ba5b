#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ladder/errors.hpp"
#include "ladder/scalar.hpp"

namespace ladder {

/// Parameters of the ladder chain L(r, s, p): a step is -1 on failure, +s
/// once the last r signs (including the current one) are all successes, and
/// +1 otherwise.
class ChainParams {
public:
    int r() const noexcept { return r_; }
    int s() const noexcept { return s_; }
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

    /// Exact success probability. Always available: when constructed from a
    /// double this is the exact binary value of that double.
    const Rational& exact_p() const noexcept { return exact_p_; }

    /// Success probability in the requested arithmetic.
    template <typename Scalar>
    Scalar p_as() const;

    /// True for r = s = 2, the case covered by the exact solvers.
    bool is_standard() const noexcept { return r_ == 2 && s_ == 2; }

private:
    friend ChainParams make_params(int r, int s, const Rational& p);
    ChainParams(int r, int s, const Rational& p);

    int r_;
    int s_;
    double p_;
    double q_;
    Rational exact_p_;
};

ChainParams make_params(int r, int s, double p);
ChainParams make_params(int r, int s, const Rational& p);

template <>
inline double ChainParams::p_as<double>() const { return p_; }
template <>
inline long double ChainParams::p_as<long double>() const {
    return from_rational<long double>(exact_p_);
}
template <>
inline Rational ChainParams::p_as<Rational>() const { return exact_p_; }

/// Throws InvalidArgument unless r = s = 2.
void require_standard(const ChainParams& params, const char* operation);

enum class Sign : std::int8_t { minus = -1, plus = 1 };

/// Position plus the length of the current run of successes, saturated at r-1.
struct WalkState {
    std::int64_t position = 0;
    int run = 0;

    friend bool operator==(const WalkState&, const WalkState&) = default;
};

/// Absorbing strip: the walk stops once position <= lower or >= upper.
struct Barriers {
    std::int64_t lower;
    std::int64_t upper;

    std::int64_t width() const noexcept { return upper - lower; }
    bool contains(std::int64_t x) const noexcept { return lower <= x && x <= upper; }
    bool absorbs(std::int64_t x) const noexcept { return x <= lower || x >= upper; }
};

/// Validates lower < upper. Exact solvers additionally call require_exact_width.
Barriers make_barriers(std::int64_t lower, std::int64_t upper);

/// Throws InvalidArgument when upper - lower < 4.
void require_exact_width(const Barriers& barriers);

enum class ExitSide { lower, upper, censored };

const char* to_string(ExitSide side) noexcept;

struct TrialOutcome {
    ExitSide exit_side;
    std::uint64_t exit_time;
    std::int64_t exit_position;

    friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

inline WalkState step(const ChainParams& params, WalkState state, Sign xi) noexcept {
    if (xi == Sign::minus) {
        return {state.position - 1, 0};
    }
    if (state.run >= params.r() - 1) {
        return {state.position + params.s(), params.r() - 1};
    }
    return {state.position + 1, state.run + 1};
}

/// Runs one trial from x (fresh memory) against the barriers, drawing signs
/// from `next_sign()` for at most `horizon` steps. Shared by run_trial and the
/// Monte Carlo engine.
template <typename SignSource>
TrialOutcome run_until_exit(const ChainParams& params, const Barriers& barriers,
                            std::int64_t x, std::uint64_t horizon, SignSource&& next_sign) {
    WalkState state{x, 0};
    for (std::uint64_t t = 0;; ++t) {
        if (state.position <= barriers.lower) {
            return {ExitSide::lower, t, state.position};
        }
        if (state.position >= barriers.upper) {
            return {ExitSide::upper, t, state.position};
        }
        if (t == horizon) {
            return {ExitSide::censored, t, state.position};
        }
        state = step(params, state, next_sign());
    }
}

/// Deterministic evaluation of the stopping time on a given sign sequence.
/// Throws InvalidArgument if x lies outside the barriers or the stream runs
/// out before the trial is decided.
TrialOutcome run_trial(const ChainParams& params, const Barriers& barriers, std::int64_t x,
                       std::uint64_t horizon, std::span<const Sign> xi_stream);

}  // namespace ladder
