#include "ladder/chain_model.hpp"

#include <string>

namespace ladder {

ChainParams::ChainParams(int r, int s, const Rational& p)
    : r_(r), s_(s), p_(p.get_d()), q_(1.0 - p_), exact_p_(p) {}

ChainParams make_params(int r, int s, const Rational& p) {
    if (r < 2) {
        throw InvalidArgument("order r must be >= 2, got " + std::to_string(r));
    }
    if (s < 2) {
        throw InvalidArgument("step s must be >= 2, got " + std::to_string(s));
    }
    if (p <= 0 || p >= 1) {
        throw InvalidArgument("p must be in (0,1)");
    }
    return ChainParams(r, s, p);
}

ChainParams make_params(int r, int s, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("p must be in (0,1)");
    }
    return make_params(r, s, Rational(p));
}

void require_standard(const ChainParams& params, const char* operation) {
    if (!params.is_standard()) {
        throw InvalidArgument(std::string(operation) +
                              " is only available for L(2,2,p); use enumeration or simulation");
    }
}

Barriers make_barriers(std::int64_t lower, std::int64_t upper) {
    if (lower >= upper) {
        throw InvalidArgument("barriers require lower < upper");
    }
    return {lower, upper};
}

void require_exact_width(const Barriers& barriers) {
    if (barriers.width() < 4) {
        throw InvalidArgument("exact solvers require upper - lower >= 4");
    }
}

const char* to_string(ExitSide side) noexcept {
    switch (side) {
        case ExitSide::lower: return "lower";
        case ExitSide::upper: return "upper";
        case ExitSide::censored: return "censored";
    }
    return "unknown";
}

TrialOutcome run_trial(const ChainParams& params, const Barriers& barriers, std::int64_t x,
                       std::uint64_t horizon, std::span<const Sign> xi_stream) {
    if (!barriers.contains(x)) {
        throw InvalidArgument("start must satisfy lower <= x <= upper");
    }
    std::size_t used = 0;
    return run_until_exit(params, barriers, x, horizon, [&]() {
        if (used == xi_stream.size()) {
            throw InvalidArgument("sign stream exhausted after " + std::to_string(used) +
                                  " steps");
        }
        return xi_stream[used++];
    });
}

}  // namespace ladder
