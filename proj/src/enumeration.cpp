#include "ladder/enumeration.hpp"

#include <string>

namespace ladder {
namespace {

template <typename Scalar>
class Enumerator {
public:
    Enumerator(const ChainParams& params, const Barriers& barriers, int horizon)
        : params_(params),
          barriers_(barriers),
          horizon_(horizon),
          p_(params.p_as<Scalar>()),
          q_(Scalar(1) - p_),
          result_{Scalar(0), Scalar(0), Scalar(0), Scalar(0)} {}

    ExactFiniteHorizon<Scalar> run(std::int64_t x) {
        visit(WalkState{x, 0}, 0, Scalar(1));
        return result_;
    }

private:
    void visit(WalkState state, int depth, const Scalar& weight) {
        if (state.position <= barriers_.lower) {
            result_.alpha += weight;
            result_.mean_tau += weight * depth;
            return;
        }
        if (state.position >= barriers_.upper) {
            result_.beta += weight;
            result_.mean_tau += weight * depth;
            return;
        }
        if (depth == horizon_) {
            result_.censored += weight;
            result_.mean_tau += weight * depth;
            return;
        }
        visit(step(params_, state, Sign::plus), depth + 1, Scalar(weight * p_));
        visit(step(params_, state, Sign::minus), depth + 1, Scalar(weight * q_));
    }

    const ChainParams& params_;
    Barriers barriers_;
    int horizon_;
    Scalar p_;
    Scalar q_;
    ExactFiniteHorizon<Scalar> result_;
};

}  // namespace

template <typename Scalar>
ExactFiniteHorizon<Scalar> enumerate_exact(const ChainParams& params, const Barriers& barriers,
                                           std::int64_t x, int k, int cap) {
    if (!barriers.contains(x)) {
        throw InvalidArgument("start must satisfy lower <= x <= upper");
    }
    if (k < 0 || k > cap) {
        throw InvalidArgument("enumeration horizon k=" + std::to_string(k) +
                              " outside [0, " + std::to_string(cap) + "]");
    }
    return Enumerator<Scalar>(params, barriers, k).run(x);
}

template ExactFiniteHorizon<double> enumerate_exact(const ChainParams&, const Barriers&,
                                                    std::int64_t, int, int);
template ExactFiniteHorizon<long double> enumerate_exact(const ChainParams&, const Barriers&,
                                                         std::int64_t, int, int);
template ExactFiniteHorizon<Rational> enumerate_exact(const ChainParams&, const Barriers&,
                                                      std::int64_t, int, int);

}  // namespace ladder
