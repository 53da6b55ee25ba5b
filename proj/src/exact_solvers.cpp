#include "ladder/exact_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ladder/difference_system.hpp"
#include "recurrence_detail.hpp"

namespace ladder {
namespace {

template <typename S>
detail::TwoLagRecurrence<S> upper_recurrence(const ChainParams& params, const Barriers& b) {
    const S p = params.p_as<S>();
    return {p, b.lower, b.upper, {S(0), S(1), S(0), p, S(p * p), S(0)}};
}

template <typename S>
detail::TwoLagRecurrence<S> lower_recurrence(const ChainParams& params, const Barriers& b) {
    return {params.p_as<S>(), b.lower, b.upper, {S(1), S(0), S(0), S(0), S(0), S(0)}};
}

double sup_change(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

template <typename Scalar>
FiniteHorizonRuin<Scalar> iterate_ruin(const ChainParams& params, const Barriers& barriers,
                                       int k) {
    require_standard(params, "iterate_ruin");
    require_exact_width(barriers);
    if (k < 0) throw InvalidArgument("horizon k must be >= 0");

    auto up = upper_recurrence<Scalar>(params, barriers);
    auto down = lower_recurrence<Scalar>(params, barriers);
    up.advance_to(k);
    down.advance_to(k);
    return {barriers.lower, barriers.upper, k, down.current(), up.current()};
}

template FiniteHorizonRuin<double> iterate_ruin(const ChainParams&, const Barriers&, int);
template FiniteHorizonRuin<long double> iterate_ruin(const ChainParams&, const Barriers&, int);
template FiniteHorizonRuin<Rational> iterate_ruin(const ChainParams&, const Barriers&, int);

std::vector<std::int64_t> RuinSolution::grid() const {
    std::vector<std::int64_t> xs(static_cast<std::size_t>(upper - lower + 1));
    std::iota(xs.begin(), xs.end(), lower);
    return xs;
}

RuinSolution solve_ruin(const ChainParams& params, const Barriers& barriers,
                        const SolveOptions& options) {
    require_standard(params, "solve_ruin");
    require_exact_width(barriers);
    const auto upper_system = upper_exit_system(params, barriers);
    const auto lower_system = lower_exit_system(params, barriers);
    const auto residual_of = [&](const std::vector<double>& alpha, const std::vector<double>& beta) {
        return std::max(max_violation(lower_system, alpha), max_violation(upper_system, beta));
    };

    RuinSolution solution{barriers.lower, barriers.upper, {}, {}, {}, 0.0};
    solution.method.kind = options.kind;

    switch (options.kind) {
        case MethodKind::linear_solve: {
            solution.alpha = solve_direct(lower_system);
            solution.beta = solve_direct(upper_system);
            break;
        }
        case MethodKind::finite_horizon: {
            auto fh = iterate_ruin<double>(params, barriers, options.k);
            solution.alpha = std::move(fh.alpha);
            solution.beta = std::move(fh.beta);
            solution.method.k = options.k;
            break;
        }
        case MethodKind::fixed_point: {
            if (!(options.tol > 0.0)) throw InvalidArgument("fixed_point requires tol > 0");
            auto up = upper_recurrence<double>(params, barriers);
            auto down = lower_recurrence<double>(params, barriers);
            bool converged = false;
            while (static_cast<std::uint64_t>(up.generation()) < options.max_iterations) {
                up.advance();
                down.advance();
                if (up.generation() < 2) continue;
                const double change = std::max(sup_change(up.current(), up.previous()),
                                               sup_change(down.current(), down.previous()));
                if (change < options.tol &&
                    residual_of(down.current(), up.current()) < 10.0 * options.tol) {
                    converged = true;
                    break;
                }
            }
            if (!converged) {
                throw ConvergenceError("ruin fixed point did not converge within " +
                                       std::to_string(options.max_iterations) + " generations");
            }
            solution.alpha = down.current();
            solution.beta = up.current();
            solution.method.tol = options.tol;
            solution.method.iterations = static_cast<std::uint64_t>(up.generation());
            break;
        }
    }
    solution.residual = residual_of(solution.alpha, solution.beta);
    return solution;
}

double complement_residual(const RuinSolution& solution) {
    double worst = 0.0;
    for (std::size_t i = 0; i < solution.alpha.size(); ++i) {
        worst = std::max(worst, std::abs(solution.alpha[i] + solution.beta[i] - 1.0));
    }
    return worst;
}

}  // namespace ladder
