#include "ladder/duration_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "ladder/difference_system.hpp"
#include "recurrence_detail.hpp"

namespace ladder {
namespace {

template <typename S>
detail::TwoLagRecurrence<S> duration_recurrence(const ChainParams& params, const Barriers& b) {
    const S p = params.p_as<S>();
    return {p, b.lower, b.upper, {S(0), S(0), S(1), S(1), S(S(1) + p), S(1)}};
}

double sup_change(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

template <typename Scalar>
FiniteHorizonDuration<Scalar> iterate_duration(const ChainParams& params,
                                               const Barriers& barriers, int k) {
    require_standard(params, "iterate_duration");
    require_exact_width(barriers);
    if (k < 0) throw InvalidArgument("horizon k must be >= 0");
    auto rec = duration_recurrence<Scalar>(params, barriers);
    rec.advance_to(k);
    return {barriers.lower, barriers.upper, k, rec.current()};
}

template FiniteHorizonDuration<double> iterate_duration(const ChainParams&, const Barriers&, int);
template FiniteHorizonDuration<long double> iterate_duration(const ChainParams&, const Barriers&,
                                                             int);
template FiniteHorizonDuration<Rational> iterate_duration(const ChainParams&, const Barriers&,
                                                          int);

std::vector<std::int64_t> DurationSolution::grid() const {
    std::vector<std::int64_t> xs(static_cast<std::size_t>(upper - lower + 1));
    std::iota(xs.begin(), xs.end(), lower);
    return xs;
}

double appendix_bound(const ChainParams& params, const Barriers& barriers, std::int64_t x) {
    require_standard(params, "appendix_bound");
    if (!barriers.contains(x)) throw InvalidArgument("start must satisfy lower <= x <= upper");
    const double p = params.p();
    const double q = params.q();
    const double L = static_cast<double>(barriers.lower);
    const double U = static_cast<double>(barriers.upper);
    const double reach = std::max(std::abs(L), std::abs(U));

    if (std::abs(p - kCriticalP) <= kCriticalWindow) {
        const double shift = static_cast<double>(x) + p - q;
        return 2.0 + 11.0 * p + (2.0 * p - q) * reach +
               (shift * shift + std::max(L * L, U * U)) / 2.0;
    }
    const double drift = p * p + 2.0 * p - 1.0;
    return 1.0 + (2.0 * reach + 2.0 * std::abs(p - q) + std::abs(2.0 * p - q)) / std::abs(drift);
}

DurationSolution solve_duration(const ChainParams& params, const Barriers& barriers,
                                const SolveOptions& options) {
    require_standard(params, "solve_duration");
    require_exact_width(barriers);
    const auto system = duration_system(params, barriers);

    DurationSolution solution{barriers.lower, barriers.upper, {}, {}, {}, 0.0};
    solution.method.kind = options.kind;

    switch (options.kind) {
        case MethodKind::linear_solve:
            solution.m = solve_direct(system);
            break;
        case MethodKind::finite_horizon:
            solution.m = iterate_duration<double>(params, barriers, options.k).m;
            solution.method.k = options.k;
            break;
        case MethodKind::fixed_point: {
            if (!(options.tol > 0.0)) throw InvalidArgument("fixed_point requires tol > 0");
            auto rec = duration_recurrence<double>(params, barriers);
            bool converged = false;
            while (static_cast<std::uint64_t>(rec.generation()) < options.max_iterations) {
                rec.advance();
                if (rec.generation() < 2) continue;
                if (sup_change(rec.current(), rec.previous()) < options.tol &&
                    max_violation(system, rec.current()) < 10.0 * options.tol) {
                    converged = true;
                    break;
                }
            }
            if (!converged) {
                throw ConvergenceError("duration fixed point did not converge within " +
                                       std::to_string(options.max_iterations) + " generations");
            }
            solution.m = rec.current();
            solution.method.tol = options.tol;
            solution.method.iterations = static_cast<std::uint64_t>(rec.generation());
            break;
        }
    }
    solution.residual = max_violation(system, solution.m);

    solution.bound.reserve(solution.m.size());
    for (auto x = barriers.lower; x <= barriers.upper; ++x) {
        const double bound = appendix_bound(params, barriers, x);
        const double m = solution.m_at(x);
        if (m > bound * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "mean duration m(" << x << ")=" << m << " exceeds its bound " << bound;
            throw ConsistencyError(msg.str());
        }
        solution.bound.push_back(bound);
    }
    return solution;
}

}  // namespace ladder
