#pragma once

#include <cstdint>
#include <vector>

#include "ladder/chain_model.hpp"
#include "ladder/solve_method.hpp"

namespace ladder {

/// alpha_k and beta_k over lower..upper for one horizon k.
template <typename Scalar>
struct FiniteHorizonRuin {
    std::int64_t lower;
    std::int64_t upper;
    int k;
    std::vector<Scalar> alpha;
    std::vector<Scalar> beta;

    const Scalar& alpha_at(std::int64_t x) const { return alpha[index(x)]; }
    const Scalar& beta_at(std::int64_t x) const { return beta[index(x)]; }

private:
    std::size_t index(std::int64_t x) const { return static_cast<std::size_t>(x - lower); }
};

/// Exact absorption probabilities within k steps for L(2,2,p), by the
/// two-lag recurrences. Requires upper - lower >= 4 and k >= 0.
template <typename Scalar>
FiniteHorizonRuin<Scalar> iterate_ruin(const ChainParams& params, const Barriers& barriers, int k);

extern template FiniteHorizonRuin<double> iterate_ruin(const ChainParams&, const Barriers&, int);
extern template FiniteHorizonRuin<long double> iterate_ruin(const ChainParams&, const Barriers&,
                                                            int);
extern template FiniteHorizonRuin<Rational> iterate_ruin(const ChainParams&, const Barriers&,
                                                         int);

struct RuinSolution {
    std::int64_t lower;
    std::int64_t upper;
    std::vector<double> alpha;
    std::vector<double> beta;
    MethodInfo method;
    double residual;  // max violation of the stationary alpha and beta equations

    std::vector<std::int64_t> grid() const;
    double alpha_at(std::int64_t x) const { return alpha[static_cast<std::size_t>(x - lower)]; }
    double beta_at(std::int64_t x) const { return beta[static_cast<std::size_t>(x - lower)]; }
};

/// Ruin probabilities of L(2,2,p) on [lower, upper].
///  - linear_solve: direct solve of the stationary boundary-value systems.
///  - fixed_point: iterates the finite-horizon recurrences until the sup-norm
///    change between generations drops below tol and the stationary residual
///    is below 10*tol. Throws ConvergenceError at max_iterations.
///  - finite_horizon: generation k, reported with its stationary residual.
RuinSolution solve_ruin(const ChainParams& params, const Barriers& barriers,
                        const SolveOptions& options = {});

/// max_x |alpha(x) + beta(x) - 1|.
double complement_residual(const RuinSolution& solution);

}  // namespace ladder
