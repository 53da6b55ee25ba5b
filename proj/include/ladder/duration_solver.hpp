#pragma once

#include <cstdint>
#include <vector>

#include "ladder/chain_model.hpp"
#include "ladder/solve_method.hpp"

namespace ladder {

/// m_k(x) = E tau_k^x over lower..upper.
template <typename Scalar>
struct FiniteHorizonDuration {
    std::int64_t lower;
    std::int64_t upper;
    int k;
    std::vector<Scalar> m;

    const Scalar& at(std::int64_t x) const { return m[static_cast<std::size_t>(x - lower)]; }
};

template <typename Scalar>
FiniteHorizonDuration<Scalar> iterate_duration(const ChainParams& params,
                                               const Barriers& barriers, int k);

extern template FiniteHorizonDuration<double> iterate_duration(const ChainParams&,
                                                               const Barriers&, int);
extern template FiniteHorizonDuration<long double> iterate_duration(const ChainParams&,
                                                                    const Barriers&, int);
extern template FiniteHorizonDuration<Rational> iterate_duration(const ChainParams&,
                                                                 const Barriers&, int);

struct DurationSolution {
    std::int64_t lower;
    std::int64_t upper;
    std::vector<double> m;
    std::vector<double> bound;  // appendix_bound per grid point
    MethodInfo method;
    double residual;

    std::vector<std::int64_t> grid() const;
    double m_at(std::int64_t x) const { return m[static_cast<std::size_t>(x - lower)]; }
    double bound_at(std::int64_t x) const { return bound[static_cast<std::size_t>(x - lower)]; }
};

/// Mean duration of L(2,2,p). Same method semantics as solve_ruin. Every
/// returned solution is certified against appendix_bound; a violation throws
/// ConsistencyError.
DurationSolution solve_duration(const ChainParams& params, const Barriers& barriers,
                                const SolveOptions& options = {});

/// p0 = sqrt(2) - 1, where the stationary drift p^2 + 2p - 1 vanishes.
inline const double kCriticalP = 0.41421356237309504880;

/// Window used to decide that p is the critical probability.
inline constexpr double kCriticalWindow = 1e-12;

/// Upper bound on E tau_k^x valid for every k.
///   p != p0: 1 + (2 max(|L|,|U|) + 2|p-q| + |2p-q|) / |p^2 + 2p - 1|
///   p == p0: 2 + 11p + (2p-q) max(|L|,|U|) + ((x+p-q)^2 + max(L^2,U^2)) / 2
/// Near p0 the first form is legitimately huge; it is a certificate, not an
/// estimate.
double appendix_bound(const ChainParams& params, const Barriers& barriers, std::int64_t x);

}  // namespace ladder
