#pragma once

#include <cstdint>

#include "ladder/chain_model.hpp"

namespace ladder {

/// Exact finite-horizon quantities from summing over every sign sequence of
/// length k. `censored` is the mass of paths still inside the strip at step k,
/// so alpha + beta + censored == 1 (exactly, in rational mode).
template <typename Scalar>
struct ExactFiniteHorizon {
    Scalar alpha;
    Scalar beta;
    Scalar censored;
    Scalar mean_tau;
};

inline constexpr int kDefaultEnumerationCap = 24;

/// Depth-first enumeration of all 2^k sign sequences from start x with fresh
/// memory, cutting each branch at its first exit. Valid for any r, s.
/// Branches are visited in a fixed order (+1 before -1), so floating-point
/// results do not depend on anything but the inputs.
template <typename Scalar>
ExactFiniteHorizon<Scalar> enumerate_exact(const ChainParams& params, const Barriers& barriers,
                                           std::int64_t x, int k,
                                           int cap = kDefaultEnumerationCap);

/// Comparison tolerance for the extended-precision (long double) mode.
inline constexpr long double kEnumerationTolerance = 1e-15L;

extern template ExactFiniteHorizon<double> enumerate_exact(const ChainParams&, const Barriers&,
                                                           std::int64_t, int, int);
extern template ExactFiniteHorizon<long double> enumerate_exact(const ChainParams&,
                                                                const Barriers&, std::int64_t,
                                                                int, int);
extern template ExactFiniteHorizon<Rational> enumerate_exact(const ChainParams&,
                                                             const Barriers&, std::int64_t, int,
                                                             int);

}  // namespace ladder
