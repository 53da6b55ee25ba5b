#pragma once

#include <cstdint>
#include <vector>

#include "ladder/chain_model.hpp"

namespace ladder {

/// One equation v(x) = constant + sum coef * v(x + offset).
struct StencilRow {
    std::int64_t x;
    double constant;
    struct Term {
        std::int64_t at;
        double coef;
    };
    std::vector<Term> terms;
};

/// Linear boundary-value problem on the lattice lower..upper: Dirichlet
/// values at both ends, one stencil row per interior point.
struct BoundaryValueSystem {
    std::int64_t lower;
    std::int64_t upper;
    double at_lower;
    double at_upper;
    std::vector<StencilRow> rows;  // x = lower+1 .. upper-1, ascending
};

/// Stationary equations for beta (upper exit) of L(2,2,p).
BoundaryValueSystem upper_exit_system(const ChainParams& params, const Barriers& barriers);

/// Stationary equations for alpha (lower exit) of L(2,2,p).
BoundaryValueSystem lower_exit_system(const ChainParams& params, const Barriers& barriers);

/// Stationary equations for the mean duration of L(2,2,p).
BoundaryValueSystem duration_system(const ChainParams& params, const Barriers& barriers);

/// Direct dense solve (LU with partial pivoting). Returns values on
/// lower..upper. Throws ConsistencyError when the matrix is numerically
/// singular.
std::vector<double> solve_direct(const BoundaryValueSystem& system);

/// Max absolute violation over all rows and both Dirichlet pins. `values`
/// is indexed from system.lower.
double max_violation(const BoundaryValueSystem& system, const std::vector<double>& values);

}  // namespace ladder
