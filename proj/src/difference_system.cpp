#include "ladder/difference_system.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace ladder {
namespace {

// Shared layout of Eqs. for alpha, beta and m: rows differ only in the
// constants of the two near-boundary rows and of the interior row.
struct RowConstants {
    double upper_minus_1;
    double upper_minus_2;
    double interior;
};

BoundaryValueSystem build(const ChainParams& params, const Barriers& barriers,
                          double at_lower, double at_upper, RowConstants c) {
    require_standard(params, "stationary solve");
    require_exact_width(barriers);
    const double p = params.p();
    const double q = params.q();
    const auto L = barriers.lower;
    const auto U = barriers.upper;

    BoundaryValueSystem system{L, U, at_lower, at_upper, {}};
    system.rows.reserve(static_cast<std::size_t>(U - L - 1));
    for (auto x = L + 1; x <= U - 1; ++x) {
        if (x == U - 1) {
            system.rows.push_back({x, c.upper_minus_1, {{x - 1, q}}});
        } else if (x == U - 2) {
            system.rows.push_back({x, c.upper_minus_2, {{x, p * q}, {x - 1, q}}});
        } else {
            system.rows.push_back(
                {x, c.interior, {{x, p * q}, {x + 2, p}, {x + 1, -p * q}, {x - 1, q}}});
        }
    }
    return system;
}

}  // namespace

BoundaryValueSystem upper_exit_system(const ChainParams& params, const Barriers& barriers) {
    const double p = params.p();
    // U-1 row: the +1 step reaches U; U-2 row: two successes reach U+1.
    return build(params, barriers, 0.0, 1.0, {p, p * p, 0.0});
}

BoundaryValueSystem lower_exit_system(const ChainParams& params, const Barriers& barriers) {
    return build(params, barriers, 1.0, 0.0, {0.0, 0.0, 0.0});
}

BoundaryValueSystem duration_system(const ChainParams& params, const Barriers& barriers) {
    const double p = params.p();
    return build(params, barriers, 0.0, 0.0, {1.0, 1.0 + p, 1.0});
}

std::vector<double> solve_direct(const BoundaryValueSystem& system) {
    const auto n = static_cast<Eigen::Index>(system.rows.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = system.rows[static_cast<std::size_t>(i)];
        a(i, i) += 1.0;
        b(i) = row.constant;
        for (const auto& term : row.terms) {
            if (term.at == system.lower) {
                b(i) += term.coef * system.at_lower;
            } else if (term.at == system.upper) {
                b(i) += term.coef * system.at_upper;
            } else {
                a(i, term.at - system.lower - 1) -= term.coef;
            }
        }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    if (!(lu.rcond() > 1e-13)) {
        throw ConsistencyError("stationary system is numerically singular (rcond=" +
                               std::to_string(lu.rcond()) + ")");
    }
    const Eigen::VectorXd interior = lu.solve(b);

    std::vector<double> values(static_cast<std::size_t>(n + 2));
    values.front() = system.at_lower;
    values.back() = system.at_upper;
    std::copy(interior.begin(), interior.end(), values.begin() + 1);
    return values;
}

double max_violation(const BoundaryValueSystem& system, const std::vector<double>& values) {
    const auto at = [&](std::int64_t x) {
        return values[static_cast<std::size_t>(x - system.lower)];
    };
    double worst = std::max(std::abs(at(system.lower) - system.at_lower),
                            std::abs(at(system.upper) - system.at_upper));
    for (const auto& row : system.rows) {
        double rhs = row.constant;
        for (const auto& term : row.terms) {
            rhs += term.coef * at(term.at);
        }
        worst = std::max(worst, std::abs(at(row.x) - rhs));
    }
    return worst;
}

}  // namespace ladder
