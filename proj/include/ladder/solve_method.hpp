#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ladder {

enum class MethodKind { finite_horizon, fixed_point, linear_solve };

/// How a solution was produced; `k` is meaningful for finite_horizon, `tol`
/// and `iterations` for fixed_point.
struct MethodInfo {
    MethodKind kind = MethodKind::linear_solve;
    int k = 0;
    double tol = 0.0;
    std::uint64_t iterations = 0;

    friend bool operator==(const MethodInfo&, const MethodInfo&) = default;
};

struct SolveOptions {
    MethodKind kind = MethodKind::linear_solve;
    int k = 0;              // finite_horizon generation
    double tol = 1e-10;     // fixed_point stopping tolerance
    std::uint64_t max_iterations = 1'000'000;
};

std::string_view to_string(MethodKind kind) noexcept;

/// Accepts "linear-solve", "fixed-point", "finite-horizon" (underscores too).
MethodKind parse_method(std::string_view text);

}  // namespace ladder
