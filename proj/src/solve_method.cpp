#include "ladder/solve_method.hpp"

#include <algorithm>

#include "ladder/errors.hpp"

namespace ladder {

std::string_view to_string(MethodKind kind) noexcept {
    switch (kind) {
        case MethodKind::finite_horizon: return "finite_horizon";
        case MethodKind::fixed_point: return "fixed_point";
        case MethodKind::linear_solve: return "linear_solve";
    }
    return "unknown";
}

MethodKind parse_method(std::string_view text) {
    std::string normalized(text);
    std::replace(normalized.begin(), normalized.end(), '-', '_');
    for (auto kind : {MethodKind::finite_horizon, MethodKind::fixed_point, MethodKind::linear_solve}) {
        if (normalized == to_string(kind)) return kind;
    }
    throw InvalidArgument("unknown method '" + std::string(text) +
                          "' (expected linear-solve, fixed-point or finite-horizon)");
}

}  // namespace ladder
