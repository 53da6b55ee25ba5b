#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ladder/errors.hpp"
#include "ladder/scalar.hpp"
#include "ladder/solve_method.hpp"

namespace ladder::cli {

enum class Command { ruin, duration, simulate, recurrence, validate };
enum class Format { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or consistency failure
inline constexpr int kExitUsage = 2;

/// Bad flags or flag values. Reported as a single line, exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    Command command = Command::ruin;
    int r = 2;
    int s = 2;
    Rational p;
    std::string p_text;
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    std::optional<std::int64_t> x;
    MethodKind method = MethodKind::linear_solve;
    int k = 0;
    double tol = 1e-10;
    std::uint64_t trials = 100'000;
    std::uint64_t horizon = 0;           // 0 = command default
    std::vector<std::uint64_t> horizons;  // recurrence only
    std::uint64_t seed = 0;
    int max_k = 12;
    unsigned workers = 0;
    Format format = Format::json;
    std::optional<std::string> output_path;
};

/// Parses and validates `args` (without the program name). Flags given on the
/// command line override values from `--config <file.json>`. Throws
/// UsageError on any problem.
RunConfig parse_args(const std::vector<std::string>& args);

/// Dispatches a validated config and writes the report. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the error-to-exit-code policy applied.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ladder::cli
