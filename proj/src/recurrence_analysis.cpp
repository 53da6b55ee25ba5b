#include "ladder/recurrence_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ladder/difference_system.hpp"
#include "ladder/duration_solver.hpp"
#include "ladder/exact_solvers.hpp"

namespace ladder {
namespace {

// lambda^n for integer n and a possibly negative base.
double integer_power(double lambda, std::int64_t n) {
    const double magnitude = std::pow(std::abs(lambda), static_cast<double>(n));
    const bool odd = (n % 2) != 0;
    return (lambda < 0.0 && odd) ? -magnitude : magnitude;
}

void require_open_unit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must be in (0,1)");
}

}  // namespace

std::array<double, 4> characteristic_cubic(double p) {
    require_open_unit(p);
    const double q = 1.0 - p;
    return {p, -p * q, p * q - 1.0, q};
}

CharacteristicSpectrum characteristic_roots(double p) {
    require_open_unit(p);
    const double q = 1.0 - p;
    // Quadratic factor p l^2 + p^2 l - q, solved without cancellation.
    const double disc = p * p * p * p + 4.0 * p * q;
    const double t = -0.5 * (p * p + std::sqrt(disc));
    const double negative_root = t / p;
    const double positive_root = -q / t;

    std::array<double, 3> roots{1.0, positive_root, negative_root};
    std::sort(roots.begin(), roots.end(), std::greater<>());

    CharacteristicSpectrum spectrum{roots, {}, false};
    for (double r : roots) {
        if (!spectrum.distinct.empty() &&
            std::abs(spectrum.distinct.back().value - r) < kRootMergeTolerance) {
            auto& last = spectrum.distinct.back();
            ++last.multiplicity;
            spectrum.critical = true;
            // lambda = 1 is exact; keep it as the representative.
            if (r == 1.0) last.value = 1.0;
            continue;
        }
        spectrum.distinct.push_back({r, 1});
    }
    if (spectrum.critical) {
        for (auto& r : spectrum.roots) {
            if (std::abs(r - 1.0) < kRootMergeTolerance) r = 1.0;
        }
    }
    return spectrum;
}

double ClosedFormCoefficients::beta_at(std::int64_t x) const {
    if (x < lower || x > upper) throw InvalidArgument("x outside [lower, upper]");
    if (x == upper) return 1.0;
    return c1 + c2 * static_cast<double>(x) + c3 * integer_power(lambda3, x);
}

std::vector<double> ClosedFormCoefficients::reconstruct() const {
    std::vector<double> beta;
    beta.reserve(static_cast<std::size_t>(upper - lower + 1));
    for (auto x = lower; x <= upper; ++x) beta.push_back(beta_at(x));
    return beta;
}

ClosedFormCoefficients closed_form_coefficients(double p, const Barriers& barriers) {
    if (std::abs(p - kCriticalP) > kClosedFormWindow) {
        throw InvalidArgument("closed form is only available at p = sqrt(2)-1");
    }
    require_exact_width(barriers);
    const double q = 1.0 - p;
    const auto L = barriers.lower;
    const auto U = barriers.upper;
    const double width = static_cast<double>(U - L);
    const double lambda3 = characteristic_roots(p).distinct.back().value;
    const double pow_l = integer_power(lambda3, L);
    const double pow_u1 = integer_power(lambda3, U - 1);
    const double pow_u2 = integer_power(lambda3, U - 2);
    const double pow_u3 = integer_power(lambda3, U - 3);

    const double denominator = p * (q - p) * pow_l + q * (1.0 - 2.0 * q - p * width) * pow_u3 +
                               (p * width + 2.0 * q * q - p) * pow_u2 +
                               (-p * p * width + 2.0 * p * p - q) * pow_u1;
    const double lower_d = static_cast<double>(L);
    const double c1 = (p * p * lower_d * pow_u1 - p * lower_d * pow_u2 + p * q * lower_d * pow_u3 +
                       p * (q - p) * pow_l) /
                      denominator;
    const double c2 = (-p * p * pow_u1 + p * pow_u2 - p * q * pow_u3) / denominator;
    const double c3 = p * (p - q) / denominator;

    ClosedFormCoefficients coeffs{c1, c2, c3, lambda3, p, L, U, 0.0};
    const auto params = make_params(2, 2, p);
    coeffs.residual = max_violation(upper_exit_system(params, barriers), coeffs.reconstruct());
    if (!(coeffs.residual <= 1e-8)) {
        std::ostringstream msg;
        msg << "closed form violates the stationary beta equations by " << coeffs.residual
            << " on [" << L << ", " << U << "]; use linear_solve";
        throw ConsistencyError(msg.str());
    }
    return coeffs;
}

std::vector<EscapePoint> one_sided_escape(double p, std::int64_t x, EscapeDirection direction,
                                          std::span<const std::int64_t> barriers) {
    if (x <= 0) throw InvalidArgument("escape level x must be a positive integer");
    const auto params = make_params(2, 2, p);
    std::vector<EscapePoint> out;
    out.reserve(barriers.size());
    for (std::size_t i = 0; i < barriers.size(); ++i) {
        const auto b = barriers[i];
        if (i > 0) {
            const bool diverging = direction == EscapeDirection::up ? b < barriers[i - 1]
                                                                    : b > barriers[i - 1];
            if (!diverging) throw InvalidArgument("barrier sequence must diverge strictly");
        }
        if (direction == EscapeDirection::up) {
            if (b >= 0) throw InvalidArgument("lower barriers must be negative");
            const auto solution = solve_ruin(params, make_barriers(b, x));
            out.push_back({b, solution.beta_at(0)});
        } else {
            if (b <= 0) throw InvalidArgument("upper barriers must be positive");
            const auto solution = solve_ruin(params, make_barriers(-x, b));
            out.push_back({b, solution.alpha_at(0)});
        }
    }
    return out;
}

double drift(double p) {
    require_open_unit(p);
    return p * p + 2.0 * p - 1.0;
}

template <typename Scalar>
MomentTable<Scalar> step_moments(const Scalar& p) {
    const Scalar q = Scalar(1) - p;
    const Scalar d = p * p + 2 * p - 1;
    const Scalar mean_x1 = p - q;
    MomentTable<Scalar> t;
    t.raw_xk_sq = 4 * p * p + p * q + q;
    t.raw_x1_x2 = 2 * p * p + q * q - 2 * p * q;
    t.raw_adjacent = 4 * p * p * p + q * q - p * q * q - p * q;
    t.var_x1 = 1 - mean_x1 * mean_x1;
    t.var_xk = t.raw_xk_sq - d * d;
    t.cov_x1_x2 = t.raw_x1_x2 - mean_x1 * d;
    t.cov_adjacent = t.raw_adjacent - d * d;
    return t;
}

template MomentTable<double> step_moments(const double&);
template MomentTable<long double> step_moments(const long double&);
template MomentTable<Rational> step_moments(const Rational&);

std::array<double, 4> critical_moment_forms(double p) {
    return {12.0 * p - 4.0, 4.0 - 6.0 * p, 6.0 - 14.0 * p, 3.0 * p - 1.0};
}

MomentTable<double> moment_table(double p) {
    require_open_unit(p);
    const auto t = step_moments(p);

    if (std::abs(p - kCriticalP) <= kCriticalWindow) {
        const auto simplified = critical_moment_forms(p);
        const std::array<double, 4> general{t.var_x1, t.var_xk, t.cov_x1_x2, t.cov_adjacent};
        for (std::size_t i = 0; i < 4; ++i) {
            if (std::abs(simplified[i] - general[i]) > 1e-12) {
                throw ConsistencyError("critical moment identity " + std::to_string(i) +
                                       " does not hold");
            }
        }
    }
    return t;
}

double position_second_moment(double p, std::int64_t x, std::uint64_t n) {
    const auto t = moment_table(p);
    const double d = drift(p);
    const double xd = static_cast<double>(x);
    if (n == 0) return xd * xd;
    const double nd = static_cast<double>(n);
    const double mean = xd + (2.0 * p - 1.0) + (nd - 1.0) * d;
    double variance = t.var_x1;
    if (n >= 2) {
        variance += (nd - 1.0) * t.var_xk + 2.0 * (t.cov_x1_x2 + (nd - 2.0) * t.cov_adjacent);
    }
    return variance + mean * mean;
}

std::string_view to_string(RecurrenceClass c) noexcept {
    switch (c) {
        case RecurrenceClass::consistent_with_recurrence: return "consistent_with_recurrence";
        case RecurrenceClass::no_classification: return "no_classification";
    }
    return "unknown";
}

RecurrenceReport recurrence_probe(const ChainParams& params, std::vector<std::uint64_t> horizons,
                                  std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    require_standard(params, "recurrence_probe");
    if (horizons.empty()) throw InvalidArgument("recurrence_probe needs at least one horizon");
    std::sort(horizons.begin(), horizons.end());
    horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());

    RecurrenceReport report{params.p(), drift(params.p()), {}, true,
                            RecurrenceClass::no_classification};
    report.estimates = estimate_return_probabilities(params, horizons, trials, seed, workers);
    for (std::size_t i = 1; i < report.estimates.size(); ++i) {
        const auto& a = report.estimates[i - 1];
        const auto& b = report.estimates[i];
        if (b.estimate < a.estimate - 2.0 * std::max(a.std_error, b.std_error)) {
            report.nondecreasing = false;
        }
    }
    const double first_deficit = 1.0 - report.estimates.front().estimate;
    const double last_deficit = 1.0 - report.estimates.back().estimate;
    if (std::abs(report.drift) <= 1e-12 && report.nondecreasing && last_deficit < first_deficit) {
        report.classification = RecurrenceClass::consistent_with_recurrence;
    }
    return report;
}

}  // namespace ladder
