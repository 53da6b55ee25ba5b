#include "ladder/validation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ladder/enumeration.hpp"
#include "ladder/recurrence_analysis.hpp"

namespace ladder {
namespace {

const Barriers kOracleStrips[] = {{-2, 2}, {-3, 2}, {-2, 3}, {-4, 4}};
const Barriers kStationaryStrips[] = {{-4, 4}, {-6, 6}, {-10, 5}};

std::string describe(const Barriers& b) {
    return "[" + std::to_string(b.lower) + "," + std::to_string(b.upper) + "]";
}

double as_double(const Rational& r) { return std::abs(r.get_d()); }

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Oracle equality plus monotonicity in k on one strip.
void check_strip(const ChainParams& params, const Barriers& strip, int max_k,
                 const SolverHooks& hooks, std::vector<ValidationCheck>& out) {
    Rational alpha_diff = 0, beta_diff = 0, tau_diff = 0;
    bool monotone = true;
    std::vector<Rational> prev_alpha, prev_beta, prev_m;
    for (int k = 0; k <= max_k; ++k) {
        const auto ruin = hooks.ruin(params, strip, k);
        const auto duration = hooks.duration(params, strip, k);
        for (auto x = strip.lower; x <= strip.upper; ++x) {
            const auto oracle = enumerate_exact<Rational>(params, strip, x, k);
            alpha_diff = std::max<Rational>(alpha_diff, abs(Rational(ruin.alpha_at(x) - oracle.alpha)));
            beta_diff = std::max<Rational>(beta_diff, abs(Rational(ruin.beta_at(x) - oracle.beta)));
            tau_diff = std::max<Rational>(tau_diff, abs(Rational(duration.at(x) - oracle.mean_tau)));
        }
        if (k > 0) {
            for (std::size_t i = 0; i < ruin.alpha.size(); ++i) {
                monotone = monotone && ruin.alpha[i] >= prev_alpha[i] &&
                           ruin.beta[i] >= prev_beta[i] && duration.m[i] >= prev_m[i];
            }
        }
        prev_alpha = ruin.alpha;
        prev_beta = ruin.beta;
        prev_m = duration.m;
    }
    const std::string where = describe(strip) + " k<=" + std::to_string(max_k);
    out.push_back({"oracle_alpha", where, as_double(alpha_diff), 0.0, alpha_diff == 0});
    out.push_back({"oracle_beta", where, as_double(beta_diff), 0.0, beta_diff == 0});
    out.push_back({"oracle_mean_tau", where, as_double(tau_diff), 0.0, tau_diff == 0});
    out.push_back({"monotone_in_k", where, 0.0, 0.0, monotone});
}

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

ValidationReport validate(const ChainParams& params, int max_k, const SolverHooks& hooks) {
    require_standard(params, "validate");
    if (max_k < 0 || max_k > kDefaultEnumerationCap) {
        throw InvalidArgument("max-k must be in [0, " + std::to_string(kDefaultEnumerationCap) +
                              "]");
    }
    ValidationReport report{params.p(), max_k, {}};
    auto& checks = report.checks;

    for (const auto& strip : kOracleStrips) check_strip(params, strip, max_k, hooks, checks);

    for (const auto& strip : kStationaryStrips) {
        const auto direct = solve_ruin(params, strip);
        const double complement = complement_residual(direct);
        checks.push_back({"complement_identity", describe(strip), complement, 1e-12,
                          complement < 1e-12});

        const auto dur = solve_duration(params, strip);
        double slack = 0.0;
        bool bounded = true;
        for (std::size_t i = 0; i < dur.m.size(); ++i) {
            bounded = bounded && dur.m[i] <= dur.bound[i];
            slack = std::max(slack, dur.m[i] - dur.bound[i]);
        }
        checks.push_back({"duration_bound", describe(strip), std::max(slack, 0.0), 0.0, bounded});
    }

    const Barriers strip{-4, 4};
    SolveOptions fixed{MethodKind::fixed_point, 0, 1e-12};
    const auto ruin_direct = solve_ruin(params, strip);
    const auto ruin_fixed = solve_ruin(params, strip, fixed);
    const double ruin_gap = std::max(sup_diff(ruin_direct.alpha, ruin_fixed.alpha),
                                     sup_diff(ruin_direct.beta, ruin_fixed.beta));
    checks.push_back({"ruin_fixed_point_vs_linear_solve", describe(strip), ruin_gap, 1e-8,
                      ruin_gap < 1e-8});

    const auto dur_direct = solve_duration(params, strip);
    const auto dur_fixed = solve_duration(params, strip, fixed);
    const double dur_gap = sup_diff(dur_direct.m, dur_fixed.m);
    checks.push_back({"duration_fixed_point_vs_linear_solve", describe(strip), dur_gap, 1e-8,
                      dur_gap < 1e-8});

    if (std::abs(params.p() - kCriticalP) <= kClosedFormWindow) {
        const Barriers wide{-6, 6};
        const auto closed = closed_form_coefficients(params.p(), wide);
        const double gap = sup_diff(closed.reconstruct(), solve_ruin(params, wide).beta);
        checks.push_back({"closed_form_vs_linear_solve", describe(wide), gap, 1e-10, gap < 1e-10});
    }
    return report;
}

}  // namespace ladder
