#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ladder/chain_model.hpp"
#include "ladder/montecarlo.hpp"

namespace ladder {

/// Coefficients {a3, a2, a1, a0} of p l^3 - pq l^2 + (pq-1) l + q, the
/// characteristic polynomial of the interior ruin row. It factors as
/// (l - 1)(p l^2 + p^2 l - q).
std::array<double, 4> characteristic_cubic(double p);

struct CharacteristicRoot {
    double value;
    int multiplicity;
};

struct CharacteristicSpectrum {
    std::array<double, 3> roots;              // with multiplicity, descending
    std::vector<CharacteristicRoot> distinct;  // descending
    bool critical;                             // a repeated root exists
};

/// Separation below which two roots are treated as one repeated root.
inline constexpr double kRootMergeTolerance = 1e-10;

CharacteristicSpectrum characteristic_roots(double p);

/// beta(x) = c1 + c2 x + c3 lambda3^x on [L, U-1] at the critical p; beta(U)
/// is the Dirichlet value 1.
struct ClosedFormCoefficients {
    double c1;
    double c2;
    double c3;
    double lambda3;
    double p;
    std::int64_t lower;
    std::int64_t upper;
    double residual;  // max violation of the stationary beta equations

    double beta_at(std::int64_t x) const;
    std::vector<double> reconstruct() const;  // lower..upper
};

/// Window around sqrt(2)-1 accepted by closed_form_coefficients.
inline constexpr double kClosedFormWindow = 1e-10;

/// Evaluates the explicit coefficient formulas and validates the result against
/// every stationary row. Throws InvalidArgument outside the critical window
/// and ConsistencyError if a row is violated by more than 1e-8.
ClosedFormCoefficients closed_form_coefficients(double p, const Barriers& barriers);

enum class EscapeDirection { up, down };

struct EscapePoint {
    std::int64_t barrier;
    double probability;
};

/// up: beta(0) for U = x as L runs through `barriers` (L -> -inf).
/// down: alpha(0) for L = -x as U runs through `barriers` (U -> +inf).
std::vector<EscapePoint> one_sided_escape(double p, std::int64_t x, EscapeDirection direction,
                                          std::span<const std::int64_t> barriers);

/// Stationary per-step mean E X_k = p^2 + 2p - 1 (k >= 2).
double drift(double p);

/// Step moments of L(2,2,p). The central moments hold for every p; the raw
/// moments E[X_k^2], E[X_1 X_2], E[X_k X_{k+1}] coincide with them exactly
/// when the drift vanishes.
template <typename Scalar>
struct MomentTable {
    Scalar var_x1;
    Scalar var_xk;
    Scalar cov_x1_x2;
    Scalar cov_adjacent;
    Scalar raw_xk_sq;
    Scalar raw_x1_x2;
    Scalar raw_adjacent;
};

/// General-p moments in any arithmetic (exact for Rational p).
template <typename Scalar>
MomentTable<Scalar> step_moments(const Scalar& p);

extern template MomentTable<double> step_moments(const double&);
extern template MomentTable<long double> step_moments(const long double&);
extern template MomentTable<Rational> step_moments(const Rational&);

/// At p = sqrt(2)-1 additionally checks var_x1 = 12p-4, var_xk = 4-6p,
/// cov_x1_x2 = 6-14p, cov_adjacent = 3p-1 to 1e-12 (ConsistencyError if not).
MomentTable<double> moment_table(double p);

/// The simplified critical forms {12p-4, 4-6p, 6-14p, 3p-1}.
std::array<double, 4> critical_moment_forms(double p);

/// E[(x + S_n)^2] from the moment table.
double position_second_moment(double p, std::int64_t x, std::uint64_t n);

enum class RecurrenceClass { consistent_with_recurrence, no_classification };

std::string_view to_string(RecurrenceClass c) noexcept;

struct RecurrenceReport {
    double p;
    double drift;
    std::vector<MCEstimate> estimates;  // one per horizon, ascending
    bool nondecreasing;
    RecurrenceClass classification;
};

/// Estimates P(T <= N) over the horizons and combines them with the drift.
/// Only the zero-drift case can be classified; transience is never claimed.
RecurrenceReport recurrence_probe(const ChainParams& params, std::vector<std::uint64_t> horizons,
                                  std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

}  // namespace ladder
