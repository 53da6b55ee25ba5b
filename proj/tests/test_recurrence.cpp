#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "ladder/counter_rng.hpp"
#include "ladder/exact_solvers.hpp"
#include "ladder/recurrence_analysis.hpp"

using namespace ladder;

namespace {

const double kCritical = std::sqrt(2.0) - 1.0;

double eval_cubic(const std::array<double, 4>& a, double l) {
    return ((a[0] * l + a[1]) * l + a[2]) * l + a[3];
}

/// Exact joint law of the first `n` increments from a fresh start, by
/// running every sign sequence through the chain.
template <typename S>
struct StepLaw {
    std::vector<std::vector<int>> increments;
    std::vector<S> weights;
};

template <typename S>
StepLaw<S> step_law(const ChainParams& params, const S& p, int n) {
    StepLaw<S> law;
    const S q = S(1) - p;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        WalkState state{0, 0};
        std::vector<int> inc;
        S w = 1;
        for (int i = 0; i < n; ++i) {
            const bool plus = (bits >> i) & 1u;
            const auto next = step(params, state, plus ? Sign::plus : Sign::minus);
            inc.push_back(static_cast<int>(next.position - state.position));
            w *= plus ? p : q;
            state = next;
        }
        law.increments.push_back(std::move(inc));
        law.weights.push_back(w);
    }
    return law;
}

template <typename S, typename F>
S expect(const StepLaw<S>& law, F f) {
    S total = 0;
    for (std::size_t i = 0; i < law.weights.size(); ++i) total += law.weights[i] * f(law.increments[i]);
    return total;
}

template <typename S>
MomentTable<S> enumerated_moments(const ChainParams& params, const S& p) {
    const auto law = step_law(params, p, 4);
    const auto m = [&](int i) { return expect(law, [i](const auto& v) { return S(v[i]); }); };
    const auto mm = [&](int i, int j) {
        return expect(law, [i, j](const auto& v) { return S(v[i] * v[j]); });
    };
    return {mm(0, 0) - m(0) * m(0),
            mm(2, 2) - m(2) * m(2),
            mm(0, 1) - m(0) * m(1),
            mm(2, 3) - m(2) * m(3),
            mm(2, 2),
            mm(0, 1),
            mm(2, 3)};
}

}  // namespace

TEST_CASE("characteristic cubic has a root at 1 for every p") {
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0, q = 1.0 - p;
        const auto a = characteristic_cubic(p);
        CHECK(a[0] == doctest::Approx(p));
        CHECK(a[1] == doctest::Approx(-p * q));
        CHECK(a[2] == doctest::Approx(p * q - 1.0));
        CHECK(a[3] == doctest::Approx(q));
        // (l-1)(p l^2 + p^2 l - q) expanded.
        CHECK(a[1] == doctest::Approx(p * p - p));
        CHECK(a[2] == doctest::Approx(-q - p * p));
        CHECK(std::abs(eval_cubic(a, 1.0)) < 1e-15);

        const auto spectrum = characteristic_roots(p);
        for (double l : spectrum.roots) CHECK(std::abs(eval_cubic(a, l)) < 1e-12 * (1.0 + l * l * std::abs(l)));
        CHECK(spectrum.roots[0] * spectrum.roots[1] * spectrum.roots[2] == doctest::Approx(-q / p));
        CHECK(spectrum.roots[0] >= spectrum.roots[1]);
        CHECK(spectrum.roots[1] >= spectrum.roots[2]);
        CHECK(!spectrum.critical);
        CHECK(spectrum.distinct.size() == 3);
    }
}

TEST_CASE("critical p gives the double root 1 and -sqrt(2)") {
    const auto spectrum = characteristic_roots(kCritical);
    CHECK(spectrum.critical);
    REQUIRE(spectrum.distinct.size() == 2);
    CHECK(spectrum.distinct[0].value == 1.0);
    CHECK(spectrum.distinct[0].multiplicity == 2);
    CHECK(std::abs(spectrum.distinct[1].value + std::sqrt(2.0)) < 1e-12);
    CHECK(spectrum.distinct[1].multiplicity == 1);
    CHECK(spectrum.roots[0] == 1.0);
    CHECK(spectrum.roots[1] == 1.0);

    const auto half = characteristic_roots(0.5);
    CHECK(half.roots[1] == doctest::Approx((-0.5 + std::sqrt(4.25)) / 2.0));
    CHECK(half.roots[2] == doctest::Approx((-0.5 - std::sqrt(4.25)) / 2.0));
    CHECK_THROWS_AS(characteristic_roots(1.0), InvalidArgument);
}

TEST_CASE("closed form matches the linear solve") {
    const auto params = make_params(2, 2, kCritical);
    for (const Barriers strip : {Barriers{-6, 6}, Barriers{-10, 4}, Barriers{-4, 10},
                                 Barriers{-2, 2}, Barriers{-30, 25}}) {
        const auto cf = closed_form_coefficients(kCritical, strip);
        const auto direct = solve_ruin(params, strip);
        const auto values = cf.reconstruct();
        REQUIRE(values.size() == direct.beta.size());
        for (std::size_t i = 0; i < values.size(); ++i) CHECK(std::abs(values[i] - direct.beta[i]) < 1e-10);
        CHECK(cf.beta_at(strip.lower) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(cf.beta_at(strip.upper) == 1.0);
        CHECK(cf.residual < 1e-12);
        CHECK(std::abs(cf.lambda3 + std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("closed form is restricted to the critical window") {
    CHECK_THROWS_AS(closed_form_coefficients(0.5, {-6, 6}), InvalidArgument);
    CHECK_THROWS_AS(closed_form_coefficients(kCritical + 1e-6, {-6, 6}), InvalidArgument);
    CHECK_NOTHROW(closed_form_coefficients(kCritical + 5e-11, {-6, 6}));
    CHECK_THROWS_AS(closed_form_coefficients(kCritical, {-1, 2}), InvalidArgument);
}

TEST_CASE("closed-form coefficients trend to the one-sided limits at rate 1/width") {
    double prev_gap = 1.0;
    for (std::int64_t lower : {-25, -50, -100, -200}) {
        const auto cf = closed_form_coefficients(kCritical, {lower, 4});
        const double gap = 1.0 - cf.c1;
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        if (prev_gap < 1.0) CHECK(gap / prev_gap == doctest::Approx(0.5).epsilon(0.08));
        CHECK(std::abs(cf.c2) == doctest::Approx(gap / 4.0).epsilon(0.2));
        prev_gap = gap;
    }
    double prev_c1 = 1.0;
    for (std::int64_t upper : {25, 50, 100, 200}) {
        const auto cf = closed_form_coefficients(kCritical, {-4, upper});
        CHECK(cf.c1 < prev_c1);
        CHECK(cf.c1 > 0.0);
        prev_c1 = cf.c1;
    }
}

TEST_CASE("one-sided escape probabilities increase with slow deficit decay") {
    const std::vector<std::int64_t> lowers{-10, -20, -40, -80, -160};
    const auto up = one_sided_escape(kCritical, 3, EscapeDirection::up, lowers);
    REQUIRE(up.size() == lowers.size());
    for (std::size_t i = 1; i < up.size(); ++i) {
        CHECK(up[i].probability > up[i - 1].probability);
        const double ratio = (1.0 - up[i].probability) / (1.0 - up[i - 1].probability);
        CHECK(ratio > 0.45);
        CHECK(ratio < 0.7);
    }
    CHECK(up.back().barrier == -160);

    const std::vector<std::int64_t> uppers{10, 20, 40, 80};
    const auto down = one_sided_escape(kCritical, 3, EscapeDirection::down, uppers);
    for (std::size_t i = 1; i < down.size(); ++i) CHECK(down[i].probability > down[i - 1].probability);

    const std::vector<std::int64_t> bad{-10, -10};
    CHECK_THROWS_AS(one_sided_escape(kCritical, 3, EscapeDirection::up, bad), InvalidArgument);
    const std::vector<std::int64_t> wrong_way{10, 20};
    CHECK_THROWS_AS(one_sided_escape(kCritical, 3, EscapeDirection::up, wrong_way), InvalidArgument);
}

TEST_CASE("drift examples") {
    CHECK(std::abs(drift(kCritical)) < 1e-15);
    CHECK(drift(0.5) == doctest::Approx(0.25));
    CHECK(drift(0.1) == doctest::Approx(-0.79));
    for (int i = 1; i < 100; ++i) {
        const double p = i / 100.0;
        CHECK((drift(p) > 0) == (p > kCritical));
    }
}

TEST_CASE("moments agree with the exact step law") {
    for (const Rational p : {Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
        const auto params = make_params(2, 2, p);
        const auto want = enumerated_moments(params, p);
        const auto got = step_moments(p);
        CHECK(got.var_x1 == want.var_x1);
        CHECK(got.var_xk == want.var_xk);
        CHECK(got.cov_x1_x2 == want.cov_x1_x2);
        CHECK(got.cov_adjacent == want.cov_adjacent);
        CHECK(got.raw_xk_sq == want.raw_xk_sq);
        CHECK(got.raw_x1_x2 == want.raw_x1_x2);
        CHECK(got.raw_adjacent == want.raw_adjacent);
    }
    const auto half = step_moments(Rational(1, 2));
    CHECK(half.var_x1 == 1);
    CHECK(half.var_xk == Rational(27, 16));
    CHECK(half.cov_x1_x2 == Rational(1, 4));
    CHECK(half.cov_adjacent == Rational(5, 16));

    const long double pl = std::sqrt(2.0L) - 1.0L;
    const auto want = enumerated_moments(make_params(2, 2, kCritical), pl);
    const auto got = moment_table(kCritical);
    CHECK(std::abs(got.var_x1 - static_cast<double>(want.var_x1)) < 1e-12);
    CHECK(std::abs(got.var_xk - static_cast<double>(want.var_xk)) < 1e-12);
    CHECK(std::abs(got.cov_x1_x2 - static_cast<double>(want.cov_x1_x2)) < 1e-12);
    CHECK(std::abs(got.cov_adjacent - static_cast<double>(want.cov_adjacent)) < 1e-12);
}

TEST_CASE("critical moment forms") {
    const auto table = moment_table(kCritical);
    const auto forms = critical_moment_forms(kCritical);
    CHECK(std::abs(table.var_x1 - forms[0]) < 1e-12);
    CHECK(std::abs(table.var_xk - forms[1]) < 1e-12);
    CHECK(std::abs(table.cov_x1_x2 - forms[2]) < 1e-12);
    CHECK(std::abs(table.cov_adjacent - forms[3]) < 1e-12);
    // Raw and central moments coincide only without drift.
    CHECK(std::abs(table.raw_xk_sq - table.var_xk) < 1e-12);
    const auto half = moment_table(0.5);
    CHECK(std::abs(half.raw_xk_sq - half.var_xk) > 0.01);
}

TEST_CASE("position second moment") {
    for (double p : {0.3, kCritical, 0.5}) {
        const auto params = make_params(2, 2, p);
        const long double pl = p;
        for (int n = 1; n <= 10; ++n) {
            const auto law = step_law(params, pl, n);
            for (std::int64_t x : {-3, 0, 2}) {
                const auto want = expect(law, [x](const auto& v) {
                    long double s = static_cast<long double>(x);
                    for (int d : v) s += d;
                    return s * s;
                });
                INFO("p=", p, " n=", n, " x=", x);
                CHECK(std::abs(position_second_moment(p, x, n) - static_cast<double>(want)) <
                      1e-10 * (1.0 + static_cast<double>(want)));
            }
        }
    }
    const double p = kCritical, q = 1.0 - p;
    for (std::uint64_t n : {2u, 5u, 50u, 1000u}) {
        for (std::int64_t x : {-2, 0, 7}) {
            const double d = static_cast<double>(x) + p - q;
            const double closed = 8.0 + 2.0 * static_cast<double>(n) - 22.0 * p + d * d;
            CHECK(position_second_moment(p, x, n) == doctest::Approx(closed).epsilon(1e-12));
        }
    }
}

TEST_CASE("simulated mean increment matches the drift") {
    for (double p : {0.2, kCritical, 0.6}) {
        const auto params = make_params(2, 2, p);
        TrialStream stream(77, 0);
        WalkState state{0, 0};
        const int n = 1'000'000;
        for (int i = 0; i < n; ++i) {
            state = step(params, state, stream.next_uniform() < p ? Sign::plus : Sign::minus);
        }
        const auto m = moment_table(p);
        const double sigma = std::sqrt((m.var_xk + 2.0 * m.cov_adjacent) / n);
        CHECK(std::abs(static_cast<double>(state.position) / n - drift(p)) < 5.0 * sigma);
    }
}

TEST_CASE("recurrence probe classification") {
    const std::vector<std::uint64_t> horizons{1000, 100, 10'000, 100};
    const auto crit = recurrence_probe(make_params(2, 2, kCritical), horizons, 4000, 3);
    REQUIRE(crit.estimates.size() == 3);
    CHECK(crit.estimates[0].horizon == 100);
    CHECK(crit.estimates[2].horizon == 10'000);
    CHECK(crit.nondecreasing);
    CHECK(crit.classification == RecurrenceClass::consistent_with_recurrence);
    CHECK(crit.estimates[2].estimate > 0.97);

    for (double p : {0.5, 0.1}) {
        const auto rep = recurrence_probe(make_params(2, 2, p), {100, 1000}, 2000, 3);
        CHECK(rep.classification == RecurrenceClass::no_classification);
        CHECK(rep.drift == doctest::Approx(drift(p)));
    }
    CHECK(to_string(RecurrenceClass::consistent_with_recurrence) == "consistent_with_recurrence");
    CHECK_THROWS_AS(recurrence_probe(make_params(3, 2, 0.5), {10}, 10, 0), InvalidArgument);
    CHECK_THROWS_AS(recurrence_probe(make_params(2, 2, 0.5), {}, 10, 0), InvalidArgument);
}
