#pragma once

// Finite-horizon two-lag recurrences shared by the ruin and duration solvers.

#include <cstdint>
#include <utility>
#include <vector>

namespace ladder::detail {

/// Generation-by-generation evaluation of
///   v_k(U-1) = c1 + q v_{k-1}(U-2)
///   v_k(U-2) = c2 + pq v_{k-2}(U-2) + q v_{k-1}(U-3)
///   v_k(x)   = c0 + pq v_{k-2}(x) + p v_{k-1}(x+2) - pq v_{k-2}(x+1) + q v_{k-1}(x-1)
/// with Dirichlet values at L and U. Generations 0 and 1 come from first
/// principles: generation 0 is the barrier indicator (zero interior), and
/// generation 1 is one step with fresh memory, so only +1 or -1 is possible.
template <typename S>
class TwoLagRecurrence {
public:
    struct Rows {
        S at_lower;
        S at_upper;
        S step_cost;  // 0 for exit probabilities, 1 for durations
        S upper_minus_1;
        S upper_minus_2;
        S interior;
    };

    TwoLagRecurrence(S p, std::int64_t lower, std::int64_t upper, Rows rows)
        : p_(std::move(p)), q_(S(1) - p_), pq_(p_ * q_), lower_(lower), upper_(upper),
          rows_(std::move(rows)) {
        const auto n = static_cast<std::size_t>(upper - lower + 1);
        current_.assign(n, S(0));
        current_.front() = rows_.at_lower;
        current_.back() = rows_.at_upper;
    }

    int generation() const noexcept { return generation_; }
    const std::vector<S>& current() const noexcept { return current_; }
    const std::vector<S>& previous() const noexcept { return previous_; }

    void advance() {
        std::vector<S> next(current_.size(), S(0));
        next.front() = rows_.at_lower;
        next.back() = rows_.at_upper;
        if (generation_ == 0) {
            for (auto x = lower_ + 1; x <= upper_ - 1; ++x) {
                at(next, x) = rows_.step_cost + p_ * at(current_, x + 1) + q_ * at(current_, x - 1);
            }
        } else {
            const auto& g1 = current_;   // generation k-1
            const auto& g2 = previous_;  // generation k-2
            for (auto x = lower_ + 1; x <= upper_ - 1; ++x) {
                S& out = at(next, x);
                if (x == upper_ - 1) {
                    out = rows_.upper_minus_1 + q_ * at(g1, x - 1);
                } else if (x == upper_ - 2) {
                    out = rows_.upper_minus_2 + pq_ * at(g2, x) + q_ * at(g1, x - 1);
                } else {
                    out = rows_.interior + pq_ * at(g2, x) + p_ * at(g1, x + 2) -
                          pq_ * at(g2, x + 1) + q_ * at(g1, x - 1);
                }
            }
        }
        previous_ = std::move(current_);
        current_ = std::move(next);
        ++generation_;
    }

    void advance_to(int k) {
        while (generation_ < k) advance();
    }

private:
    S& at(std::vector<S>& v, std::int64_t x) const { return v[static_cast<std::size_t>(x - lower_)]; }
    const S& at(const std::vector<S>& v, std::int64_t x) const {
        return v[static_cast<std::size_t>(x - lower_)];
    }

    S p_;
    S q_;
    S pq_;
    std::int64_t lower_;
    std::int64_t upper_;
    Rows rows_;
    int generation_ = 0;
    std::vector<S> current_;
    std::vector<S> previous_;
};

}  // namespace ladder::detail
