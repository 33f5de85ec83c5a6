#include "fairdiv/solver.hpp"

#include <utility>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

// Walks every allocation in enumeration order (good 0 varies fastest),
// keeping the per-agent utility vector updated incrementally on each
// odometer step. visit(index, assignment, utils) is called once per
// allocation.
template <typename Visit>
void for_each_allocation(const Profile& profile, Visit&& visit) {
    const int n = profile.agent_count();
    const int m = profile.good_count();
    std::vector<int> assignment(m, 0);
    UtilityVector utils(n, Rational(0));
    for (int g = 0; g < m; ++g) utils[0] += profile.utility(0, g);
    for (std::uint64_t index = 0;; ++index) {
        visit(index, assignment, utils);
        int g = 0;
        while (g < m) {
            const int a = assignment[g];
            utils[a] -= profile.utility(a, g);
            if (a + 1 < n) {
                assignment[g] = a + 1;
                utils[a + 1] += profile.utility(a + 1, g);
                break;
            }
            assignment[g] = 0;
            utils[0] += profile.utility(0, g);
            ++g;
        }
        if (g == m) break;
    }
}

std::vector<Allocation> materialize(int n, int m,
                                    const std::vector<std::uint64_t>& indices) {
    std::vector<Allocation> out;
    out.reserve(indices.size());
    for (std::uint64_t index : indices) out.push_back(allocation_at(n, m, index));
    return out;
}

MaximizerSet exact_maximizers(const Profile& profile, const WelfareExpr& f) {
    bool have = false;
    Rational best;
    std::vector<std::uint64_t> best_indices;
    for_each_allocation(profile, [&](std::uint64_t index, const std::vector<int>&,
                                     const UtilityVector& utils) {
        Rational value = evaluate(f, utils).exact_value();
        if (!have || value > best) {
            have = true;
            best = std::move(value);
            best_indices.assign(1, index);
        } else if (value == best) {
            best_indices.push_back(index);
        }
    });
    MaximizerSet result;
    result.welfare_value = ExtendedValue::exact(best);
    result.allocations =
        materialize(profile.agent_count(), profile.good_count(), best_indices);
    return result;
}

MaximizerSet floating_maximizers(const Profile& profile, const WelfareExpr& f) {
    // Pass 1: the strict maximum (tolerance 0 keeps the running max sharp).
    const BigFloat zero(0);
    bool have = false;
    ExtendedValue best;
    for_each_allocation(profile, [&](std::uint64_t, const std::vector<int>&,
                                     const UtilityVector& utils) {
        ExtendedValue value = evaluate(f, utils);
        if (!have || compare_values(value, best, zero) == Ordering::greater) {
            have = true;
            best = std::move(value);
        }
    });
    // Pass 2: everything within the comparison tolerance of the maximum.
    MaximizerSet result;
    result.welfare_value = best;
    for_each_allocation(profile, [&](std::uint64_t, const std::vector<int>& assignment,
                                     const UtilityVector& utils) {
        if (compare_values(evaluate(f, utils), best) == Ordering::equal) {
            result.allocations.push_back(
                Allocation::from_assignment(profile.agent_count(), assignment));
        }
    });
    return result;
}

} // namespace

MaximizerSet maximizers(const Profile& profile, const WelfareExpr& f,
                        std::uint64_t cap) {
    profile.validate();
    allocation_count(profile.agent_count(), profile.good_count(), cap);
    return f.rational_closed ? exact_maximizers(profile, f)
                             : floating_maximizers(profile, f);
}

MaximizerSet mnw_maximizers(const Profile& profile, std::uint64_t cap) {
    profile.validate();
    allocation_count(profile.agent_count(), profile.good_count(), cap);
    bool have = false;
    MnwKey best;
    std::vector<std::uint64_t> best_indices;
    for_each_allocation(profile, [&](std::uint64_t index, const std::vector<int>&,
                                     const UtilityVector& utils) {
        MnwKey key = mnw_key(utils);
        const Ordering order = have ? compare_keys(key, best) : Ordering::greater;
        if (order == Ordering::greater) {
            have = true;
            best = std::move(key);
            best_indices.assign(1, index);
        } else if (order == Ordering::equal) {
            best_indices.push_back(index);
        }
    });
    MaximizerSet result;
    const bool all_positive = best.positive_count == profile.agent_count();
    result.welfare_value =
        ExtendedValue::exact(all_positive ? best.positive_product : Rational(0));
    result.allocations =
        materialize(profile.agent_count(), profile.good_count(), best_indices);
    result.key = std::move(best);
    return result;
}

std::optional<BbObjective> classify_bb_objective(const WelfareExpr& f) {
    const ExprNode* root = f.root.get();
    if (!root || root->kind != ExprNode::Kind::aggregate) return std::nullopt;
    const ExprNode* body = root->child.get();
    if (body->kind == ExprNode::Kind::coordinate) {
        if (root->agg == AggOp::sum) return BbObjective::utilitarian;
        if (root->agg == AggOp::prod) return BbObjective::nash;
        return std::nullopt;
    }
    if (root->agg == AggOp::sum && body->kind == ExprNode::Kind::fn &&
        body->fn == FnOp::log &&
        body->child->kind == ExprNode::Kind::coordinate) {
        return BbObjective::log_nash;
    }
    return std::nullopt;
}

namespace {

// Depth-first assignment of goods in index order with admissible pruning.
// utilitarian bounds by sum(utils) plus the best-valuer sum of unassigned
// goods; nash and log_nash share the product bound prod_a(utils[a] + what a
// would gain by taking every unassigned good) -- log is monotone, so the
// product argmax is a sum-of-logs argmax.
class BranchBound {
public:
    BranchBound(const Profile& profile, BbObjective objective)
        : profile_(profile),
          objective_(objective),
          n_(profile.agent_count()),
          m_(profile.good_count()),
          assignment_(m_, 0),
          utils_(n_, Rational(0)),
          suffix_best_(m_ + 1, Rational(0)),
          suffix_gain_(n_, std::vector<Rational>(m_ + 1, Rational(0))) {
        for (int g = m_ - 1; g >= 0; --g) {
            Rational top(0);
            for (int a = 0; a < n_; ++a) {
                const Rational& v = profile.utility(a, g);
                suffix_gain_[a][g] = suffix_gain_[a][g + 1] + v;
                if (v > top) top = v;
            }
            suffix_best_[g] = suffix_best_[g + 1] + top;
        }
    }

    Allocation run() {
        descend(0);
        return Allocation::from_assignment(n_, best_assignment_);
    }

private:
    Rational objective_value() const {
        Rational value(objective_ == BbObjective::utilitarian ? 0 : 1);
        for (const Rational& u : utils_) {
            if (objective_ == BbObjective::utilitarian) {
                value += u;
            } else {
                value *= u;
            }
        }
        return value;
    }

    Rational bound(int g) const {
        if (objective_ == BbObjective::utilitarian) {
            Rational value(0);
            for (const Rational& u : utils_) value += u;
            return value + suffix_best_[g];
        }
        Rational value(1);
        for (int a = 0; a < n_; ++a) value *= utils_[a] + suffix_gain_[a][g];
        return value;
    }

    void descend(int g) {
        if (g == m_) {
            Rational value = objective_value();
            if (!have_ || value > best_value_) {
                have_ = true;
                best_value_ = std::move(value);
                best_assignment_ = assignment_;
            }
            return;
        }
        if (have_ && bound(g) <= best_value_) return;
        for (int a = 0; a < n_; ++a) {
            assignment_[g] = a;
            utils_[a] += profile_.utility(a, g);
            descend(g + 1);
            utils_[a] -= profile_.utility(a, g);
        }
        assignment_[g] = 0;
    }

    const Profile& profile_;
    BbObjective objective_;
    int n_;
    int m_;
    std::vector<int> assignment_;
    UtilityVector utils_;
    std::vector<Rational> suffix_best_;          // utilitarian remainder bound
    std::vector<std::vector<Rational>> suffix_gain_; // per-agent remainder sums
    bool have_ = false;
    Rational best_value_;
    std::vector<int> best_assignment_;
};

Allocation brute_one(const Profile& profile, const WelfareExpr& f,
                     std::uint64_t cap) {
    allocation_count(profile.agent_count(), profile.good_count(), cap);
    const BigFloat zero(0);
    bool have = false;
    ExtendedValue best;
    std::uint64_t best_index = 0;
    for_each_allocation(profile, [&](std::uint64_t index, const std::vector<int>&,
                                     const UtilityVector& utils) {
        ExtendedValue value = evaluate(f, utils);
        if (!have || compare_values(value, best, zero) == Ordering::greater) {
            have = true;
            best = std::move(value);
            best_index = index;
        }
    });
    return allocation_at(profile.agent_count(), profile.good_count(), best_index);
}

} // namespace

Allocation solve_one(const Profile& profile, const WelfareExpr& f,
                     SolveStrategy strategy, std::uint64_t cap) {
    profile.validate();
    if (strategy == SolveStrategy::brute) return brute_one(profile, f, cap);
    const std::optional<BbObjective> objective = classify_bb_objective(f);
    if (!objective) {
        throw InputError(
            "branch-and-bound needs sum(u), prod(u), or sum(log(u)); got: " +
            f.source);
    }
    // sum(log(u)) is maximized exactly where prod(u) is.
    const BbObjective effective = *objective == BbObjective::log_nash
                                      ? BbObjective::nash
                                      : *objective;
    return BranchBound(profile, effective).run();
}

} // namespace fairdiv
