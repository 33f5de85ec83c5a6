#ifndef FAIRDIV_SOLVER_HPP
#define FAIRDIV_SOLVER_HPP

#include <optional>
#include <vector>

#include "fairdiv/model.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

// Every allocation attaining the optimal welfare, in enumeration order.
// exhaustive means the full space was searched: under the exact backend no
// unlisted allocation ties or exceeds welfare_value; under the floating
// backend none exceeds it beyond the comparison tolerance (near-ties are
// all listed). key is set when the optimum was taken under the MNW
// lexicographic key.
struct MaximizerSet {
    ExtendedValue welfare_value;
    std::vector<Allocation> allocations;
    bool exhaustive = true;
    std::optional<MnwKey> key;
};

// Exhaustive maximizer set of f over all allocations. Throws CapacityError
// when n^m exceeds cap.
MaximizerSet maximizers(const Profile& profile, const WelfareExpr& f,
                        std::uint64_t cap = kDefaultEnumerationCap);

// Exhaustive maximizer set under the MNW key (positive count, then product
// of positive utilities). Always exact; welfare_value is the full product
// at the optimum (zero on degenerate profiles).
MaximizerSet mnw_maximizers(const Profile& profile,
                            std::uint64_t cap = kDefaultEnumerationCap);

enum class SolveStrategy { brute, branch_bound };

// Objectives with an admissible branch-and-bound pruning rule.
enum class BbObjective { utilitarian, nash, log_nash };

// Matches f against the branch-and-bound objective families
// sum(u), prod(u), sum(log(u)); nullopt for anything else.
std::optional<BbObjective> classify_bb_objective(const WelfareExpr& f);

// One allocation attaining the maximum welfare. brute scans the full space
// in enumeration order and returns the first optimum; branch_bound prunes
// with per-objective admissible bounds and requires a supported family.
// Both are deterministic given the good ordering.
Allocation solve_one(const Profile& profile, const WelfareExpr& f,
                     SolveStrategy strategy,
                     std::uint64_t cap = kDefaultEnumerationCap);

} // namespace fairdiv

#endif
