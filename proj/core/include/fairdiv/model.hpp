#ifndef FAIRDIV_MODEL_HPP
#define FAIRDIV_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

// Per-agent utilities of an allocation, indexed by agent.
using UtilityVector = std::vector<Rational>;

// Agents, goods, and an additive utility matrix. Utilities are nonnegative
// rationals; names live only at the I/O boundary, all computation is by index.
struct Profile {
    std::vector<std::string> agent_names;
    std::vector<std::string> good_names;
    std::vector<std::vector<Rational>> utilities; // [agent][good]

    int agent_count() const { return static_cast<int>(agent_names.size()); }
    int good_count() const { return static_cast<int>(good_names.size()); }

    const Rational& utility(int agent, int good) const;

    // Throws InputError unless: >= 2 distinct agents, distinct goods,
    // matrix dimensions match, every entry >= 0.
    void validate() const;
};

// Ordered partition of the goods into one bundle per agent. Bundles hold
// sorted good indices; empty bundles are legal.
struct Allocation {
    std::vector<std::vector<int>> bundles;

    int agent_count() const { return static_cast<int>(bundles.size()); }

    // assignment[g] = agent receiving good g.
    static Allocation from_assignment(int n_agents, std::span<const int> assignment);
    std::vector<int> to_assignment(int good_count) const;

    bool operator==(const Allocation&) const = default;
};

// Throws InputError unless alloc is an ordered partition of the profile's
// goods into agent_count() bundles.
void validate_allocation(const Profile& profile, const Allocation& alloc);

// Sum of the agent's utilities over the bundle. Indices are range-checked.
Rational bundle_utility(const Profile& profile, int agent, std::span<const int> bundle);

// Component i is bundle_utility(profile, i, alloc.bundles[i]). Validates the
// partition invariant first.
UtilityVector utility_vector(const Profile& profile, const Allocation& alloc);

// n^m, guarded: throws CapacityError when the count exceeds cap.
std::uint64_t allocation_count(int n_agents, int m_goods,
                               std::uint64_t cap = kDefaultEnumerationCap);

// The allocation at a given position of the enumeration order: good g is
// assigned by digit g of index written in base n, so good 0 varies fastest.
Allocation allocation_at(int n_agents, int m_goods, std::uint64_t index);

// Streams every ordered partition exactly once, ascending in index as
// defined by allocation_at. A [begin, end) index range supports partitioned
// consumption by parallel workers.
class AllocationStream {
public:
    AllocationStream(int n_agents, int m_goods,
                     std::uint64_t cap = kDefaultEnumerationCap);
    AllocationStream(int n_agents, int m_goods,
                     std::uint64_t begin_index, std::uint64_t end_index,
                     std::uint64_t cap);

    std::uint64_t total() const { return end_ - begin_; }

    std::optional<Allocation> next();

    // Cursor form of next(); fills assignment and returns false at the end.
    bool next_assignment(std::vector<int>& assignment);

private:
    int n_;
    int m_;
    std::uint64_t begin_;
    std::uint64_t end_;
    std::uint64_t produced_ = 0;
    std::vector<int> current_;
};

// True if some allocation gives every agent strictly positive utility
// (equivalently: agents can be matched to distinct positively-valued goods).
bool admits_positive_allocation(const Profile& profile);

} // namespace fairdiv

#endif
