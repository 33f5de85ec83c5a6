#include "fairdiv/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "fairdiv/errors.hpp"

namespace fairdiv {

const Rational& Profile::utility(int agent, int good) const {
    if (agent < 0 || agent >= agent_count()) {
        throw InputError("agent index " + std::to_string(agent) + " out of range");
    }
    if (good < 0 || good >= good_count()) {
        throw InputError("good index " + std::to_string(good) + " out of range");
    }
    return utilities[agent][good];
}

void Profile::validate() const {
    if (agent_count() < 2) {
        throw InputError("a profile needs at least 2 agents");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : agent_names) {
        if (!seen.insert(name).second) {
            throw InputError("duplicate agent name \"" + name + "\"");
        }
    }
    seen.clear();
    for (const auto& name : good_names) {
        if (!seen.insert(name).second) {
            throw InputError("duplicate good name \"" + name + "\"");
        }
    }
    if (static_cast<int>(utilities.size()) != agent_count()) {
        throw InputError("utility matrix has " + std::to_string(utilities.size()) +
                         " rows for " + std::to_string(agent_count()) + " agents");
    }
    for (int a = 0; a < agent_count(); ++a) {
        if (static_cast<int>(utilities[a].size()) != good_count()) {
            throw InputError("utility row " + std::to_string(a) + " has " +
                             std::to_string(utilities[a].size()) + " entries for " +
                             std::to_string(good_count()) + " goods");
        }
        for (const Rational& u : utilities[a]) {
            if (u < 0) {
                throw InputError("negative utility for agent \"" + agent_names[a] + "\"");
            }
        }
    }
}

Allocation Allocation::from_assignment(int n_agents, std::span<const int> assignment) {
    Allocation alloc;
    alloc.bundles.resize(n_agents);
    for (int g = 0; g < static_cast<int>(assignment.size()); ++g) {
        const int a = assignment[g];
        if (a < 0 || a >= n_agents) {
            throw InputError("assignment refers to agent " + std::to_string(a));
        }
        alloc.bundles[a].push_back(g); // ascending g keeps bundles sorted
    }
    return alloc;
}

std::vector<int> Allocation::to_assignment(int good_count) const {
    std::vector<int> assignment(good_count, -1);
    for (int a = 0; a < agent_count(); ++a) {
        for (int g : bundles[a]) {
            if (g < 0 || g >= good_count || assignment[g] != -1) {
                throw InputError("bundles do not form a partition of the goods");
            }
            assignment[g] = a;
        }
    }
    for (int g = 0; g < good_count; ++g) {
        if (assignment[g] == -1) {
            throw InputError("good " + std::to_string(g) + " is unallocated");
        }
    }
    return assignment;
}

void validate_allocation(const Profile& profile, const Allocation& alloc) {
    if (alloc.agent_count() != profile.agent_count()) {
        throw InputError("allocation has " + std::to_string(alloc.agent_count()) +
                         " bundles for " + std::to_string(profile.agent_count()) +
                         " agents");
    }
    alloc.to_assignment(profile.good_count()); // partition check
}

Rational bundle_utility(const Profile& profile, int agent, std::span<const int> bundle) {
    if (agent < 0 || agent >= profile.agent_count()) {
        throw InputError("agent index " + std::to_string(agent) + " out of range");
    }
    Rational total = 0;
    for (int g : bundle) {
        if (g < 0 || g >= profile.good_count()) {
            throw InputError("good index " + std::to_string(g) + " out of range");
        }
        total += profile.utilities[agent][g];
    }
    return total;
}

UtilityVector utility_vector(const Profile& profile, const Allocation& alloc) {
    validate_allocation(profile, alloc);
    UtilityVector values;
    values.reserve(profile.agent_count());
    for (int a = 0; a < profile.agent_count(); ++a) {
        values.push_back(bundle_utility(profile, a, alloc.bundles[a]));
    }
    return values;
}

std::uint64_t allocation_count(int n_agents, int m_goods, std::uint64_t cap) {
    if (n_agents < 1 || m_goods < 0) {
        throw InputError("allocation_count needs n >= 1 and m >= 0");
    }
    std::uint64_t count = 1;
    const std::uint64_t n = static_cast<std::uint64_t>(n_agents);
    for (int g = 0; g < m_goods; ++g) {
        if (count > cap / n) {
            throw CapacityError("allocation space " + std::to_string(n_agents) + "^" +
                                std::to_string(m_goods) + " exceeds cap " +
                                std::to_string(cap));
        }
        count *= n;
    }
    if (count > cap) {
        throw CapacityError("allocation space exceeds cap " + std::to_string(cap));
    }
    return count;
}

Allocation allocation_at(int n_agents, int m_goods, std::uint64_t index) {
    std::vector<int> assignment(m_goods);
    for (int g = 0; g < m_goods; ++g) {
        assignment[g] = static_cast<int>(index % n_agents);
        index /= n_agents;
    }
    return Allocation::from_assignment(n_agents, assignment);
}

AllocationStream::AllocationStream(int n_agents, int m_goods, std::uint64_t cap)
    : AllocationStream(n_agents, m_goods, 0,
                       allocation_count(n_agents, m_goods, cap), cap) {}

AllocationStream::AllocationStream(int n_agents, int m_goods,
                                   std::uint64_t begin_index, std::uint64_t end_index,
                                   std::uint64_t cap)
    : n_(n_agents), m_(m_goods), begin_(begin_index), end_(end_index) {
    const std::uint64_t total = allocation_count(n_agents, m_goods, cap);
    if (begin_ > end_ || end_ > total) {
        throw InputError("allocation index range out of bounds");
    }
    current_.assign(m_, 0);
    std::uint64_t idx = begin_;
    for (int g = 0; g < m_; ++g) {
        current_[g] = static_cast<int>(idx % n_);
        idx /= n_;
    }
}

bool AllocationStream::next_assignment(std::vector<int>& assignment) {
    if (produced_ >= total()) {
        return false;
    }
    if (produced_ > 0) {
        int g = 0;
        while (current_[g] == n_ - 1) {
            current_[g] = 0;
            ++g;
        }
        ++current_[g];
    }
    ++produced_;
    assignment = current_;
    return true;
}

std::optional<Allocation> AllocationStream::next() {
    std::vector<int> assignment;
    if (!next_assignment(assignment)) {
        return std::nullopt;
    }
    return Allocation::from_assignment(n_, assignment);
}

namespace {

// Kuhn augmenting paths over the bipartite graph agent -> goods with
// positive value.
bool try_match(const Profile& p, int agent, std::vector<int>& good_owner,
               std::vector<bool>& visited) {
    for (int g = 0; g < p.good_count(); ++g) {
        if (visited[g] || p.utilities[agent][g] <= 0) continue;
        visited[g] = true;
        if (good_owner[g] == -1 ||
            try_match(p, good_owner[g], good_owner, visited)) {
            good_owner[g] = agent;
            return true;
        }
    }
    return false;
}

} // namespace

bool admits_positive_allocation(const Profile& profile) {
    std::vector<int> good_owner(profile.good_count(), -1);
    for (int a = 0; a < profile.agent_count(); ++a) {
        std::vector<bool> visited(profile.good_count(), false);
        if (!try_match(profile, a, good_owner, visited)) {
            return false;
        }
    }
    return true;
}

} // namespace fairdiv
