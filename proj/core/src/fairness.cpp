#include "fairdiv/fairness.hpp"

#include "fairdiv/errors.hpp"

namespace fairdiv {

Rational envy_amount(const Profile& profile, const Allocation& alloc,
                     int envious, int envied) {
    const int n = profile.agent_count();
    if (envious < 0 || envious >= n || envied < 0 || envied >= n) {
        throw InputError("agent index out of range");
    }
    validate_allocation(profile, alloc);
    const Rational own = bundle_utility(profile, envious, alloc.bundles[envious]);
    const Rational other = bundle_utility(profile, envious, alloc.bundles[envied]);
    return other - own;
}

Ef1Report is_ef1(const Profile& profile, const Allocation& alloc) {
    validate_allocation(profile, alloc);
    const int n = profile.agent_count();
    Ef1Report report;
    for (int a = 0; a < n; ++a) {
        const Rational own = bundle_utility(profile, a, alloc.bundles[a]);
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            const std::vector<int>& envied = alloc.bundles[b];
            const Rational other = bundle_utility(profile, a, envied);
            if (other <= own) continue;
            // Envy exists; find the removal that discharges the most of it.
            Rational best(0);
            int best_good = -1;
            for (int g : envied) {
                const Rational& v = profile.utility(a, g);
                if (best_good < 0 || v > best) {
                    best = v;
                    best_good = g;
                }
            }
            const Rational residual = other - best - own;
            if (residual > 0) {
                report.holds = false;
                report.violations.push_back(Ef1Violation{a, b, best_good, residual});
            }
        }
    }
    return report;
}

} // namespace fairdiv
