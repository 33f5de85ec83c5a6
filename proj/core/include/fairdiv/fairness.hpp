#ifndef FAIRDIV_FAIRNESS_HPP
#define FAIRDIV_FAIRNESS_HPP

#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

// A pair (envious, envied) whose envy survives removing any single good
// from the envied bundle. best_removal is the good whose removal leaves the
// least envy; residual_envy = u_i(A_j \ {best_removal}) - u_i(A_i) > 0.
struct Ef1Violation {
    int envious;
    int envied;
    int best_removal;
    Rational residual_envy;
};

struct Ef1Report {
    bool holds = true;
    std::vector<Ef1Violation> violations; // every violating ordered pair
};

// u_envious(A_envied) - u_envious(A_envious); negative when there is no envy.
Rational envy_amount(const Profile& profile, const Allocation& alloc,
                     int envious, int envied);

// Checks every ordered pair (i, j) with a nonempty A_j for the existence of
// a good g in A_j with u_i(A_i) >= u_i(A_j \ {g}); pairs with empty A_j pass
// vacuously. Exact rational comparisons throughout.
Ef1Report is_ef1(const Profile& profile, const Allocation& alloc);

} // namespace fairdiv

#endif
