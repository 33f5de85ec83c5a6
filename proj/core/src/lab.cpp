#include "fairdiv/lab.hpp"

#include <algorithm>
#include <utility>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

// Deterministic across standard libraries, unlike uniform_int_distribution.
// The modulo bias is irrelevant for test-point sampling.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

void require_positive(const std::vector<Rational>& x, const char* what) {
    if (x.empty()) throw InputError(std::string(what) + " must be nonempty");
    for (const Rational& v : x) {
        if (v <= 0) throw InputError(std::string(what) + " must be strictly positive");
    }
}

// The two sides of the exchange at a probe point, with eps subtracted from
// coordinate 1:
//   left  = ((k+1)x_1 - eps, ..., k x_i, ...)
//   right = (k x_1 - eps, ..., (k+1) x_i, ...)
// All other coordinates keep their x_j.
std::pair<UtilityVector, UtilityVector> exchange_sides(const ProbePoint& p,
                                                       const Rational& eps) {
    UtilityVector left = p.x;
    UtilityVector right = p.x;
    const Rational& x1 = p.x[0];
    const Rational& xi = p.x[p.i - 1];
    left[0] = (p.k + 1) * x1 - eps;
    left[p.i - 1] = p.k * xi;
    right[0] = p.k * x1 - eps;
    right[p.i - 1] = (p.k + 1) * xi;
    return {std::move(left), std::move(right)};
}

ProbeVerdict to_verdict(Ordering ordering) {
    switch (ordering) {
        case Ordering::less: return ProbeVerdict::left_less;
        case Ordering::greater: return ProbeVerdict::left_greater;
        case Ordering::equal: break;
    }
    return ProbeVerdict::equal;
}

} // namespace

void ProbePoint::validate() const {
    if (x.size() < 2) throw InputError("probe point needs at least 2 coordinates");
    require_positive(x, "probe coordinates");
    if (k < 1) throw InputError("probe multiplier k must be a positive integer");
    if (i < 2 || i > n()) {
        throw InputError("probe partner i must lie in {2..n}");
    }
}

ProbeOutcome probe_exchange(const WelfareExpr& f, const ProbePoint& point) {
    point.validate();
    const auto [left, right] = exchange_sides(point, Rational(0));
    const ComparisonResult cmp = compare(f, left, right);
    return ProbeOutcome{to_verdict(cmp.ordering), cmp.left, cmp.right, point};
}

ScanResult scan_exchange(const WelfareExpr& f, int n,
                         const std::vector<Rational>& grid, int k_max) {
    if (n < 2) throw InputError("scan needs at least 2 agents");
    if (k_max < 1) throw InputError("scan needs k_max >= 1");
    std::vector<Rational> values = grid;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    require_positive(values, "grid values");

    ScanResult result;
    const std::size_t g = values.size();
    std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
    ProbePoint point;
    point.x.resize(static_cast<std::size_t>(n));
    for (;;) {
        for (int c = 0; c < n; ++c) point.x[c] = values[digit[c]];
        for (point.k = 1; point.k <= k_max; ++point.k) {
            for (point.i = 2; point.i <= n; ++point.i) {
                ProbeOutcome outcome = probe_exchange(f, point);
                ++result.probes_checked;
                if (outcome.verdict != ProbeVerdict::equal) {
                    result.pass = false;
                    result.failure = std::move(outcome);
                    return result;
                }
            }
        }
        // Advance x lexicographically: the last coordinate moves fastest.
        int c = n - 1;
        while (c >= 0 && digit[c] + 1 == g) digit[c--] = 0;
        if (c < 0) break;
        ++digit[c];
    }
    return result;
}

ComparisonResult probe_constant_curve(const WelfareExpr& f, int i,
                                      const std::vector<Rational>& fixed,
                                      const Rational& z, const Rational& x,
                                      const Rational& y) {
    const int n = static_cast<int>(fixed.size()) + 2;
    if (i < 2 || i > n) throw InputError("curve coordinate i must lie in {2..n}");
    if (z <= 0 || x <= 0 || y <= 0) {
        throw InputError("curve parameters z, x, y must be strictly positive");
    }
    for (const Rational& v : fixed) {
        if (v <= 0) throw InputError("fixed coordinates must be strictly positive");
    }
    UtilityVector at_x(static_cast<std::size_t>(n));
    UtilityVector at_y(static_cast<std::size_t>(n));
    std::size_t next_fixed = 0;
    for (int c = 0; c < n; ++c) {
        if (c == 0) {
            at_x[c] = x;
            at_y[c] = y;
        } else if (c == i - 1) {
            at_x[c] = z / x;
            at_y[c] = z / y;
        } else {
            at_x[c] = fixed[next_fixed];
            at_y[c] = fixed[next_fixed];
            ++next_fixed;
        }
    }
    return compare(f, at_x, at_y);
}

ProductDependenceResult product_dependence_check(const WelfareExpr& f, int n,
                                                 std::uint64_t trials,
                                                 std::uint64_t seed) {
    if (n < 2) throw InputError("product dependence check needs at least 2 agents");
    std::mt19937_64 rng(seed);
    ProductDependenceResult result;
    for (std::uint64_t t = 0; t < trials; ++t) {
        UtilityVector x(static_cast<std::size_t>(n));
        for (Rational& v : x) {
            v = Rational(1 + uniform_below(rng, 12), 1 + uniform_below(rng, 4));
        }
        // Redistribute an exact rational factor between two coordinates;
        // the coordinate product is unchanged.
        const std::size_t a = uniform_below(rng, static_cast<std::uint64_t>(n));
        std::size_t b = uniform_below(rng, static_cast<std::uint64_t>(n) - 1);
        if (b >= a) ++b;
        std::uint64_t num = 2 + uniform_below(rng, 5);
        const std::uint64_t den = 2 + uniform_below(rng, 5);
        if (num == den) ++num;
        const Rational factor(num, den);
        UtilityVector y = x;
        y[a] = x[a] * factor;
        y[b] = x[b] / factor;

        ComparisonResult cmp = compare(f, x, y);
        ++result.trials_run;
        if (cmp.ordering != Ordering::equal) {
            result.pass = false;
            result.witness = ProductDependenceWitness{std::move(x), std::move(y),
                                                      std::move(cmp)};
            break;
        }
    }
    return result;
}

EpsilonSearch find_epsilon(const WelfareExpr& f, const ProbePoint& point) {
    ProbeOutcome outcome = probe_exchange(f, point);
    if (outcome.verdict == ProbeVerdict::equal) {
        throw InputError("exchange probe is EQUAL at this point; "
                         "no separating epsilon exists");
    }
    EpsilonSearch search;
    search.normalized = point;
    if (outcome.verdict == ProbeVerdict::left_greater) {
        // Exchange the roles of coordinates 1 and i. Welfare expressions are
        // symmetric in the coordinates, so the probe direction flips.
        std::swap(search.normalized.x[0], search.normalized.x[point.i - 1]);
        search.swapped = true;
        if (probe_exchange(f, search.normalized).verdict != ProbeVerdict::left_less) {
            throw NotFoundError("probe direction did not normalize under the "
                                "coordinate swap");
        }
    }
    Rational eps = search.normalized.x[0];
    for (int t = 1; t <= 64; ++t) {
        eps /= 2;
        const auto [left, right] = exchange_sides(search.normalized, eps);
        if (compare(f, left, right).ordering == Ordering::less) {
            search.epsilon = std::move(eps);
            search.halvings = t;
            return search;
        }
    }
    throw NotFoundError("no separating epsilon within 64 halvings; the gap may "
                        "close discontinuously or fall below the comparison "
                        "tolerance");
}

void GadgetSpec::validate(int n_agents) const {
    if (n() != n_agents) {
        throw InputError("gadget coordinate vector length must equal the agent count");
    }
    if (n_agents < 2) throw InputError("gadget needs at least 2 agents");
    require_positive(x, "gadget coordinates");
    if (k < 1) throw InputError("gadget multiplier k must be a positive integer");
    if (i < 2 || i > n_agents) throw InputError("gadget partner i must lie in {2..n}");
    if (epsilon <= 0 || epsilon >= x[0]) {
        throw InputError("gadget epsilon must lie in (0, x_1)");
    }
}

Profile build_gadget_profile(const std::vector<Rational>& x, int k, int i,
                             const Rational& epsilon) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw InputError("gadget needs at least 2 agents");
    require_positive(x, "gadget coordinates");
    if (k < 1) throw InputError("gadget multiplier k must be a positive integer");
    if (i < 2 || i > n) throw InputError("gadget partner i must lie in {2..n}");
    if (epsilon < 0 || epsilon >= x[0]) {
        throw InputError("gadget epsilon must lie in [0, x_1)");
    }
    const int m = k * n + 1;
    Profile profile;
    profile.agent_names.reserve(static_cast<std::size_t>(n));
    for (int a = 1; a <= n; ++a) profile.agent_names.push_back("a" + std::to_string(a));
    profile.good_names.reserve(static_cast<std::size_t>(m));
    for (int g = 1; g <= m; ++g) profile.good_names.push_back("g" + std::to_string(g));
    profile.utilities.assign(static_cast<std::size_t>(n),
                             std::vector<Rational>(static_cast<std::size_t>(m)));
    for (int a = 0; a < n; ++a) {
        const bool full_value = a == 0 || a == i - 1;
        const Rational per_good = full_value ? x[a] : x[a] / k;
        for (int g = 0; g < m - 1; ++g) profile.utilities[a][g] = per_good;
        profile.utilities[a][m - 1] = a == 0 ? x[0] - epsilon : Rational(0);
    }
    profile.validate();
    return profile;
}

Profile build_gadget(const GadgetSpec& spec, int n_agents) {
    spec.validate(n_agents);
    return build_gadget_profile(spec.x, spec.k, spec.i, spec.epsilon);
}

GadgetReport refute_ef1_existence(const WelfareExpr& f, const GadgetSpec& spec,
                                  int n_agents, std::uint64_t cap) {
    GadgetReport report;
    report.spec = spec;
    report.profile = build_gadget(spec, n_agents);
    report.maximizer_set = maximizers(report.profile, f, cap);
    report.refuted = !report.maximizer_set.allocations.empty();
    for (const Allocation& alloc : report.maximizer_set.allocations) {
        Ef1Report audit = is_ef1(report.profile, alloc);
        if (audit.holds) report.refuted = false;
        report.ef1_flags.push_back(std::move(audit));
    }
    return report;
}

GadgetReport refute_from_point(const WelfareExpr& f, const ProbePoint& point,
                               std::uint64_t cap) {
    ProbeOutcome outcome = probe_exchange(f, point);
    if (outcome.verdict == ProbeVerdict::equal) {
        throw InputError("exchange probe is EQUAL at this point; the identity "
                         "holds and no gadget can be seeded from it");
    }
    const EpsilonSearch search = find_epsilon(f, point);
    GadgetSpec spec;
    spec.x = search.normalized.x;
    spec.k = search.normalized.k;
    spec.i = search.normalized.i;
    spec.epsilon = search.epsilon;
    spec.swapped = search.swapped;
    GadgetReport report = refute_ef1_existence(f, spec, point.n(), cap);
    report.seeded_by = std::move(outcome);
    return report;
}

PigeonholeResult check_gadget_pigeonhole(const GadgetSpec& spec, int n_agents,
                                         std::uint64_t cap) {
    const Profile profile = build_gadget(spec, n_agents);
    const int prime_goods = spec.k * n_agents; // |G'|; good indices 0..kn-1
    PigeonholeResult result;
    AllocationStream stream(profile.agent_count(), profile.good_count(), cap);
    while (std::optional<Allocation> alloc = stream.next()) {
        ++result.allocations_checked;
        if (!is_ef1(profile, *alloc).holds) continue;
        ++result.ef1_count;
        for (const std::vector<int>& bundle : alloc->bundles) {
            int from_prime = 0;
            for (int g : bundle) from_prime += g < prime_goods ? 1 : 0;
            if (from_prime != spec.k) {
                result.pass = false;
                result.witness = std::move(*alloc);
                return result;
            }
        }
    }
    return result;
}

MnwEquivalenceResult equivalence_with_mnw(const WelfareExpr& f,
                                          std::uint64_t trials,
                                          std::uint64_t seed, int n, int m,
                                          std::uint64_t cap) {
    std::mt19937_64 rng(seed);
    MnwEquivalenceResult result;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Profile profile = random_positive_admitting_profile(rng, n, m);
        MaximizerSet welfare_set = maximizers(profile, f, cap);
        MaximizerSet mnw_set = mnw_maximizers(profile, cap);
        ++result.trials_run;
        if (welfare_set.allocations != mnw_set.allocations) {
            result.pass = false;
            result.witness = MnwEquivalenceWitness{
                std::move(profile), std::move(welfare_set), std::move(mnw_set)};
            break;
        }
    }
    return result;
}

Profile random_positive_admitting_profile(std::mt19937_64& rng, int n, int m,
                                          int min_utility, int max_utility) {
    if (n < 2) throw InputError("profile generation needs at least 2 agents");
    if (m < n) throw InputError("profile generation needs m >= n goods");
    if (min_utility < 0 || max_utility < min_utility) {
        throw InputError("profile generation needs 0 <= min_utility <= max_utility");
    }
    Profile profile;
    for (int a = 1; a <= n; ++a) profile.agent_names.push_back("a" + std::to_string(a));
    for (int g = 1; g <= m; ++g) profile.good_names.push_back("g" + std::to_string(g));
    const std::uint64_t span = static_cast<std::uint64_t>(max_utility - min_utility) + 1;
    constexpr int kMaxRetries = 10'000;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        profile.utilities.assign(static_cast<std::size_t>(n),
                                 std::vector<Rational>(static_cast<std::size_t>(m)));
        for (int a = 0; a < n; ++a) {
            for (int g = 0; g < m; ++g) {
                profile.utilities[a][g] =
                    Rational(min_utility + static_cast<long>(uniform_below(rng, span)));
            }
        }
        if (admits_positive_allocation(profile)) return profile;
    }
    throw NotFoundError("no profile admitting an all-positive allocation after "
                        "bounded retries; the utility range may be degenerate");
}

} // namespace fairdiv
