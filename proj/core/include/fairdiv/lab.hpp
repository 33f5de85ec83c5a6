#ifndef FAIRDIV_LAB_HPP
#define FAIRDIV_LAB_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/fairness.hpp"
#include "fairdiv/model.hpp"
#include "fairdiv/solver.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

// A point of the exchange probe: a positive vector x, a multiplier k, and a
// partner coordinate i given 1-based (2..n) as it appears in reports.
struct ProbePoint {
    std::vector<Rational> x;
    int k = 1;
    int i = 2;

    int n() const { return static_cast<int>(x.size()); }
    void validate() const;
};

enum class ProbeVerdict { equal, left_less, left_greater };

// f evaluated at the two sides of the exchange:
//   left  = f((k+1)x_1, ..., k x_i, ...)
//   right = f(k x_1, ..., (k+1) x_i, ...)
struct ProbeOutcome {
    ProbeVerdict verdict;
    ExtendedValue left;
    ExtendedValue right;
    ProbePoint point;
};

ProbeOutcome probe_exchange(const WelfareExpr& f, const ProbePoint& point);

struct ScanResult {
    bool pass = true;
    std::uint64_t probes_checked = 0;
    std::optional<ProbeOutcome> failure;
};

// Probes every point with coordinates drawn from grid (sorted, deduplicated),
// k <= k_max, i in {2..n}; x iterates lexicographically with the last
// coordinate fastest, then k, then i. Stops at the first non-equal outcome.
// A pass is evidence on the grid, not a proof.
ScanResult scan_exchange(const WelfareExpr& f, int n,
                         const std::vector<Rational>& grid, int k_max);

// Compares f along the hyperbola holding coordinate1 * coordinate_i = z:
// coordinate 1 set to x vs y, coordinate i to z/x vs z/y, remaining
// coordinates taken from fixed (in index order).
ComparisonResult probe_constant_curve(const WelfareExpr& f, int i,
                                      const std::vector<Rational>& fixed,
                                      const Rational& z, const Rational& x,
                                      const Rational& y);

struct ProductDependenceWitness {
    UtilityVector x;
    UtilityVector y; // same coordinate product as x, exactly
    ComparisonResult comparison;
};

struct ProductDependenceResult {
    bool pass = true;
    std::uint64_t trials_run = 0;
    std::optional<ProductDependenceWitness> witness;
};

// Samples positive vector pairs with exactly equal coordinate products (y is
// built from x by redistributing rational factors between coordinates) and
// reports the first pair on which f differs.
ProductDependenceResult product_dependence_check(const WelfareExpr& f, int n,
                                                 std::uint64_t trials,
                                                 std::uint64_t seed);

// Result of the epsilon search seeded by a non-equal probe. normalized is
// the probe point after any direction swap (coordinates 1 and i exchanged),
// so epsilon lies in (0, normalized.x[0]).
struct EpsilonSearch {
    Rational epsilon;
    bool swapped = false;
    ProbePoint normalized;
    int halvings = 0;
};

// Finds epsilon in (0, x_1) with
//   f((k+1)x_1 - eps, ..., k x_i, ...) < f(k x_1 - eps, ..., (k+1) x_i, ...)
// by trying x_1/2, x_1/4, ... for at most 64 halvings. A LEFT_GREATER probe
// swaps the roles of coordinates 1 and i first (recorded in swapped).
// Throws InputError when the probe is EQUAL and NotFoundError when the
// halving budget runs out.
EpsilonSearch find_epsilon(const WelfareExpr& f, const ProbePoint& point);

// Parameters of the kn+1-good counterexample profile. x is the coordinate
// vector after any direction swap; i is 1-based as in ProbePoint.
struct GadgetSpec {
    std::vector<Rational> x;
    int k = 1;
    int i = 2;
    Rational epsilon;
    bool swapped = false;

    int n() const { return static_cast<int>(x.size()); }
    void validate(int n_agents) const;
};

// The profile with m = kn+1 goods: every good of G' = {g_1..g_kn} is worth
// x_j to agents 1 and i and x_j/k to everyone else; the extra good g_m is
// worth x_1 - epsilon to agent 1 and nothing to the others. epsilon may be
// zero here only for diagnostics; the GadgetSpec path requires epsilon > 0.
Profile build_gadget_profile(const std::vector<Rational>& x, int k, int i,
                             const Rational& epsilon);
Profile build_gadget(const GadgetSpec& spec, int n_agents);

struct GadgetReport {
    GadgetSpec spec;
    Profile profile;
    MaximizerSet maximizer_set;
    std::vector<Ef1Report> ef1_flags; // parallel to maximizer_set.allocations
    bool refuted = false;               // nonempty maximizer set, no member EF1
    std::optional<ProbeOutcome> seeded_by;
};

// Builds the gadget, enumerates the maximizer set of f on it, and audits
// every member for EF1.
GadgetReport refute_ef1_existence(const WelfareExpr& f, const GadgetSpec& spec,
                                  int n_agents,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// Full pipeline from a probe point: probe, epsilon search (with direction
// normalization), gadget construction, maximizer audit.
GadgetReport refute_from_point(const WelfareExpr& f, const ProbePoint& point,
                               std::uint64_t cap = kDefaultEnumerationCap);

struct PigeonholeResult {
    bool pass = true;
    std::uint64_t allocations_checked = 0;
    std::uint64_t ef1_count = 0;
    std::optional<Allocation> witness; // EF1 but unbalanced on G'
};

// Exhaustively verifies that every EF1 allocation of the gadget gives each
// agent exactly k goods from G'.
PigeonholeResult check_gadget_pigeonhole(const GadgetSpec& spec, int n_agents,
                                         std::uint64_t cap = kDefaultEnumerationCap);

struct MnwEquivalenceWitness {
    Profile profile;
    MaximizerSet welfare_set;
    MaximizerSet mnw_set;
};

struct MnwEquivalenceResult {
    bool pass = true;
    std::uint64_t trials_run = 0;
    std::optional<MnwEquivalenceWitness> witness;
};

// Generates seeded random integer profiles (utilities in [0, 10]) that admit
// an all-positive allocation and checks that the maximizer set of f equals
// the MNW maximizer set allocation-for-allocation.
MnwEquivalenceResult equivalence_with_mnw(const WelfareExpr& f,
                                          std::uint64_t trials,
                                          std::uint64_t seed, int n, int m,
                                          std::uint64_t cap = kDefaultEnumerationCap);

// Integer utilities drawn uniformly from [min_utility, max_utility],
// resampled (bounded retries) until the profile admits an all-positive
// allocation. Requires m >= n.
Profile random_positive_admitting_profile(std::mt19937_64& rng, int n, int m,
                                          int min_utility = 0,
                                          int max_utility = 10);

// Structured text form of a GadgetReport: embeds the profile document, the
// maximizer list with utility vectors, the per-allocation EF1 audits, and
// the probe outcome that seeded the gadget.
std::string serialize_gadget_report(const GadgetReport& report);

} // namespace fairdiv

#endif
