// fairdiv: welfarist allocation rules, EF1 audits, and the welfare-function
// lab (exchange probes, gadget construction, refutation pipelines) behind a
// single command-line front end. All reports are JSON with sorted keys and
// exact "p/q" rationals, so identical inputs produce byte-identical output.
//
// Exit codes: 0 success/PASS, 1 discovered violation or refutation,
// 2 usage or input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/lab.hpp"
#include "fairdiv/model.hpp"
#include "fairdiv/solver.hpp"
#include "fairdiv/welfare.hpp"

namespace {

using nlohmann::json;
using namespace fairdiv;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        values.push_back(parse_rational(
            std::string_view(text).substr(start, end - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

json rational_list_json(const std::vector<Rational>& values) {
    json out = json::array();
    for (const Rational& v : values) out.push_back(to_string(v));
    return out;
}

json bundles_json(const Profile& profile, const Allocation& alloc) {
    json out = json::array();
    for (const std::vector<int>& bundle : alloc.bundles) {
        json names = json::array();
        for (int g : bundle) names.push_back(profile.good_names[g]);
        out.push_back(std::move(names));
    }
    return out;
}

json allocation_json(const Profile& profile, const Allocation& alloc) {
    return json{{"bundles", bundles_json(profile, alloc)},
                {"utilities", rational_list_json(utility_vector(profile, alloc))}};
}

json ef1_json(const Profile& profile, const Ef1Report& report) {
    json violations = json::array();
    for (const Ef1Violation& v : report.violations) {
        violations.push_back({{"envious", profile.agent_names[v.envious]},
                              {"envied", profile.agent_names[v.envied]},
                              {"best_removal", profile.good_names[v.best_removal]},
                              {"residual_envy", to_string(v.residual_envy)}});
    }
    return json{{"holds", report.holds}, {"violations", std::move(violations)}};
}

const char* verdict_name(ProbeVerdict verdict) {
    switch (verdict) {
        case ProbeVerdict::left_less: return "LEFT_LESS";
        case ProbeVerdict::left_greater: return "LEFT_GREATER";
        case ProbeVerdict::equal: break;
    }
    return "EQUAL";
}

json probe_json(const ProbeOutcome& outcome) {
    return json{{"verdict", verdict_name(outcome.verdict)},
                {"left", outcome.left.str()},
                {"right", outcome.right.str()},
                {"point",
                 {{"x", rational_list_json(outcome.point.x)},
                  {"k", outcome.point.k},
                  {"i", outcome.point.i}}}};
}

json key_json(const MnwKey& key) {
    return json{{"positive_count", key.positive_count},
                {"positive_product", to_string(key.positive_product)}};
}

void print(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// True when f is prod(u) up to aliasing; `solve --all` then applies the MNW
// rule with its lexicographic tie-break instead of raw product maximization.
bool is_nash(const WelfareExpr& f) {
    return classify_bb_objective(f) == BbObjective::nash;
}

struct SolveArgs {
    std::string profile_path;
    std::string welfare;
    bool all = false;
    bool one = false;
    std::string strategy = "brute";
    std::uint64_t cap = kDefaultEnumerationCap;
};

int run_solve(const SolveArgs& args) {
    const Profile profile = parse_profile(read_file(args.profile_path));
    const WelfareExpr f = parse_welfare(args.welfare);
    json doc;
    doc["command"] = "solve";
    doc["welfare"] = f.source;
    if (args.one) {
        const SolveStrategy strategy = args.strategy == "bb"
                                           ? SolveStrategy::branch_bound
                                           : SolveStrategy::brute;
        const Allocation alloc = solve_one(profile, f, strategy, args.cap);
        doc["mode"] = "one";
        doc["strategy"] = args.strategy;
        doc["allocation"] = allocation_json(profile, alloc);
        doc["welfare_value"] = evaluate(f, utility_vector(profile, alloc)).str();
        print(doc);
        return 0;
    }
    if (args.strategy == "bb") {
        throw InputError("--strategy bb returns a single allocation; "
                         "combine it with --one");
    }
    const bool nash = is_nash(f);
    const MaximizerSet set =
        nash ? mnw_maximizers(profile, args.cap) : maximizers(profile, f, args.cap);
    doc["mode"] = "all";
    doc["rule"] = nash ? "mnw" : "welfarist";
    doc["backend"] = f.rational_closed ? "exact" : "floating";
    doc["welfare_value"] = set.welfare_value.str();
    doc["exhaustive"] = set.exhaustive;
    doc["count"] = set.allocations.size();
    if (set.key) doc["mnw_key"] = key_json(*set.key);
    json list = json::array();
    for (const Allocation& alloc : set.allocations) {
        list.push_back(allocation_json(profile, alloc));
    }
    doc["maximizers"] = std::move(list);
    print(doc);
    return 0;
}

int run_check_ef1(const std::string& profile_path,
                  const std::string& allocation_path) {
    const Profile profile = parse_profile(read_file(profile_path));
    const Allocation alloc = parse_allocation(read_file(allocation_path), profile);
    const Ef1Report report = is_ef1(profile, alloc);
    json doc;
    doc["command"] = "check-ef1";
    doc["allocation"] = allocation_json(profile, alloc);
    doc["ef1"] = ef1_json(profile, report);
    print(doc);
    return report.holds ? 0 : 1;
}

int run_probe(const std::string& welfare, const std::string& x_list, int k, int i) {
    const WelfareExpr f = parse_welfare(welfare);
    ProbePoint point;
    point.x = parse_rational_list(x_list);
    point.k = k;
    point.i = i;
    const ProbeOutcome outcome = probe_exchange(f, point);
    json doc;
    doc["command"] = "probe";
    doc["welfare"] = f.source;
    doc["backend"] = f.rational_closed ? "exact" : "floating";
    doc["probe"] = probe_json(outcome);
    print(doc);
    return outcome.verdict == ProbeVerdict::equal ? 0 : 1;
}

int run_scan(const std::string& welfare, int n, const std::string& grid_list,
             int k_max) {
    const WelfareExpr f = parse_welfare(welfare);
    const std::vector<Rational> grid = parse_rational_list(grid_list);
    const ScanResult result = scan_exchange(f, n, grid, k_max);
    json doc;
    doc["command"] = "scan";
    doc["welfare"] = f.source;
    doc["n"] = n;
    doc["grid"] = rational_list_json(grid);
    doc["k_max"] = k_max;
    doc["pass"] = result.pass;
    doc["probes_checked"] = result.probes_checked;
    if (result.failure) doc["failure"] = probe_json(*result.failure);
    doc["note"] = "a PASS is evidence on the grid, not a proof";
    print(doc);
    return result.pass ? 0 : 1;
}

int run_gadget(const std::string& x_list, int k, int i,
               const std::string& epsilon, bool swap) {
    std::vector<Rational> x = parse_rational_list(x_list);
    if (swap) {
        if (i < 2 || i > static_cast<int>(x.size())) {
            throw InputError("gadget partner i must lie in {2..n}");
        }
        std::swap(x[0], x[i - 1]);
    }
    const Profile profile = build_gadget_profile(x, k, i, parse_rational(epsilon));
    std::cout << serialize_profile(profile);
    return 0;
}

int run_refute(const std::string& welfare, const std::string& x_list, int k,
               int i) {
    const WelfareExpr f = parse_welfare(welfare);
    ProbePoint point;
    point.x = parse_rational_list(x_list);
    point.k = k;
    point.i = i;
    const ProbeOutcome outcome = probe_exchange(f, point);
    if (outcome.verdict == ProbeVerdict::equal) {
        json doc;
        doc["command"] = "refute";
        doc["welfare"] = f.source;
        doc["refuted"] = false;
        doc["probe"] = probe_json(outcome);
        doc["note"] = "the exchange identity holds at this probe point; "
                      "no gadget can be seeded from it";
        print(doc);
        return 0;
    }
    const GadgetReport report = refute_from_point(f, point);
    std::cout << serialize_gadget_report(report);
    return report.refuted ? 1 : 0;
}

int run_equiv(const std::string& welfare, std::uint64_t trials,
              std::uint64_t seed, int n, int m) {
    const WelfareExpr f = parse_welfare(welfare);
    const MnwEquivalenceResult result = equivalence_with_mnw(f, trials, seed, n, m);
    json doc;
    doc["command"] = "equiv";
    doc["welfare"] = f.source;
    doc["seed"] = seed;
    doc["trials_run"] = result.trials_run;
    doc["pass"] = result.pass;
    if (result.witness) {
        const MnwEquivalenceWitness& w = *result.witness;
        json welfare_list = json::array();
        for (const Allocation& alloc : w.welfare_set.allocations) {
            welfare_list.push_back(allocation_json(w.profile, alloc));
        }
        json mnw_list = json::array();
        for (const Allocation& alloc : w.mnw_set.allocations) {
            mnw_list.push_back(allocation_json(w.profile, alloc));
        }
        doc["witness"] = {{"profile", json::parse(serialize_profile(w.profile))},
                          {"welfare_value", w.welfare_set.welfare_value.str()},
                          {"welfare_maximizers", std::move(welfare_list)},
                          {"mnw_key", key_json(*w.mnw_set.key)},
                          {"mnw_maximizers", std::move(mnw_list)}};
    }
    print(doc);
    return result.pass ? 0 : 1;
}

int run_pigeonhole(const std::string& x_list, int k) {
    GadgetSpec spec;
    spec.x = parse_rational_list(x_list);
    spec.k = k;
    spec.i = 2;
    if (spec.x.empty()) throw InputError("gadget coordinates must be nonempty");
    spec.epsilon = spec.x[0] / 2;
    const PigeonholeResult result =
        check_gadget_pigeonhole(spec, static_cast<int>(spec.x.size()));
    json doc;
    doc["command"] = "pigeonhole";
    doc["x"] = rational_list_json(spec.x);
    doc["k"] = spec.k;
    doc["i"] = spec.i;
    doc["epsilon"] = to_string(spec.epsilon);
    doc["allocations_checked"] = result.allocations_checked;
    doc["ef1_count"] = result.ef1_count;
    doc["pass"] = result.pass;
    if (result.witness) {
        const Profile profile = build_gadget(spec, static_cast<int>(spec.x.size()));
        doc["witness"] = allocation_json(profile, *result.witness);
    }
    print(doc);
    return result.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"welfarist allocation rules, EF1 audits, and welfare-function "
                 "probes for indivisible goods"};
    app.require_subcommand(1);
    int exit_code = 0;

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "maximize a welfare expression over all allocations");
    solve->add_option("--profile", solve_args.profile_path, "profile document")
        ->required();
    solve->add_option("--welfare", solve_args.welfare, "welfare expression")
        ->required();
    CLI::Option* all_flag =
        solve->add_flag("--all", solve_args.all, "list the full maximizer set (default)");
    solve->add_flag("--one", solve_args.one, "return a single maximizer")
        ->excludes(all_flag);
    solve->add_option("--strategy", solve_args.strategy, "search strategy with --one")
        ->check(CLI::IsMember({"brute", "bb"}));
    solve->add_option("--cap", solve_args.cap, "enumeration cap");
    solve->callback([&] { exit_code = run_solve(solve_args); });

    std::string profile_path, allocation_path;
    CLI::App* check = app.add_subcommand(
        "check-ef1", "audit an allocation for envy-freeness up to one good");
    check->add_option("--profile", profile_path, "profile document")->required();
    check->add_option("--allocation", allocation_path, "allocation document")
        ->required();
    check->callback([&] { exit_code = run_check_ef1(profile_path, allocation_path); });

    std::string probe_welfare, probe_x;
    int probe_k = 1, probe_i = 2;
    CLI::App* probe = app.add_subcommand(
        "probe", "evaluate the exchange identity at one point");
    probe->add_option("--welfare", probe_welfare, "welfare expression")->required();
    probe->add_option("--x", probe_x, "comma-separated positive rationals")
        ->required();
    probe->add_option("--k", probe_k, "positive multiplier")->required();
    probe->add_option("--i", probe_i, "partner coordinate (1-based, >= 2)")
        ->required();
    probe->callback(
        [&] { exit_code = run_probe(probe_welfare, probe_x, probe_k, probe_i); });

    std::string scan_welfare, scan_grid;
    int scan_n = 2, scan_kmax = 1;
    CLI::App* scan = app.add_subcommand(
        "scan", "probe the exchange identity over a rational grid");
    scan->add_option("--welfare", scan_welfare, "welfare expression")->required();
    scan->add_option("--n", scan_n, "number of agents")->required();
    scan->add_option("--grid", scan_grid, "comma-separated positive rationals")
        ->required();
    scan->add_option("--kmax", scan_kmax, "largest multiplier k")->required();
    scan->callback(
        [&] { exit_code = run_scan(scan_welfare, scan_n, scan_grid, scan_kmax); });

    std::string gadget_x, gadget_epsilon;
    int gadget_k = 1, gadget_i = 2;
    bool gadget_swap = false;
    CLI::App* gadget = app.add_subcommand(
        "gadget", "emit the kn+1-good counterexample profile");
    gadget->add_option("--x", gadget_x, "comma-separated positive rationals")
        ->required();
    gadget->add_option("--k", gadget_k, "positive multiplier")->required();
    gadget->add_option("--i", gadget_i, "partner agent (1-based, >= 2)")->required();
    gadget->add_option("--epsilon", gadget_epsilon, "rational in [0, x_1)")
        ->required();
    gadget->add_flag("--swap", gadget_swap,
                     "exchange coordinates 1 and i before building");
    gadget->callback([&] {
        exit_code = run_gadget(gadget_x, gadget_k, gadget_i, gadget_epsilon,
                               gadget_swap);
    });

    std::string refute_welfare, refute_x;
    int refute_k = 1, refute_i = 2;
    CLI::App* refute = app.add_subcommand(
        "refute", "probe, search epsilon, build the gadget, audit its maximizers");
    refute->add_option("--welfare", refute_welfare, "welfare expression")
        ->required();
    refute->add_option("--x", refute_x, "comma-separated positive rationals")
        ->required();
    refute->add_option("--k", refute_k, "positive multiplier")->required();
    refute->add_option("--i", refute_i, "partner coordinate (1-based, >= 2)");
    refute->callback([&] {
        exit_code = run_refute(refute_welfare, refute_x, refute_k, refute_i);
    });

    std::string equiv_welfare;
    std::uint64_t equiv_trials = 0, equiv_seed = 0;
    int equiv_n = 2, equiv_m = 2;
    CLI::App* equiv = app.add_subcommand(
        "equiv", "compare maximizer sets against the MNW rule on random profiles");
    equiv->add_option("--welfare", equiv_welfare, "welfare expression")->required();
    equiv->add_option("--trials", equiv_trials, "number of random profiles")
        ->required();
    equiv->add_option("--seed", equiv_seed, "RNG seed (required: no hidden entropy)")
        ->required();
    equiv->add_option("--n", equiv_n, "number of agents")->required();
    equiv->add_option("--m", equiv_m, "number of goods")->required();
    equiv->callback([&] {
        exit_code = run_equiv(equiv_welfare, equiv_trials, equiv_seed, equiv_n,
                              equiv_m);
    });

    std::string pigeon_x;
    int pigeon_k = 1;
    CLI::App* pigeon = app.add_subcommand(
        "pigeonhole", "verify that EF1 allocations of the gadget are balanced");
    pigeon->add_option("--x", pigeon_x, "comma-separated positive rationals")
        ->required();
    pigeon->add_option("--k", pigeon_k, "positive multiplier")->required();
    pigeon->callback([&] { exit_code = run_pigeonhole(pigeon_x, pigeon_k); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    } catch (const fairdiv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
