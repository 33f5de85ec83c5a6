#include <json.hpp>

#include "fairdiv/io.hpp"
#include "fairdiv/lab.hpp"

namespace fairdiv {

namespace {

using nlohmann::json;

json rational_list(const std::vector<Rational>& values) {
    json out = json::array();
    for (const Rational& v : values) out.push_back(to_string(v));
    return out;
}

json spec_json(const GadgetSpec& spec) {
    return json{{"x", rational_list(spec.x)},
                {"k", spec.k},
                {"i", spec.i},
                {"epsilon", to_string(spec.epsilon)},
                {"swapped", spec.swapped}};
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
                 {{"x", rational_list(outcome.point.x)},
                  {"k", outcome.point.k},
                  {"i", outcome.point.i}}}};
}

} // namespace

std::string serialize_gadget_report(const GadgetReport& report) {
    json doc;
    doc["kind"] = "gadget_report";
    doc["spec"] = spec_json(report.spec);
    doc["profile"] = json::parse(serialize_profile(report.profile));
    doc["welfare_value"] = report.maximizer_set.welfare_value.str();
    doc["exhaustive"] = report.maximizer_set.exhaustive;
    json maximizers = json::array();
    for (std::size_t idx = 0; idx < report.maximizer_set.allocations.size(); ++idx) {
        const Allocation& alloc = report.maximizer_set.allocations[idx];
        json entry;
        entry["bundles"] = bundles_json(report.profile, alloc);
        entry["utilities"] = rational_list(utility_vector(report.profile, alloc));
        if (idx < report.ef1_flags.size()) {
            entry["ef1"] = ef1_json(report.profile, report.ef1_flags[idx]);
        }
        maximizers.push_back(std::move(entry));
    }
    doc["maximizers"] = std::move(maximizers);
    doc["refuted"] = report.refuted;
    doc["seeded_by"] = report.seeded_by ? probe_json(*report.seeded_by) : json();
    return doc.dump(2) + "\n";
}

} // namespace fairdiv
