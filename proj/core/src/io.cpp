#include "fairdiv/io.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

std::vector<std::string> string_array(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ParseError("missing or non-array field \"" + field + "\"");
    }
    std::vector<std::string> out;
    for (const auto& item : j[field]) {
        if (!item.is_string()) {
            throw ParseError("non-string entry in \"" + field + "\"");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Rational utility_entry(const json& cell, int row, int col) {
    const std::string where =
        " in utilities[" + std::to_string(row) + "][" + std::to_string(col) + "]";
    Rational value;
    if (cell.is_string()) {
        try {
            value = parse_rational(cell.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + where);
        }
    } else if (cell.is_number_integer()) {
        value = Rational(cell.get<long long>());
    } else {
        throw ParseError("utility must be a rational string or integer" + where);
    }
    if (value < 0) {
        throw ParseError("negative utility" + where);
    }
    return value;
}

} // namespace

Profile parse_profile(std::string_view text) {
    const json j = parse_document(text);
    if (!j.is_object()) {
        throw ParseError("profile document must be a JSON object");
    }

    Profile profile;
    profile.agent_names = string_array(j, "agents");
    profile.good_names = string_array(j, "goods");

    if (!j.contains("utilities") || !j["utilities"].is_array()) {
        throw ParseError("missing or non-array field \"utilities\"");
    }
    const auto& rows = j["utilities"];
    if (rows.size() != profile.agent_names.size()) {
        throw ParseError("utilities has " + std::to_string(rows.size()) +
                         " rows for " + std::to_string(profile.agent_names.size()) +
                         " agents");
    }
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (!rows[a].is_array() || rows[a].size() != profile.good_names.size()) {
            throw ParseError("utilities row " + std::to_string(a) +
                             " must list one value per good");
        }
        std::vector<Rational> row;
        row.reserve(rows[a].size());
        for (std::size_t g = 0; g < rows[a].size(); ++g) {
            row.push_back(utility_entry(rows[a][g], static_cast<int>(a),
                                        static_cast<int>(g)));
        }
        profile.utilities.push_back(std::move(row));
    }

    try {
        profile.validate();
    } catch (const InputError& e) {
        throw ParseError(e.what());
    }
    return profile;
}

std::string serialize_profile(const Profile& profile) {
    json j;
    j["agents"] = profile.agent_names;
    j["goods"] = profile.good_names;
    json rows = json::array();
    for (const auto& row : profile.utilities) {
        json cells = json::array();
        for (const Rational& u : row) {
            cells.push_back(to_string(u));
        }
        rows.push_back(std::move(cells));
    }
    j["utilities"] = std::move(rows);
    return j.dump(2) + "\n";
}

Allocation parse_allocation(std::string_view text, const Profile& profile) {
    const json j = parse_document(text);
    if (!j.is_object() || !j.contains("bundles") || !j["bundles"].is_array()) {
        throw ParseError("allocation document must be {\"bundles\": [[...], ...]}");
    }

    std::unordered_map<std::string, int> good_index;
    for (int g = 0; g < profile.good_count(); ++g) {
        good_index[profile.good_names[g]] = g;
    }

    const auto& bundles = j["bundles"];
    if (static_cast<int>(bundles.size()) != profile.agent_count()) {
        throw ParseError("allocation has " + std::to_string(bundles.size()) +
                         " bundles for " + std::to_string(profile.agent_count()) +
                         " agents");
    }

    Allocation alloc;
    alloc.bundles.resize(profile.agent_count());
    std::vector<bool> seen(profile.good_count(), false);
    for (int a = 0; a < profile.agent_count(); ++a) {
        if (!bundles[a].is_array()) {
            throw ParseError("bundle " + std::to_string(a) + " is not an array");
        }
        for (const auto& item : bundles[a]) {
            if (!item.is_string()) {
                throw ParseError("bundle entries must be good names");
            }
            const std::string name = item.get<std::string>();
            const auto it = good_index.find(name);
            if (it == good_index.end()) {
                throw ParseError("unknown good \"" + name + "\"");
            }
            if (seen[it->second]) {
                throw ParseError("good \"" + name + "\" allocated twice");
            }
            seen[it->second] = true;
            alloc.bundles[a].push_back(it->second);
        }
        std::sort(alloc.bundles[a].begin(), alloc.bundles[a].end());
    }
    for (int g = 0; g < profile.good_count(); ++g) {
        if (!seen[g]) {
            throw ParseError("good \"" + profile.good_names[g] + "\" is unallocated");
        }
    }
    return alloc;
}

std::string serialize_allocation(const Allocation& alloc, const Profile& profile) {
    validate_allocation(profile, alloc);
    json bundles = json::array();
    for (const auto& bundle : alloc.bundles) {
        json names = json::array();
        for (int g : bundle) {
            names.push_back(profile.good_names[g]);
        }
        bundles.push_back(std::move(names));
    }
    json j;
    j["bundles"] = std::move(bundles);
    return j.dump(2) + "\n";
}

} // namespace fairdiv
