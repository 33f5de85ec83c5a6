#ifndef FAIRDIV_IO_HPP
#define FAIRDIV_IO_HPP

#include <string>
#include <string_view>

#include "fairdiv/model.hpp"

namespace fairdiv {

// Profile document:
//   { "agents": ["a1","a2"], "goods": ["g1","g2","g3"],
//     "utilities": [["1","1","1/2"],["2","2","0"]] }
// Utilities are rationals rendered as "p/q" or integer strings; row i holds
// agent i's per-good values. parse(serialize(p)) == p.
Profile parse_profile(std::string_view text);
std::string serialize_profile(const Profile& profile);

// Allocation document, resolved against a profile's good names:
//   { "bundles": [["g3"],["g1","g2"]] }
Allocation parse_allocation(std::string_view text, const Profile& profile);
std::string serialize_allocation(const Allocation& alloc, const Profile& profile);

} // namespace fairdiv

#endif
