#pragma once

#include "gog/gog.hpp"

#include <string>
#include <vector>

namespace gogtest {

inline std::string fixture_path(const std::string& name) { return std::string(GOG_FIXTURES) + "/" + name + ".gog"; }

inline gog::GraphOfGroups fixture(const std::string& name) { return gog::parse_file(fixture_path(name)); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"bs32",    "trefoil",     "f2",
                                                 "klein",   "dihedral_mix", "two_classes",
                                                 "mixed_unbalanced"};
  return names;
}

// parse a path word written with explicit stable letters, e.g. "e.t v.1^2 e.t^-1"
inline gog::PathWord word(const gog::GraphOfGroups& g, const std::string& text) {
  return gog::parse_path_word(g, text);
}

}  // namespace gogtest
