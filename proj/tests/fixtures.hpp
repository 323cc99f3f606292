#pragma once

#include <string>

#include "groupoidal/action.hpp"

namespace fixtures {

using namespace groupoidal;

// Z/2 on the pair groupoid over {1,2,3,4}: (13)(24) on the left, (12)(34) on the right.
inline GroupAction g13_24() { return pair_groupoid_action(cyclic_group(2), 4, {{0, 1, 2, 3}, {2, 3, 0, 1}}, Side::left); }
inline GroupAction h12_34() { return pair_groupoid_action(cyclic_group(2), 4, {{0, 1, 2, 3}, {1, 0, 3, 2}}, Side::right); }

inline ArrowIndex arrow(const FiniteGroupoid& g, const std::string& name) { return *g.find_arrow(name); }

} // namespace fixtures
