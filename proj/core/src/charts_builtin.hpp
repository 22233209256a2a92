#pragma once

// Built-in chart constructions, one per catalog family. Internal.

#include <vector>

#include "liedirac/chart.hpp"

namespace liedirac::detail {

std::vector<Chart> make_so2_charts();
std::vector<Chart> make_gl1_charts();      // two components
std::vector<Chart> make_glplus1_charts();  // positive component only
std::vector<Chart> make_diagpos_charts(int n);
std::vector<Chart> make_ut2_charts();
std::vector<Chart> make_heis_charts();
std::vector<Chart> make_sl2_charts();
std::vector<Chart> make_gl2_charts();  // two components

}  // namespace liedirac::detail
