#pragma once

#include <ostream>
#include <string>

namespace degdiff {

// Shortest round-trip decimal representation; keeps CSV output byte-stable
// across runs.
std::string format_double(double x);

}  // namespace degdiff
