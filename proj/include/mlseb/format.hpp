#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace mlseb {

/// Shortest-faithful decimal for CSV output: 17 significant digits
/// round-trip any double exactly; non-finite values collapse to "nan".
inline std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace mlseb
