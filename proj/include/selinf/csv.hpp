#pragma once

// Numeric formatting shared by every CSV surface: 17 significant digits so
// equal doubles always serialize to equal bytes; infinities as inf/-inf.

#include <cstdio>
#include <limits>
#include <string>

namespace selinf::csv {

inline std::string num(double x) {
  if (x == std::numeric_limits<double>::infinity()) return "inf";
  if (x == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace selinf::csv
