#pragma once
// Small text helpers shared by trace/curve writers. Numbers are printed with
// %.12g so that output is compact, stable across reruns, and faithful enough
// to survive a parse round trip at the precision the curves carry.

#include <cstdio>
#include <string>

namespace fogsim {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace fogsim
