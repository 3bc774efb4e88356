#include "s4gauss/format.hpp"

#include <charconv>
#include <cmath>

namespace s4g {

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace s4g
