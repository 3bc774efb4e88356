#pragma once

#include <string>

namespace s4g {

/// Shortest decimal string that reads back to the same double. Negative
/// zero prints as "0".
std::string format_double(double v);

}  // namespace s4g
