#include "s4gauss/parallel.hpp"

#include <cstdlib>
#include <string>

namespace s4g {

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("S4GAUSS_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1 && cap <= 256) n = static_cast<unsigned>(cap);
    } catch (...) {
      // Malformed values leave the default in place.
    }
  }
  return n;
}

}  // namespace s4g
