#include "qhg/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qhg {

unsigned thread_count() {
  if (const char* env = std::getenv("QHG_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qhg
