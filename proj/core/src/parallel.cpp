#include "tracelab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace tracelab {

int thread_count_from_env() {
  if (const char* s = std::getenv("TRACE_LAB_THREADS")) {
    try {
      const int n = std::stoi(s);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace tracelab
