#include "wolffkit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace wolffkit {

int default_thread_count() {
  if (const char* env = std::getenv("WOLFFKIT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

}  // namespace wolffkit
