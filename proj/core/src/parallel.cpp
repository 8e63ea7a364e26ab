#include "pathweave/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pathweave {

int effective_thread_count(int requested) {
  if (const char* env = std::getenv("PATHWEAVE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  if (requested >= 1) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace pathweave
