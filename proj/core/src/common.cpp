#include "entlab/common.hpp"

#include <algorithm>
#include <atomic>

namespace entlab {

namespace {
std::atomic<int> g_max_dim{kDefaultMaxDim};
}

int max_dim() { return g_max_dim.load(std::memory_order_relaxed); }

void set_max_dim(int cap) {
  if (cap < 1) return;
  g_max_dim.store(std::min(cap, kDefaultMaxDim), std::memory_order_relaxed);
}

}  // namespace entlab
