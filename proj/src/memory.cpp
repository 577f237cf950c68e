#include "bwtmerge/memory.hpp"

namespace bwtmerge {

memory_tracker& memory_tracker::global() {
  static memory_tracker t;
  return t;
}

void memory_tracker::add(std::size_t bytes) {
  std::size_t now = current_.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  std::size_t pk = peak_.load(std::memory_order_relaxed);
  while (now > pk && !peak_.compare_exchange_weak(pk, now, std::memory_order_relaxed)) {
  }
}

}  // namespace bwtmerge
