#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

namespace bwtmerge {

// Process-wide accounting of large internal allocations (indexes, sort
// arrays, gap buffers, stream buffers). Small bookkeeping is not tracked.
class memory_tracker {
 public:
  static memory_tracker& global();

  void add(std::size_t bytes);
  void sub(std::size_t bytes) { current_.fetch_sub(bytes, std::memory_order_relaxed); }
  std::size_t current() const { return current_.load(std::memory_order_relaxed); }
  std::size_t peak() const { return peak_.load(std::memory_order_relaxed); }
  void reset_peak() { peak_.store(current(), std::memory_order_relaxed); }

 private:
  std::atomic<std::size_t> current_{0};
  std::atomic<std::size_t> peak_{0};
};

template <class T>
struct tracked_allocator {
  using value_type = T;
  tracked_allocator() noexcept = default;
  template <class U>
  tracked_allocator(const tracked_allocator<U>&) noexcept {}

  T* allocate(std::size_t k) {
    memory_tracker::global().add(k * sizeof(T));
    return static_cast<T*>(::operator new(k * sizeof(T)));
  }
  void deallocate(T* p, std::size_t k) noexcept {
    ::operator delete(p);
    memory_tracker::global().sub(k * sizeof(T));
  }
  template <class U>
  bool operator==(const tracked_allocator<U>&) const noexcept {
    return true;
  }
};

template <class T>
using tracked_vector = std::vector<T, tracked_allocator<T>>;

// Raised when the configured budget cannot accommodate the smallest viable run.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& what, std::uint64_t minimal_budget)
      : std::runtime_error(what), minimal_budget_(minimal_budget) {}
  std::uint64_t minimal_budget() const { return minimal_budget_; }

 private:
  std::uint64_t minimal_budget_;
};

}  // namespace bwtmerge
