#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bwtmerge {

// Fixed set of long-lived workers running fork-join phases. run() hands task
// indices 0..tasks-1 to the workers (the caller takes part) and returns once
// all of them finished; the first exception is rethrown. Not reentrant.
class thread_pool {
 public:
  explicit thread_pool(unsigned threads);
  ~thread_pool();
  thread_pool(const thread_pool&) = delete;
  thread_pool& operator=(const thread_pool&) = delete;

  unsigned size() const { return static_cast<unsigned>(workers_.size()) + 1; }
  void run(std::uint64_t tasks, const std::function<void(std::uint64_t)>& f);

 private:
  void work();
  void drain(std::uint64_t generation);

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable start_, done_;
  const std::function<void(std::uint64_t)>* job_ = nullptr;
  std::uint64_t tasks_ = 0, next_ = 0, finished_ = 0, generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

// Contiguous near-equal ranges [begin_k, begin_{k+1}) of [0, n) for k < parts.
std::vector<std::uint64_t> split_evenly(std::uint64_t n, std::uint64_t parts);

}  // namespace bwtmerge
