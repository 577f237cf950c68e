#include "bwtmerge/parallel/thread_pool.hpp"

#include <stdexcept>

namespace bwtmerge {

thread_pool::thread_pool(unsigned threads) {
  if (threads == 0) throw std::invalid_argument("thread pool needs at least one thread");
  for (unsigned k = 1; k < threads; ++k) workers_.emplace_back([this] { work(); });
}

thread_pool::~thread_pool() {
  {
    std::lock_guard lk(mu_);
    stop_ = true;
  }
  start_.notify_all();
  for (auto& w : workers_) w.join();
}

// Claims tasks of the current generation until none are left.
void thread_pool::drain(std::uint64_t generation) {
  std::unique_lock lk(mu_);
  while (generation_ == generation && next_ < tasks_) {
    std::uint64_t k = next_++;
    auto* job = job_;
    lk.unlock();
    try {
      (*job)(k);
    } catch (...) {
      std::lock_guard g(mu_);
      if (!error_) error_ = std::current_exception();
    }
    lk.lock();
    if (++finished_ == tasks_) done_.notify_all();
  }
}

void thread_pool::work() {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lk(mu_);
      start_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    drain(seen);
  }
}

void thread_pool::run(std::uint64_t tasks, const std::function<void(std::uint64_t)>& f) {
  if (tasks == 0) return;
  std::uint64_t gen;
  {
    std::lock_guard lk(mu_);
    job_ = &f;
    tasks_ = tasks;
    next_ = finished_ = 0;
    error_ = nullptr;
    gen = ++generation_;
  }
  start_.notify_all();
  drain(gen);
  std::unique_lock lk(mu_);
  done_.wait(lk, [&] { return finished_ == tasks_; });
  job_ = nullptr;
  if (error_) std::rethrow_exception(error_);
}

std::vector<std::uint64_t> split_evenly(std::uint64_t n, std::uint64_t parts) {
  if (parts == 0) throw std::invalid_argument("split_evenly: zero parts");
  std::vector<std::uint64_t> b(parts + 1);
  for (std::uint64_t k = 0; k <= parts; ++k) b[k] = n / parts * k + std::min(k, n % parts);
  return b;
}

}  // namespace bwtmerge
