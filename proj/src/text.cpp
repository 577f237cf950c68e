#include "bwtmerge/text.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <stdexcept>
#include <system_error>

namespace bwtmerge {

struct text::holder {
  std::vector<symbol> owned;
  void* map = nullptr;
  std::size_t map_len = 0;
  ~holder() {
    if (map) ::munmap(map, map_len);
  }
};

void text::init(const symbol* p, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("input must be non-empty");
  data_ = p;
  n_ = n;
  symbol mx = *std::max_element(p, p + n);
  sigma_ = static_cast<unsigned>(mx) + 1;
}

text text::from_bytes(std::vector<symbol> bytes) {
  text t;
  t.hold_ = std::make_shared<holder>();
  t.hold_->owned = std::move(bytes);
  t.init(t.hold_->owned.data(), t.hold_->owned.size());
  return t;
}

text text::from_string(std::string_view s) {
  return from_bytes(std::vector<symbol>(s.begin(), s.end()));
}

text text::map_file(const std::filesystem::path& path) {
  int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) throw std::system_error(errno, std::generic_category(), "open " + path.string());
  struct stat st {};
  if (::fstat(fd, &st) != 0) {
    int e = errno;
    ::close(fd);
    throw std::system_error(e, std::generic_category(), "stat " + path.string());
  }
  if (st.st_size == 0) {
    ::close(fd);
    throw std::invalid_argument("input must be non-empty");
  }
  auto len = static_cast<std::size_t>(st.st_size);
  void* m = ::mmap(nullptr, len, PROT_READ, MAP_PRIVATE, fd, 0);
  ::close(fd);
  if (m == MAP_FAILED) throw std::system_error(errno, std::generic_category(), "mmap " + path.string());
  text t;
  t.hold_ = std::make_shared<holder>();
  t.hold_->map = m;
  t.hold_->map_len = len;
  t.init(static_cast<const symbol*>(m), len);
  return t;
}

std::vector<std::uint64_t> text::histogram() const {
  std::vector<std::uint64_t> h(256, 0);
  for (std::uint64_t i = 0; i < n_; ++i) ++h[data_[i]];
  return h;
}

symbol circular_char(const text& t, std::uint64_t i) { return t.circ(i); }

std::uint64_t block_plan::block_of(std::uint64_t x) const {
  if (x < mu * b) return x / b;
  return mu + (x - mu * b) / (b - 1);
}

std::vector<interval> block_plan::boundaries() const {
  std::vector<interval> out;
  out.reserve(nu);
  for (std::uint64_t i = 0; i < nu; ++i) out.push_back(block(i));
  return out;
}

block_plan plan_blocks(std::uint64_t n, std::uint64_t b_target) {
  if (n == 0) throw std::invalid_argument("plan_blocks: n must be positive");
  if (b_target == 0 || b_target > n) throw std::invalid_argument("plan_blocks: block size must be in [1, n]");
  block_plan p;
  p.n = n;
  p.b_target = b_target;
  std::uint64_t bt = n >= 2 ? std::max<std::uint64_t>(b_target, 2) : b_target;
  p.nu = (n + bt - 1) / bt;
  p.b = (n + p.nu - 1) / p.nu;
  p.mu = p.nu - (p.nu * p.b - n);
  return p;
}

std::uint64_t partition::max_length() const {
  std::uint64_t m = 0;
  for (std::uint64_t i = 0; i < count(); ++i) m = std::max(m, length(i));
  return m;
}

std::uint64_t partition::block_of(std::uint64_t x) const {
  return static_cast<std::uint64_t>(std::upper_bound(starts.begin(), starts.end(), x) - starts.begin()) - 1;
}

partition to_partition(const block_plan& plan) {
  partition p;
  p.n = plan.n;
  p.starts.reserve(plan.nu + 1);
  for (std::uint64_t i = 0; i < plan.nu; ++i) p.starts.push_back(plan.start(i));
  p.starts.push_back(plan.n);
  return p;
}

partition refine(const partition& p, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("refine: k must be positive");
  partition q;
  q.n = p.n;
  for (std::uint64_t i = 0; i < p.count(); ++i) {
    std::uint64_t L = p.length(i), parts = std::min(k, L);
    for (std::uint64_t x = 0; x < parts; ++x) q.starts.push_back(p.start(i) + L * x / parts);
  }
  q.starts.push_back(p.n);
  return q;
}

}  // namespace bwtmerge
