#include "bwtmerge/extio/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <random>
#include <stdexcept>
#include <system_error>

namespace bwtmerge {

const char* io_class_name(io_class c) {
  switch (c) {
    case io_class::bwt: return "bwt";
    case io_class::gap: return "gap";
    case io_class::gt: return "gt";
    case io_class::isa: return "isa";
    case io_class::misc: return "misc";
  }
  return "?";
}

void io_counters::reset() {
  for (auto& x : read) x.store(0);
  for (auto& x : written) x.store(0);
}

void vector_sink::write(const void* p, std::size_t k) {
  auto* b = static_cast<const std::uint8_t*>(p);
  bytes.insert(bytes.end(), b, b + k);
}

void vector_sink::write_at(std::uint64_t off, const void* p, std::size_t k) {
  if (off + k > bytes.size()) throw std::out_of_range("vector_sink::write_at past end");
  std::memcpy(bytes.data() + off, p, k);
}

std::size_t span_source::read_at(std::uint64_t off, void* p, std::size_t k) const {
  if (off >= k_) return 0;
  std::size_t m = std::min<std::uint64_t>(k, k_ - off);
  std::memcpy(p, p_ + off, m);
  return m;
}

std::string store::unique_name(const std::string& prefix) {
  return prefix + "." + std::to_string(next_id_.fetch_add(1));
}

namespace {

class mem_sink final : public byte_sink {
 public:
  mem_sink(std::shared_ptr<std::vector<std::uint8_t>> v, std::shared_ptr<io_counters> ctr, io_class c)
      : v_(std::move(v)), ctr_(std::move(ctr)), c_(c) {}
  void write(const void* p, std::size_t k) override {
    auto* b = static_cast<const std::uint8_t*>(p);
    v_->insert(v_->end(), b, b + k);
    ctr_->add_written(c_, k);
  }
  void write_at(std::uint64_t off, const void* p, std::size_t k) override {
    if (off + k > v_->size()) throw std::out_of_range("write_at past end");
    std::memcpy(v_->data() + off, p, k);
    ctr_->add_written(c_, k);
  }
  std::uint64_t size() const override { return v_->size(); }

 private:
  std::shared_ptr<std::vector<std::uint8_t>> v_;
  std::shared_ptr<io_counters> ctr_;
  io_class c_;
};

class mem_source final : public byte_source {
 public:
  mem_source(std::shared_ptr<std::vector<std::uint8_t>> v, std::shared_ptr<io_counters> ctr, io_class c)
      : v_(std::move(v)), ctr_(std::move(ctr)), c_(c) {}
  std::size_t read_at(std::uint64_t off, void* p, std::size_t k) const override {
    if (off >= v_->size()) return 0;
    std::size_t m = std::min<std::uint64_t>(k, v_->size() - off);
    std::memcpy(p, v_->data() + off, m);
    ctr_->add_read(c_, m);
    return m;
  }
  std::uint64_t size() const override { return v_->size(); }

 private:
  std::shared_ptr<std::vector<std::uint8_t>> v_;
  std::shared_ptr<io_counters> ctr_;
  io_class c_;
};

class fd_sink final : public byte_sink {
 public:
  fd_sink(const std::filesystem::path& path, std::shared_ptr<io_counters> ctr, io_class c)
      : ctr_(std::move(ctr)), c_(c) {
    fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "create " + path.string());
  }
  ~fd_sink() override {
    if (fd_ >= 0) ::close(fd_);
  }
  void write(const void* p, std::size_t k) override {
    write_all(size_, p, k);
    size_ += k;
  }
  void write_at(std::uint64_t off, const void* p, std::size_t k) override {
    if (off + k > size_) throw std::out_of_range("write_at past end");
    write_all(off, p, k);
  }
  std::uint64_t size() const override { return size_; }
  void close() override {
    if (fd_ >= 0 && ::close(fd_) != 0) {
      fd_ = -1;
      throw std::system_error(errno, std::generic_category(), "close");
    }
    fd_ = -1;
  }

 private:
  void write_all(std::uint64_t off, const void* p, std::size_t k) {
    auto* b = static_cast<const char*>(p);
    std::size_t done = 0;
    while (done < k) {
      ssize_t w = ::pwrite(fd_, b + done, k - done, static_cast<off_t>(off + done));
      if (w < 0) {
        if (errno == EINTR) continue;
        throw std::system_error(errno, std::generic_category(), "write");
      }
      done += static_cast<std::size_t>(w);
    }
    if (ctr_) ctr_->add_written(c_, k);
  }
  int fd_ = -1;
  std::uint64_t size_ = 0;
  std::shared_ptr<io_counters> ctr_;
  io_class c_;
};

class fd_source final : public byte_source {
 public:
  fd_source(const std::filesystem::path& path, std::shared_ptr<io_counters> ctr, io_class c)
      : ctr_(std::move(ctr)), c_(c) {
    fd_ = ::open(path.c_str(), O_RDONLY);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "open " + path.string());
    struct stat st {};
    if (::fstat(fd_, &st) != 0) {
      int e = errno;
      ::close(fd_);
      throw std::system_error(e, std::generic_category(), "stat " + path.string());
    }
    size_ = static_cast<std::uint64_t>(st.st_size);
  }
  ~fd_source() override { ::close(fd_); }
  std::size_t read_at(std::uint64_t off, void* p, std::size_t k) const override {
    auto* b = static_cast<char*>(p);
    std::size_t done = 0;
    while (done < k) {
      ssize_t r = ::pread(fd_, b + done, k - done, static_cast<off_t>(off + done));
      if (r < 0) {
        if (errno == EINTR) continue;
        throw std::system_error(errno, std::generic_category(), "read");
      }
      if (r == 0) break;
      done += static_cast<std::size_t>(r);
    }
    if (ctr_) ctr_->add_read(c_, done);
    return done;
  }
  std::uint64_t size() const override { return size_; }

 private:
  int fd_ = -1;
  std::uint64_t size_ = 0;
  std::shared_ptr<io_counters> ctr_;
  io_class c_;
};

}  // namespace

std::unique_ptr<byte_sink> memory_store::create(const std::string& name, io_class c) {
  auto v = std::make_shared<std::vector<std::uint8_t>>();
  {
    std::lock_guard lk(mu_);
    objects_[name] = v;
  }
  return std::make_unique<mem_sink>(v, counters_, c);
}

std::unique_ptr<byte_source> memory_store::open(const std::string& name, io_class c) {
  std::lock_guard lk(mu_);
  auto it = objects_.find(name);
  if (it == objects_.end()) throw std::runtime_error("memory_store: no object " + name);
  return std::make_unique<mem_source>(it->second, counters_, c);
}

void memory_store::remove(const std::string& name) {
  std::lock_guard lk(mu_);
  objects_.erase(name);
}

bool memory_store::exists(const std::string& name) const {
  std::lock_guard lk(mu_);
  return objects_.count(name) != 0;
}

std::uint64_t memory_store::object_size(const std::string& name) const {
  std::lock_guard lk(mu_);
  auto it = objects_.find(name);
  if (it == objects_.end()) throw std::runtime_error("memory_store: no object " + name);
  return it->second->size();
}

std::size_t memory_store::object_count() const {
  std::lock_guard lk(mu_);
  return objects_.size();
}

directory_store::directory_store(const std::filesystem::path& base, bool keep) : keep_(keep) {
  std::filesystem::path root = base;
  if (root.empty()) {
    if (const char* env = std::getenv("BWTMERGE_TMPDIR"); env && *env)
      root = env;
    else
      root = std::filesystem::temp_directory_path();
  }
  std::filesystem::create_directories(root);
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto cand = root / ("bwtmerge-" + std::to_string(::getpid()) + "-" + std::to_string(rd() % 1000000));
    std::error_code ec;
    if (std::filesystem::create_directory(cand, ec)) {
      dir_ = cand;
      return;
    }
  }
  throw std::runtime_error("directory_store: cannot create run directory under " + root.string());
}

directory_store::~directory_store() {
  if (!keep_) {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
}

std::unique_ptr<byte_sink> directory_store::create(const std::string& name, io_class c) {
  return std::make_unique<fd_sink>(dir_ / name, counters_, c);
}

std::unique_ptr<byte_source> directory_store::open(const std::string& name, io_class c) {
  return std::make_unique<fd_source>(dir_ / name, counters_, c);
}

void directory_store::remove(const std::string& name) {
  if (keep_) return;
  std::error_code ec;
  std::filesystem::remove(dir_ / name, ec);
}

bool directory_store::exists(const std::string& name) const { return std::filesystem::exists(dir_ / name); }

std::uint64_t directory_store::object_size(const std::string& name) const {
  return std::filesystem::file_size(dir_ / name);
}

std::unique_ptr<byte_sink> create_file_sink(const std::filesystem::path& path) {
  return std::make_unique<fd_sink>(path, nullptr, io_class::misc);
}

std::unique_ptr<byte_source> open_file_source(const std::filesystem::path& path) {
  return std::make_unique<fd_source>(path, nullptr, io_class::misc);
}

}  // namespace bwtmerge
