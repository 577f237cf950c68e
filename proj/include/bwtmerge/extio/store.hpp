#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace bwtmerge {

// Traffic classes for I/O accounting.
enum class io_class : unsigned { bwt = 0, gap = 1, gt = 2, isa = 3, misc = 4 };
inline constexpr unsigned io_class_count = 5;
const char* io_class_name(io_class c);

struct io_counters {
  std::array<std::atomic<std::uint64_t>, io_class_count> read{};
  std::array<std::atomic<std::uint64_t>, io_class_count> written{};

  void add_read(io_class c, std::uint64_t k) { read[static_cast<unsigned>(c)].fetch_add(k, std::memory_order_relaxed); }
  void add_written(io_class c, std::uint64_t k) {
    written[static_cast<unsigned>(c)].fetch_add(k, std::memory_order_relaxed);
  }
  std::uint64_t total_read(io_class c) const { return read[static_cast<unsigned>(c)].load(); }
  std::uint64_t total_written(io_class c) const { return written[static_cast<unsigned>(c)].load(); }
  void reset();
};

class byte_sink {
 public:
  virtual ~byte_sink() = default;
  virtual void write(const void* p, std::size_t k) = 0;
  // Overwrite already written bytes; used to patch headers.
  virtual void write_at(std::uint64_t off, const void* p, std::size_t k) = 0;
  virtual std::uint64_t size() const = 0;
  virtual void close() {}
};

class byte_source {
 public:
  virtual ~byte_source() = default;
  // Returns the number of bytes read; short only at end of data. Thread safe.
  virtual std::size_t read_at(std::uint64_t off, void* p, std::size_t k) const = 0;
  virtual std::uint64_t size() const = 0;
};

// Growable in-memory sink, untracked. Used for small encodings and tests.
class vector_sink final : public byte_sink {
 public:
  void write(const void* p, std::size_t k) override;
  void write_at(std::uint64_t off, const void* p, std::size_t k) override;
  std::uint64_t size() const override { return bytes.size(); }
  std::vector<std::uint8_t> bytes;
};

class span_source final : public byte_source {
 public:
  span_source(const std::uint8_t* p, std::size_t k) : p_(p), k_(k) {}
  explicit span_source(const std::vector<std::uint8_t>& v) : p_(v.data()), k_(v.size()) {}
  std::size_t read_at(std::uint64_t off, void* p, std::size_t k) const override;
  std::uint64_t size() const override { return k_; }

 private:
  const std::uint8_t* p_;
  std::size_t k_;
};

// Named object storage for intermediate products.
class store {
 public:
  virtual ~store() = default;
  virtual std::unique_ptr<byte_sink> create(const std::string& name, io_class c) = 0;
  virtual std::unique_ptr<byte_source> open(const std::string& name, io_class c) = 0;
  virtual void remove(const std::string& name) = 0;
  virtual bool exists(const std::string& name) const = 0;
  virtual std::uint64_t object_size(const std::string& name) const = 0;

  std::string unique_name(const std::string& prefix);
  io_counters& counters() { return *counters_; }
  const io_counters& counters() const { return *counters_; }

 protected:
  std::shared_ptr<io_counters> counters_ = std::make_shared<io_counters>();

 private:
  std::atomic<std::uint64_t> next_id_{0};
};

class memory_store final : public store {
 public:
  std::unique_ptr<byte_sink> create(const std::string& name, io_class c) override;
  std::unique_ptr<byte_source> open(const std::string& name, io_class c) override;
  void remove(const std::string& name) override;
  bool exists(const std::string& name) const override;
  std::uint64_t object_size(const std::string& name) const override;
  std::size_t object_count() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<std::vector<std::uint8_t>>> objects_;
};

// One file per object inside a private run directory.
class directory_store final : public store {
 public:
  // Creates a fresh directory below base (or below the temp dir when base is empty;
  // BWTMERGE_TMPDIR overrides the temp dir).
  explicit directory_store(const std::filesystem::path& base = {}, bool keep = false);
  ~directory_store() override;

  std::unique_ptr<byte_sink> create(const std::string& name, io_class c) override;
  std::unique_ptr<byte_source> open(const std::string& name, io_class c) override;
  void remove(const std::string& name) override;
  bool exists(const std::string& name) const override;
  std::uint64_t object_size(const std::string& name) const override;

  const std::filesystem::path& directory() const { return dir_; }
  void set_keep(bool keep) { keep_ = keep; }

 private:
  std::filesystem::path dir_;
  bool keep_;
};

// Write a whole byte sink to a regular file / read a file into a source.
std::unique_ptr<byte_sink> create_file_sink(const std::filesystem::path& path);
std::unique_ptr<byte_source> open_file_source(const std::filesystem::path& path);

}  // namespace bwtmerge
