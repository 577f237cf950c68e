#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bwtmerge/bitio.hpp"
#include "bwtmerge/extio/format.hpp"
#include "bwtmerge/succinct/huffman.hpp"

namespace bwtmerge {

inline constexpr std::uint64_t default_bwt_block = 4096;

// Header: m, d, block count, payload bits, table offset, then 256 code-length
// bytes. Payload: per d-symbol block, runs as (Huffman codeword, gamma length);
// runs never cross a block boundary. Trailer: bit offset of every block start
// relative to the payload.
struct bwt_file_info {
  std::string name;
  std::uint64_t m = 0;
  std::uint64_t d = default_bwt_block;
  std::uint64_t blocks = 0;
  std::uint64_t payload_bits = 0;
};

class bwt_writer {
 public:
  bwt_writer(store& st, std::string name, const huffman_code& code, std::uint64_t d = default_bwt_block);
  ~bwt_writer();
  bwt_writer(const bwt_writer&) = delete;
  bwt_writer& operator=(const bwt_writer&) = delete;

  void push(symbol a) {
    if (m_ % d_ == 0) {
      end_run();
      offsets_.push_back(out_->bits());
    } else if (len_ > 0 && a == sym_) {
      ++len_;
      ++m_;
      return;
    } else {
      end_run();
    }
    sym_ = a;
    len_ = 1;
    ++m_;
  }
  void push_run(symbol a, std::uint64_t len);
  void append(std::span<const symbol> s) {
    for (symbol a : s) push(a);
  }
  std::uint64_t size() const { return m_; }
  bwt_file_info close();

 private:
  void end_run() {
    if (len_ == 0) return;
    if (!code_.has(sym_)) throw std::invalid_argument("symbol has no codeword in the file's code");
    code_.encode(*out_, sym_);
    out_->put_gamma(len_);
    len_ = 0;
  }

  std::string name_;
  huffman_code code_;
  std::uint64_t d_;
  std::unique_ptr<byte_sink> sink_;
  std::unique_ptr<bit_writer> out_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t header_bytes_ = 0;
  std::uint64_t m_ = 0;
  symbol sym_ = 0;
  std::uint64_t len_ = 0;
  bool closed_ = false;
};

// Opened BWT file: header, code and block table. Shareable between decoders.
class bwt_file {
 public:
  bwt_file(store& st, const std::string& name);
  explicit bwt_file(std::unique_ptr<byte_source> src, std::string name = {});

  std::uint64_t size() const { return info_.m; }
  std::uint64_t block_size() const { return info_.d; }
  const bwt_file_info& info() const { return info_; }
  const huffman_code& code() const { return code_; }
  std::uint64_t block_offset(std::uint64_t k) const { return offsets_.at(k); }
  std::uint64_t payload_bit_begin() const { return header_bytes_ * 8; }
  const byte_source& source() const { return *src_; }

 private:
  void load();

  std::unique_ptr<byte_source> src_;
  bwt_file_info info_;
  huffman_code code_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t header_bytes_ = 0;
};

// Sequential decoder positioned at any symbol index; restarts at the
// enclosing block and skips forward.
class bwt_decoder {
 public:
  bwt_decoder(const bwt_file& f, std::uint64_t start, std::size_t buffer_bytes = 1 << 16);

  std::uint64_t position() const { return pos_; }
  bool at_end() const { return pos_ >= f_.size(); }
  symbol next() {
    if (left_ == 0) load_run();
    --left_;
    ++pos_;
    return sym_;
  }
  // Up to max copies of the current symbol.
  std::pair<symbol, std::uint64_t> next_run(std::uint64_t max) {
    if (left_ == 0) load_run();
    std::uint64_t k = std::min(max, left_);
    left_ -= k;
    pos_ += k;
    return {sym_, k};
  }

 private:
  void load_run();

  const bwt_file& f_;
  bit_reader in_;
  std::uint64_t pos_ = 0;
  symbol sym_ = 0;
  std::uint64_t left_ = 0;
};

// Decode the whole file.
std::vector<symbol> read_bwt(store& st, const std::string& name);
bwt_file_info write_bwt(store& st, const std::string& name, std::span<const symbol> s,
                        std::uint64_t d = default_bwt_block);

// Concatenate parts written with one code and d; every part but the last must
// hold a multiple of d symbols. The payload is copied bit for bit.
bwt_file_info concat_bwt_files(store& st, const std::vector<std::string>& parts, const std::string& name);

}  // namespace bwtmerge
