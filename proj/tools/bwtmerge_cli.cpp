// bwtmerge command-line front end: build, verify, inspect, bench.
// Exit codes: 0 success, 1 verification mismatch, 2 usage or configuration
// error, 3 I/O or format error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <system_error>

#include "bwtmerge/extio/bwt_file.hpp"
#include "bwtmerge/extio/gap_file.hpp"
#include "bwtmerge/extio/gt_file.hpp"
#include "bwtmerge/extio/isa_file.hpp"
#include "bwtmerge/mergetree.hpp"
#include "bwtmerge/oracle.hpp"

namespace fs = std::filesystem;
using namespace bwtmerge;

namespace {

enum exit_code : int { ok = 0, mismatch = 1, usage = 2, io = 3 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Store whose object names are plain file paths; lets the extio readers open
// user-supplied files.
class path_store final : public store {
 public:
  std::unique_ptr<byte_sink> create(const std::string& name, io_class) override { return create_file_sink(name); }
  std::unique_ptr<byte_source> open(const std::string& name, io_class) override { return open_file_source(name); }
  void remove(const std::string& name) override { fs::remove(name); }
  bool exists(const std::string& name) const override { return fs::exists(name); }
  std::uint64_t object_size(const std::string& name) const override { return fs::file_size(name); }
};

std::uint64_t parse_size(const std::string& s) {
  if (s.empty()) throw usage_error("empty size");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw usage_error("bad size '" + s + "'");
  }
  std::string suffix = s.substr(used);
  double mult = 1;
  if (suffix == "K" || suffix == "k") mult = 1024.0;
  else if (suffix == "M" || suffix == "m") mult = 1024.0 * 1024;
  else if (suffix == "G" || suffix == "g") mult = 1024.0 * 1024 * 1024;
  else if (!suffix.empty() && suffix != "B") throw usage_error("bad size suffix in '" + s + "'");
  if (v < 0) throw usage_error("negative size '" + s + "'");
  return static_cast<std::uint64_t>(v * mult);
}

run_mode parse_mode(const std::string& m) {
  if (m == "balanced") return run_mode::balanced;
  if (m == "skewed") return run_mode::skewed;
  if (m == "auto") return run_mode::automatic;
  throw usage_error("mode must be balanced, skewed or auto");
}

struct pipeline_options {
  std::string budget;
  std::uint64_t block_size = 0;
  std::string mode = "auto";
  unsigned threads = 1;
  std::string tmp;
  std::uint64_t isa_rate = 32;
  bool keep = false;
  bool force_external_gap = false;
  int verbosity = 0;
};

void add_pipeline_flags(CLI::App* c, pipeline_options& o) {
  c->add_option("--budget", o.budget, "Memory budget in bytes, suffixes K/M/G (default: a quarter of the input)");
  c->add_option("--block-size", o.block_size, "Block size override");
  c->add_option("--mode", o.mode, "balanced | skewed | auto")->check(CLI::IsMember({"balanced", "skewed", "auto"}));
  c->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--tmp", o.tmp, "Directory for intermediate files (BWTMERGE_TMPDIR overrides the system default)");
  c->add_option("--isa-rate", o.isa_rate, "ISA sampling rate")->check(CLI::PositiveNumber);
  c->add_flag("--keep-intermediates", o.keep, "Keep intermediate files");
  c->add_flag("--force-external-gap", o.force_external_gap, "Always accumulate gap arrays on disk");
  c->add_flag("-v,--verbose", o.verbosity, "More output");
}

// Budget and block size reconciled: an override that does not fit wins with a warning.
run_config make_config(const pipeline_options& o, std::uint64_t n) {
  run_config cfg;
  cfg.mode = parse_mode(o.mode);
  cfg.threads = o.threads;
  cfg.isa_rate = o.isa_rate;
  cfg.keep_intermediates = o.keep;
  cfg.force_external_gap = o.force_external_gap;
  cfg.block_size = o.block_size;
  if (o.budget.empty()) {
    cfg.memory_budget = std::max(n / 4, minimal_budget(o.block_size));
  } else {
    cfg.memory_budget = parse_size(o.budget);
    if (cfg.memory_budget < minimal_budget(o.block_size)) {
      if (o.block_size == 0)
        throw budget_error("memory budget of " + std::to_string(cfg.memory_budget) + " bytes is infeasible",
                           minimal_budget(0));
      std::cerr << "warning: block size " << o.block_size << " needs a budget of " << minimal_budget(o.block_size)
                << " bytes; raising the budget\n";
      cfg.memory_budget = minimal_budget(o.block_size);
    }
  }
  return cfg;
}

std::unique_ptr<directory_store> make_store(const pipeline_options& o) {
  return std::make_unique<directory_store>(o.tmp.empty() ? fs::path{} : fs::path(o.tmp), o.keep);
}

void copy_object(store& st, const std::string& name, const fs::path& to) {
  auto src = st.open(name, io_class::misc);
  auto sink = create_file_sink(to);
  std::vector<std::uint8_t> buf(1 << 20);
  for (std::uint64_t off = 0; off < src->size();) {
    auto k = src->read_at(off, buf.data(), buf.size());
    if (k == 0) throw std::runtime_error("short read while copying " + name);
    sink->write(buf.data(), k);
    off += k;
  }
  sink->close();
}

void write_raw(store& st, const std::string& name, const fs::path& to) {
  bwt_file f(st, name);
  bwt_decoder dec(f, 0);
  std::ofstream out(to, std::ios::binary);
  if (!out) throw std::system_error(errno, std::generic_category(), "open " + to.string());
  std::vector<char> buf;
  buf.reserve(1 << 20);
  while (!dec.at_end()) {
    buf.push_back(static_cast<char>(dec.next()));
    if (buf.size() == buf.capacity()) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::system_error(errno, std::generic_category(), "write " + to.string());
}

nlohmann::json report_json(const run_result& r, const run_config& cfg) {
  const auto& rep = r.report;
  nlohmann::json j;
  j["n"] = rep.n;
  j["sigma"] = rep.sigma;
  j["budget"] = cfg.memory_budget;
  j["block_size"] = rep.plan.b;
  j["blocks"] = rep.plan.nu;
  j["mode"] = run_mode_name(rep.mode);
  j["threads"] = rep.threads;
  j["tree_depth"] = rep.tree_depth;
  j["groups"] = rep.groups;
  j["power"] = rep.power;
  if (rep.power) j["power_root"] = rep.power_root;
  j["first_rank"] = r.first_rank;
  j["peak_tracked_bytes"] = rep.peak_tracked_bytes;
  j["left_index_estimate"] = rep.left_index_estimate;
  j["max_working_length"] = rep.max_working_length;
  j["working_kinds"] = rep.working_kinds;
  j["merges"] = {{"count", rep.merges.merges},
                 {"backward_steps", rep.merges.backward_steps},
                 {"memory_gap_nodes", rep.merges.memory_gap_nodes},
                 {"external_gap_nodes", rep.merges.external_gap_nodes},
                 {"gap_spills", rep.merges.gap_spills},
                 {"gap_merges", rep.merges.gap_merges},
                 {"gap_encoded_bits", rep.merges.gap_encoded_bits},
                 {"gap_bound_bits", rep.merges.gap_bound_bits},
                 {"peak_index_bytes", rep.merges.peak_index_bytes}};
  nlohmann::json io;
  for (unsigned c = 0; c < io_class_count; ++c)
    io[io_class_name(io_class(c))] = {{"read", rep.io_read[c]}, {"written", rep.io_written[c]}};
  j["io"] = io;
  for (const auto& s : rep.stages) j["stages"][s.name] = s.seconds;
  j["warnings"] = rep.warnings;
  j["bwt_bytes"] = r.bwt.payload_bits / 8;
  return j;
}

void print_report(const run_result& r, const run_config& cfg) {
  const auto& rep = r.report;
  std::printf("n %llu  sigma %u  budget %llu\n", (unsigned long long)rep.n, rep.sigma,
              (unsigned long long)cfg.memory_budget);
  if (rep.power) {
    std::printf("power of a root of length %llu\n", (unsigned long long)rep.power_root);
  }
  std::printf("block size %llu  blocks %llu  mode %s  groups %llu  tree depth %llu  threads %u\n",
              (unsigned long long)rep.plan.b, (unsigned long long)rep.plan.nu, run_mode_name(rep.mode),
              (unsigned long long)rep.groups, (unsigned long long)rep.tree_depth, rep.threads);
  std::printf("peak tracked memory %llu bytes\n", (unsigned long long)rep.peak_tracked_bytes);
  std::printf("first suffix rank %llu\n", (unsigned long long)r.first_rank);
  std::printf("external I/O (bytes read / written):\n");
  const char* labels[] = {"BWT merge", "gap merge", "gt", "ISA", "other"};
  for (unsigned c = 0; c < io_class_count; ++c)
    std::printf("  %-10s %14llu %14llu\n", labels[c], (unsigned long long)rep.io_read[c],
                (unsigned long long)rep.io_written[c]);
  for (const auto& s : rep.stages) std::printf("  stage %-14s %.3f s\n", s.name.c_str(), s.seconds);
  for (const auto& w : rep.warnings) std::printf("warning: %s\n", w.c_str());
}

int cmd_build(const std::string& input, const std::string& output, const std::string& raw, bool json,
              const pipeline_options& o) {
  auto t = text::map_file(input);
  auto cfg = make_config(o, t.size());
  auto st = make_store(o);
  auto r = run(t, cfg, *st);
  copy_object(*st, r.bwt.name, output);
  if (!raw.empty()) write_raw(*st, r.bwt.name, raw);
  if (json) std::cout << report_json(r, cfg).dump(2) << "\n";
  else print_report(r, cfg);
  if (o.keep && o.verbosity) std::cerr << "intermediates kept in " << st->directory() << "\n";
  return ok;
}

// Decodes a BWT given as a bwtmerge file or as raw bytes. A decoding failure
// stops early; the caller then reports the first undecoded index.
std::vector<symbol> load_bwt(const std::string& path, bool* truncated) {
  *truncated = false;
  auto src = open_file_source(path);
  std::uint8_t magic[4] = {};
  bool is_file = src->size() >= prefix_bytes && src->read_at(0, magic, 4) == 4 && std::memcmp(magic, "BWTB", 4) == 0;
  std::vector<symbol> out;
  if (!is_file) {
    out.resize(src->size());
    src->read_at(0, out.data(), out.size());
    return out;
  }
  path_store ps;
  try {
    bwt_file f(ps, path);
    bwt_decoder dec(f, 0);
    while (!dec.at_end()) out.push_back(dec.next());
  } catch (const std::exception&) {
    *truncated = true;
  }
  return out;
}

int cmd_verify(const std::string& input, const std::string& bwt_path, bool force, std::uint64_t guard,
               const pipeline_options& o) {
  auto t = text::map_file(input);
  if (t.size() > guard && !force) {
    std::cerr << "input of " << t.size() << " bytes exceeds the oracle guard of " << guard
              << " bytes; pass --force to verify anyway\n";
    return usage;
  }
  std::vector<symbol> got;
  bool truncated = false;
  if (bwt_path.empty()) {
    got = run_bwt(t, make_config(o, t.size()));
  } else {
    got = load_bwt(bwt_path, &truncated);
  }
  std::vector<symbol> bytes(t.bytes().begin(), t.bytes().end());
  auto want = oracle::naive_bwt(bytes);
  std::uint64_t k = 0;
  while (k < got.size() && k < want.size() && got[k] == want[k]) ++k;
  if (k == want.size() && got.size() == want.size() && !truncated) {
    std::cout << "OK\n";
    return ok;
  }
  std::cout << "MISMATCH at index " << k;
  if (truncated) std::cout << " (decoding failed)";
  else if (k == got.size() || k == want.size()) std::cout << " (length " << got.size() << " vs " << want.size() << ")";
  std::cout << "\n";
  return mismatch;
}

int cmd_inspect(const std::string& path) {
  path_store ps;
  auto src = open_file_source(path);
  file_kind kind;
  try {
    kind = peek_kind(*src);
  } catch (const format_error& e) {
    std::cout << path << ": unknown magic (" << e.what() << ")\n";
    return io;
  }
  std::cout << path << ": " << file_kind_name(kind) << ", " << src->size() << " bytes\n";
  switch (kind) {
    case file_kind::bwt: {
      bwt_file f(ps, path);
      const auto& i = f.info();
      std::cout << "  symbols m      " << i.m << "\n  block size d   " << i.d << "\n  blocks         " << i.blocks
                << "\n  payload bits   " << i.payload_bits << "\n  max code len   " << f.code().max_length() << "\n";
      if (i.m) std::cout << "  bits/symbol    " << double(i.payload_bits) / double(i.m) << "\n";
      break;
    }
    case file_kind::dense_gap:
    case file_kind::sparse_gap: {
      gap_file f(ps, path);
      const auto& i = f.info();
      std::cout << "  length l       " << i.length << "\n  sum s          " << i.sum << "\n  payload bits   "
                << i.payload_bits << "\n";
      if (kind == file_kind::dense_gap) {
        std::cout << "  restart every  " << f.restart_interval() << "\n  restarts       " << f.restarts().size()
                  << "\n";
      } else {
        std::cout << "  nonzeros k     " << i.nonzeros << "\n  anchor stride  " << f.anchor_stride() << "\n  anchors        " << f.anchor_count() << "\n";
      }
      std::cout << "  size bound     " << gap_size_bound_bits(kind, i.length, i.sum, i.nonzeros) << " bits\n";
      break;
    }
    case file_kind::gt: {
      gt_file f(ps, path);
      std::cout << "  bits           " << f.size() << "\n";
      break;
    }
    case file_kind::isa: {
      isa_reader r(ps, path);
      std::cout << "  rate           " << r.rate() << "\n  samples        " << r.size() << "\n";
      break;
    }
  }
  return ok;
}

int cmd_bench(const std::string& input, std::uint64_t random_n, unsigned sigma, const std::string& csv,
              unsigned repeat, const pipeline_options& o) {
  text t;
  std::string source;
  if (!input.empty()) {
    t = text::map_file(input);
    source = input;
  } else {
    if (random_n == 0) throw usage_error("bench needs an input file or --random N");
    std::mt19937_64 g(42);
    std::vector<symbol> v(random_n);
    for (auto& c : v) c = static_cast<symbol>(sigma >= 256 ? g() & 255 : 'a' + g() % sigma);
    t = text::from_bytes(std::move(v));
    source = "random";
  }
  auto cfg = make_config(o, t.size());
  std::ofstream file;
  if (!csv.empty()) {
    file.open(csv);
    if (!file) throw std::system_error(errno, std::generic_category(), "open " + csv);
  }
  std::ostream& out = csv.empty() ? std::cout : file;
  out << "source,run,n,sigma,b,blocks,mode,threads,power,stage,seconds,bwt_bytes,peak_tracked_bytes,"
         "gap_encoded_bits,gap_bound_bits,gap_ratio,io_bwt,io_gap,io_gt\n";
  for (unsigned k = 0; k < repeat; ++k) {
    auto st = make_store(o);
    auto start = std::chrono::steady_clock::now();
    auto r = run(t, cfg, *st);
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& rep = r.report;
    const double ratio = rep.merges.gap_bound_bits > 0 ? double(rep.merges.gap_encoded_bits) / rep.merges.gap_bound_bits : 0;
    auto io_total = [&](io_class c) { return rep.io_read[unsigned(c)] + rep.io_written[unsigned(c)]; };
    auto row = [&](const std::string& stage, double sec) {
      out << source << ',' << k << ',' << rep.n << ',' << rep.sigma << ',' << rep.plan.b << ',' << rep.plan.nu << ','
          << run_mode_name(rep.mode) << ',' << rep.threads << ',' << (rep.power ? 1 : 0) << ',' << stage << ','
          << sec << ',' << r.bwt.payload_bits / 8 << ',' << rep.peak_tracked_bytes << ','
          << rep.merges.gap_encoded_bits << ',' << rep.merges.gap_bound_bits << ',' << ratio << ','
          << io_total(io_class::bwt) << ',' << io_total(io_class::gap) << ',' << io_total(io_class::gt) << '\n';
    };
    for (const auto& s : rep.stages) row(s.name, s.seconds);
    row("total", total);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-external BWT construction by merging sorted blocks"};
  app.require_subcommand(1);
  pipeline_options opts;

  std::string input, output, raw, bwt_path, csv;
  bool json = false, force = false;
  std::uint64_t guard = 1000000, random_n = 0;
  unsigned sigma = 256, repeat = 1;

  auto* build = app.add_subcommand("build", "Compute the BWT of a file");
  build->add_option("input", input, "Input text")->required();
  build->add_option("-o,--output", output, "Output BWT file")->required();
  build->add_option("--raw", raw, "Also write the BWT as raw bytes");
  build->add_flag("--json", json, "Print the run report as JSON");
  add_pipeline_flags(build, opts);

  auto* verify = app.add_subcommand("verify", "Compare the pipeline (or a BWT file) with the brute-force BWT");
  verify->add_option("input", input, "Input text")->required();
  verify->add_option("bwt", bwt_path, "BWT to check, bwtmerge or raw format (default: run the pipeline)");
  verify->add_flag("--force", force, "Skip the input size guard");
  verify->add_option("--max-size", guard, "Input size guard in bytes");
  add_pipeline_flags(verify, opts);

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Print the header of a bwtmerge file");
  inspect->add_option("file", inspect_path, "File to inspect")->required();

  auto* bench = app.add_subcommand("bench", "Time the pipeline stages and print CSV rows");
  bench->add_option("input", input, "Input text");
  bench->add_option("--random", random_n, "Use N random bytes instead of a file");
  bench->add_option("--sigma", sigma, "Alphabet size for --random")->check(CLI::Range(1u, 256u));
  bench->add_option("--csv", csv, "Write rows to this file");
  bench->add_option("--repeat", repeat, "Runs per configuration")->check(CLI::PositiveNumber);
  add_pipeline_flags(bench, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*build) return cmd_build(input, output, raw, json, opts);
    if (*verify) return cmd_verify(input, bwt_path, force, guard, opts);
    if (*inspect) return cmd_inspect(inspect_path);
    if (*bench) return cmd_bench(input, random_n, sigma, csv, repeat, opts);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << " (minimal budget " << e.minimal_budget() << " bytes)\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  }
  return usage;
}
