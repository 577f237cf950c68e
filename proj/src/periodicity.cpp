#include "bwtmerge/periodicity.hpp"

#include <bit>
#include <stdexcept>

namespace bwtmerge {

succinct_border_array::succinct_border_array(std::uint64_t capacity_hint) : bits_(2 * capacity_hint + 1, true) {}

std::uint64_t succinct_border_array::at(std::uint64_t i) const {
  if (i >= len_) throw std::out_of_range("border array index out of range");
  return get(i);
}

succinct_border_array border_array(std::span<const symbol> w) {
  if (w.empty()) throw std::invalid_argument("border_array: empty input");
  succinct_border_array ba(w.size());
  auto acc = [&](std::uint64_t i) { return w[i]; };
  for (std::size_t i = 0; i < w.size(); ++i) ba.extend(acc);
  return ba;
}

std::vector<std::uint64_t> border_values(const succinct_border_array& ba) {
  std::vector<std::uint64_t> out(ba.size());
  for (std::uint64_t i = 0; i < ba.size(); ++i) out[i] = ba.get(i);
  return out;
}

std::uint64_t minimal_period_of_prefix(const succinct_border_array& ba, std::uint64_t i) {
  return i + 1 - ba.at(i);
}

std::optional<std::uint64_t> minimal_short_period(std::span<const symbol> w) {
  if (w.empty()) return std::nullopt;
  auto ba = border_array(w);
  std::uint64_t p = minimal_period_of_prefix(ba, w.size() - 1);
  if (p <= w.size() / 2) return p;
  return std::nullopt;
}

namespace {

// Smallest p in [1, L] with per(L + 2p) = p over t~ from s, or none.
std::uint64_t block_period(const text& t, std::uint64_t s, std::uint64_t L) {
  succinct_border_array ba(3 * L);
  auto w = [&](std::uint64_t x) { return t.circ(s + x); };
  std::uint64_t p = 1;
  while (p <= L) {
    std::uint64_t m = L + 2 * p;
    while (ba.size() < m) ba.extend(w);
    std::uint64_t per = m - ba.get(m - 1);
    if (per == p) return p;
    // per(m) is nondecreasing in m, so any later solution is at least per.
    p = per;
  }
  return repetition_info::none;
}

}  // namespace

std::optional<std::uint64_t> power_root(const text& t) {
  const std::uint64_t n = t.size();
  auto has_period = [&](std::uint64_t q) {
    for (std::uint64_t x = 0; x + q < n; ++x)
      if (t[x] != t[x + q]) return false;
    return true;
  };
  std::vector<std::uint64_t> primes;
  for (std::uint64_t m = n, p = 2; m > 1; ++p) {
    if (p * p > m) p = m;
    if (m % p) continue;
    primes.push_back(p);
    while (m % p == 0) m /= p;
  }
  // Periods dividing n are the multiples of the root that divide n, so
  // stripping prime factors greedily ends at the root.
  std::uint64_t q = n;
  for (bool moved = true; moved;) {
    moved = false;
    for (auto p : primes)
      if (q % p == 0 && has_period(q / p)) {
        q /= p;
        moved = true;
      }
  }
  if (q == n) return std::nullopt;
  return q;
}

repetition_info compute_repetition_info(const text& t, const block_plan& plan) {
  return compute_repetition_info(t, to_partition(plan));
}

repetition_info compute_repetition_info(const text& t, const partition& plan) {
  const std::uint64_t nu = plan.count(), n = t.size();
  repetition_info info;
  info.propagated.assign(nu, repetition_info::none);
  info.generates.assign(nu, 0);
  info.next_break.assign(nu, nu);
  for (std::uint64_t i = 0; i < nu; ++i) info.propagated[i] = block_period(t, plan.start(i), plan.length(i));

  for (std::uint64_t i = 0; i < nu; ++i) {
    std::uint64_t j = plan.successor(i);
    std::uint64_t p = info.propagated[j];
    if (p == repetition_info::none) continue;
    std::uint64_t e = plan.start(i) + plan.length(i) + n;  // successor start, kept >= p
    bool ok = true;
    for (std::uint64_t x = 0; x < p && ok; ++x) ok = t.circ(e - p + x) == t.circ(e + x);
    info.generates[i] = ok ? 1 : 0;
  }

  // Scan twice around the cycle so that wrap-around breaks are found.
  std::uint64_t nb = nu;
  for (std::uint64_t idx = 2 * nu; idx-- > 0;) {
    std::uint64_t a = idx % nu, b = (idx + 1) % nu;
    if (info.propagated[b] != info.propagated[a]) nb = b;
    if (idx < nu) info.next_break[a] = nb;
  }

  std::uint64_t p = info.propagated[0];
  bool uniform = p != repetition_info::none;
  for (std::uint64_t i = 1; i < nu && uniform; ++i) uniform = info.propagated[i] == p;
  if (uniform && n % p == 0 && n / p > 1) {
    bool periodic = true;
    for (std::uint64_t x = 0; x + p < n && periodic; ++x) periodic = t[x] == t[x + p];
    if (periodic) {
      info.is_power = true;
      info.root_length = p;
      info.exponent = n / p;
    }
  }
  return info;
}

unsigned next_break_width(std::uint64_t nu) {
  unsigned bits = 64 - static_cast<unsigned>(std::countl_zero(nu + 1));
  if (std::has_single_bit(nu + 1)) --bits;  // ceil(log2(nu+1))
  return bits == 0 ? 1 : (bits + 7) / 8;
}

void spill_next_break(const repetition_info& info, store& st, const std::string& name) {
  unsigned w = next_break_width(info.block_count());
  auto sink = st.create(name, io_class::misc);
  std::vector<std::uint8_t> buf;
  buf.reserve(info.block_count() * w);
  for (auto v : info.next_break)
    for (unsigned k = 0; k < w; ++k) buf.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  sink->write(buf.data(), buf.size());
  sink->close();
}

std::vector<std::uint64_t> load_next_break(store& st, const std::string& name, std::uint64_t nu) {
  unsigned w = next_break_width(nu);
  auto src = st.open(name, io_class::misc);
  std::vector<std::uint8_t> buf(nu * w);
  if (src->read_at(0, buf.data(), buf.size()) != buf.size()) throw std::runtime_error("next_break spill truncated");
  std::vector<std::uint64_t> out(nu, 0);
  for (std::uint64_t i = 0; i < nu; ++i)
    for (unsigned k = 0; k < w; ++k) out[i] |= static_cast<std::uint64_t>(buf[i * w + k]) << (8 * k);
  return out;
}

}  // namespace bwtmerge
