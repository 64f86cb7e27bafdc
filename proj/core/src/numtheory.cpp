#include "steinhaus/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::uint64_t k) { b[k >> 6] |= std::uint64_t{1} << (k & 63); }
bool get_bit(const Bits& b, std::uint64_t k) { return (b[k >> 6] >> (k & 63)) & 1; }

// dst |= src << s, truncated to the table length
void or_shifted(Bits& dst, const Bits& src, std::uint64_t s) {
  const std::size_t words = dst.size();
  const std::size_t ws = s >> 6;
  const unsigned bs = s & 63;
  if (ws >= words) return;
  if (bs == 0) {
    for (std::size_t i = words; i-- > ws;) dst[i] |= src[i - ws];
    return;
  }
  for (std::size_t i = words; i-- > ws + 1;)
    dst[i] |= (src[i - ws] << bs) | (src[i - ws - 1] >> (64 - bs));
  dst[ws] |= src[0] << bs;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

RepresentabilityTable::RepresentabilityTable(std::uint64_t bound, int max_squares) : bound_(bound) {
  if (bound > kTableBudget) throw SizeError("representability table bound " + std::to_string(bound) + " exceeds 1e8");
  if (max_squares < 1) throw ParameterError("max_squares must be >= 1");
  const std::size_t words = bound / 64 + 1;
  const std::uint64_t root = isqrt(bound);
  Bits squares(words, 0);
  for (std::uint64_t a = 0; a <= root; ++a) set_bit(squares, a * a);
  rows_.push_back(squares);
  for (int m = 2; m <= max_squares; ++m) {
    const Bits& prev = rows_.back();
    Bits row(words, 0);
    for (std::uint64_t a = 0; a <= root; ++a) or_shifted(row, prev, a * a);
    // clear bits above bound in the last word
    const unsigned tail = (bound + 1) & 63;
    if (tail) row.back() &= (std::uint64_t{1} << tail) - 1;
    rows_.push_back(std::move(row));
  }
}

bool RepresentabilityTable::entry(std::uint64_t k, int m) const {
  if (k > bound_) throw ParameterError("k beyond table bound");
  if (m < 1) return k == 0;
  if (m > max_squares()) m = max_squares();  // monotone in m only up to the computed rows
  return get_bit(rows_[m - 1], k);
}

std::optional<std::uint64_t> RepresentabilityTable::next_representable(std::uint64_t lo, int m) const {
  const Bits& row = rows_.at(m - 1);
  for (std::uint64_t k = lo; k <= bound_;) {
    std::uint64_t w = row[k >> 6] >> (k & 63);
    if (w) {
      std::uint64_t r = k + static_cast<std::uint64_t>(__builtin_ctzll(w));
      if (r <= bound_) return r;
      return std::nullopt;
    }
    k = (k | 63) + 1;
  }
  return std::nullopt;
}

RepresentabilityTable build_table(std::uint64_t bound, int max_squares) {
  return RepresentabilityTable(bound, max_squares);
}

BambahScan bambah_chowla_scan(std::uint64_t m_lo, std::uint64_t m_hi) {
  if (m_lo < 1154) throw ParameterError("bambah_chowla_scan needs m_lo >= 1154");
  if (m_hi < m_lo) throw ParameterError("empty range");
  // (m, m + 3 m^{1/4}) lies below m_hi + 3 m_hi^{1/4} + 1
  const auto reach = m_hi + static_cast<std::uint64_t>(3.0 * std::pow(static_cast<double>(m_hi), 0.25)) + 2;
  RepresentabilityTable t(reach, 2);
  BambahScan out;
  out.m_lo = m_lo;
  out.m_hi = m_hi;
  std::optional<std::uint64_t> next = t.next_representable(m_lo + 1, 2);
  out.first_witness = next.value_or(0);
  for (std::uint64_t m = m_lo; m <= m_hi; ++m) {
    if (next && *next <= m) next = t.next_representable(m + 1, 2);
    // k < m + 3 m^{1/4}  <=>  (k - m)^4 < 81 m  for k > m
    bool ok = false;
    if (next) {
      const unsigned __int128 g = *next - m;
      ok = g * g * g * g < static_cast<unsigned __int128>(81) * m;
    }
    if (!ok) out.violations.push_back({m, next});
  }
  return out;
}

std::vector<std::uint64_t> lattice_squared_norms(int q, int dim, std::uint64_t max_sq) {
  if (q < 1 || dim < 1) throw ParameterError("lattice_squared_norms needs q, dim >= 1");
  if (max_sq > kTableBudget) throw SizeError("squared-norm range exceeds 1e8");
  Bits seen(max_sq / 64 + 1, 0);
  const std::uint64_t c = static_cast<std::uint64_t>(q - 1);
  // nondecreasing coordinate tuples suffice
  std::function<void(int, std::uint64_t, std::uint64_t)> rec = [&](int left, std::uint64_t from, std::uint64_t acc) {
    if (left == 0) {
      set_bit(seen, acc);
      return;
    }
    for (std::uint64_t a = from; a <= c; ++a) {
      // remaining coordinates are >= a
      if (acc + a * a * static_cast<std::uint64_t>(left) > max_sq) break;
      rec(left - 1, a, acc + a * a);
    }
  };
  rec(dim, 0, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k <= max_sq; ++k)
    if (get_bit(seen, k)) out.push_back(k);
  return out;
}

GapReport r_set_gap_check(int q, double sigma, int dim, double lo, double hi, double gamma, int windows) {
  GapReport rep;
  rep.q = q;
  rep.dim = dim;
  rep.lo = lo;
  rep.hi = hi;
  rep.bound = 2.0 * gamma * std::pow(static_cast<double>(q), 1.0 - sigma);
  if (!(lo >= 0) || !(hi > lo)) return rep;
  const double max_norm = std::sqrt(static_cast<double>(dim)) * (q - 1);
  const double top = std::min(hi, max_norm + 1.0);
  const auto max_sq = static_cast<std::uint64_t>(std::ceil(top * top));
  auto all = lattice_squared_norms(q, dim, max_sq);
  std::vector<std::uint64_t> in;
  for (auto k : all) {
    const double r = std::sqrt(static_cast<double>(k));
    if (r >= lo && r < hi) in.push_back(k);
  }
  rep.count = in.size();
  auto gap = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<double>(b - a) / (std::sqrt(static_cast<double>(a)) + std::sqrt(static_cast<double>(b)));
  };
  for (std::size_t i = 1; i < in.size(); ++i) {
    const double g = gap(in[i - 1], in[i]);
    if (!rep.max_gap || g > *rep.max_gap) {
      rep.max_gap = g;
      rep.gap_at = std::sqrt(static_cast<double>(in[i - 1]));
    }
  }
  rep.within_bound = rep.max_gap && *rep.max_gap <= rep.bound;
  if (windows > 1) {
    const double w = (hi - lo) / windows;
    for (int j = 0; j < windows; ++j) {
      const double a = lo + j * w, b = (j + 1 == windows) ? hi : a + w;
      double best = 0;
      for (std::size_t i = 1; i < in.size(); ++i) {
        const double r = std::sqrt(static_cast<double>(in[i - 1]));
        if (r >= a && r < b) best = std::max(best, gap(in[i - 1], in[i]));
      }
      rep.window_gaps.push_back(best);
    }
  }
  return rep;
}

}  // namespace steinhaus
