#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace steinhaus {

// Bit k of row m-1 is set iff k = a_1^2 + ... + a_m^2 with a_i >= 0 integers.
class RepresentabilityTable {
 public:
  RepresentabilityTable(std::uint64_t bound, int max_squares);

  std::uint64_t bound() const { return bound_; }
  int max_squares() const { return static_cast<int>(rows_.size()); }
  bool entry(std::uint64_t k, int m) const;
  // Smallest k in [lo, bound] with entry(k, m), if any.
  std::optional<std::uint64_t> next_representable(std::uint64_t lo, int m) const;

 private:
  std::uint64_t bound_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

inline constexpr std::uint64_t kTableBudget = 100'000'000;

RepresentabilityTable build_table(std::uint64_t bound, int max_squares);

struct BambahViolation {
  std::uint64_t m;
  std::optional<std::uint64_t> next;  // next sum of two squares above m
};

struct BambahScan {
  std::uint64_t m_lo = 0, m_hi = 0;
  std::vector<BambahViolation> violations;
  // witness for m_lo: the smallest sum of two squares strictly above it
  std::uint64_t first_witness = 0;
};

// Checks that (m, m + 3 m^{1/4}) contains a sum of two squares for every m in [m_lo, m_hi].
BambahScan bambah_chowla_scan(std::uint64_t m_lo, std::uint64_t m_hi);

struct GapReport {
  int q = 0, dim = 0;
  double lo = 0, hi = 0;
  std::size_t count = 0;                 // elements of the norm set in [lo, hi)
  std::optional<double> max_gap;         // null when fewer than two elements
  std::optional<double> gap_at;          // left element of the widest gap
  std::vector<double> window_gaps;       // max gap per sub-window when requested
  double bound = 0;                      // 2 gamma q^{1 - sigma}
  bool within_bound = false;
};

// Squared norms |z|^2 with z in Z^dim and every |z_i| <= q - 1, sorted and distinct.
std::vector<std::uint64_t> lattice_squared_norms(int q, int dim, std::uint64_t max_sq);

// Largest gap between consecutive norms |z| in [lo, hi); `windows` > 1 also splits [lo, hi)
// into equal sub-windows and reports the gap in each.
GapReport r_set_gap_check(int q, double sigma, int dim, double lo, double hi, double gamma = 1.0,
                          int windows = 1);

}  // namespace steinhaus
