#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace steinhaus {

// value = mantissa * 2^exponent, mantissa odd or zero (zero has exponent 0).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(long v);  // NOLINT
  DyadicRational(int v) : DyadicRational(static_cast<long>(v)) {}  // NOLINT
  DyadicRational(mpz_class m, long e);

  static DyadicRational pow2(long e) { return DyadicRational(mpz_class(1), e); }
  // Parses "a", "a/2^k", "a/b" (b a power of two) or a finite binary-exact decimal like "0.375".
  static DyadicRational parse(const std::string& s);
  // Largest dyadic with denominator 2^bits not exceeding x (x finite).
  static DyadicRational floor_of(double x, int bits);
  static DyadicRational from_double(double x);  // exact

  const mpz_class& mantissa() const { return m_; }
  long exponent() const { return e_; }
  bool is_zero() const { return m_ == 0; }
  int sign() const { return sgn(m_); }

  DyadicRational operator-() const { return DyadicRational(-m_, e_); }
  DyadicRational& operator+=(const DyadicRational& o);
  DyadicRational& operator-=(const DyadicRational& o) { return *this += -o; }
  DyadicRational& operator*=(const DyadicRational& o);
  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

  DyadicRational shifted(long k) const;  // times 2^k
  DyadicRational abs() const { return DyadicRational(::abs(m_), e_); }
  DyadicRational square() const { return *this * *this; }

  // floor(value) and ceil(value) as integers.
  mpz_class floor() const;
  mpz_class ceil() const;
  bool is_integer() const { return m_ == 0 || e_ >= 0; }
  // Is the value 2^k for some integer k?
  bool is_power_of_two() const { return m_ == 1; }

  double to_double() const;
  long double to_long_double() const;
  std::string str() const;  // "p/2^k" or integer

  friend int cmp(const DyadicRational& a, const DyadicRational& b);
  friend bool operator==(const DyadicRational& a, const DyadicRational& b) { return a.m_ == b.m_ && a.e_ == b.e_; }
  friend bool operator!=(const DyadicRational& a, const DyadicRational& b) { return !(a == b); }
  friend bool operator<(const DyadicRational& a, const DyadicRational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const DyadicRational& a, const DyadicRational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const DyadicRational& a, const DyadicRational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const DyadicRational& a, const DyadicRational& b) { return cmp(a, b) >= 0; }

 private:
  void normalize();
  mpz_class m_ = 0;
  long e_ = 0;
};

using Dyadic = DyadicRational;

inline constexpr int kMaxDim = 3;
using Cell = std::array<std::int64_t, kMaxDim>;

// corner * 2^{-level} + [0, 2^{-level}]^dim
struct DyadicCube {
  int dim = 2;
  int level = 0;
  Cell corner{};

  Dyadic side() const { return Dyadic::pow2(-level); }
  std::vector<DyadicCube> children() const;
  DyadicCube parent() const;
  // Q contains the cube at (level', corner') when it is an ancestor or equal.
  bool contains(const DyadicCube& other) const;
  friend bool operator==(const DyadicCube& a, const DyadicCube& b) {
    return a.dim == b.dim && a.level == b.level && a.corner == b.corner;
  }
};

std::vector<DyadicCube> children(const DyadicCube& q);

// Finite union of level-L cells in [0,1]^d, placed by x -> scale * x + anchor.
class GridSet {
 public:
  GridSet() = default;
  GridSet(int dim, int resolution, std::vector<Cell> cells);

  static GridSet full(int dim, int resolution);

  int dim() const { return dim_; }
  int resolution() const { return res_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<Dyadic>& anchor() const { return anchor_; }
  const Dyadic& scale() const { return scale_; }

  bool contains_cell(const Cell& c) const;
  // Exact point membership in body coordinates ([0,1]^d frame, before placement).
  bool contains_point(const std::vector<Dyadic>& x) const;

  // x -> u x + v with u a power of two.
  GridSet affine(const Dyadic& u, const std::vector<Dyadic>& v) const;
  // Same cells expressed at a finer resolution (each cell split into 2^{dk} cells).
  GridSet refined(int new_resolution) const;
  GridSet with_placement(const Dyadic& scale, std::vector<Dyadic> anchor) const;

  friend bool operator==(const GridSet& a, const GridSet& b);

 private:
  int dim_ = 2;
  int res_ = 0;
  std::vector<Cell> cells_;
  std::vector<Dyadic> anchor_;
  Dyadic scale_ = Dyadic(1);
};

bool cell_less(const Cell& a, const Cell& b, int dim);

Dyadic grid_volume(const GridSet& e);
GridSet restrict(const GridSet& e, const DyadicCube& q);
std::vector<Cell> difference_vectors(const GridSet& e, const GridSet& f);

}  // namespace steinhaus
