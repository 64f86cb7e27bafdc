#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steinhaus/dyadic.hpp"

namespace steinhaus {

// [sqrt(lo_sq), sqrt(hi_sq)]; every endpoint is the square root of a dyadic.
struct NormRange {
  Dyadic lo_sq, hi_sq;
  double lo() const;
  double hi() const;
};

// Exact min/max of |x| over the box prod [a_i, b_i].
NormRange box_norm_range(const std::vector<Dyadic>& a, const std::vector<Dyadic>& b);

class IntervalSet {
 public:
  IntervalSet() = default;
  // Sorts and merges; overlapping or touching ranges become one interval.
  static IntervalSet from_ranges(std::vector<NormRange> ranges);

  const std::vector<NormRange>& intervals() const { return iv_; }
  std::size_t size() const { return iv_.size(); }
  bool empty() const { return iv_.empty(); }

  bool contains(const Dyadic& t) const;
  bool contains(double t) const { return contains(Dyadic::from_double(t)); }
  // [x, y] inside one interval (exact on squares)
  bool contains_interval(const Dyadic& x, const Dyadic& y) const;
  // index of the interval containing t
  std::optional<std::size_t> find(const Dyadic& t) const;

  IntervalSet scaled(const Dyadic& u) const;
  IntervalSet united(const IntervalSet& o) const;
  bool subset_of(const IntervalSet& o) const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b);

 private:
  std::vector<NormRange> iv_;
};

}  // namespace steinhaus
