#include "steinhaus/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "steinhaus/errors.hpp"

namespace steinhaus {

double NormRange::lo() const { return std::sqrt(lo_sq.to_double()); }
double NormRange::hi() const { return std::sqrt(hi_sq.to_double()); }

NormRange box_norm_range(const std::vector<Dyadic>& a, const std::vector<Dyadic>& b) {
  if (a.size() != b.size()) throw ParameterError("box_norm_range: dimension mismatch");
  NormRange r{Dyadic(0), Dyadic(0)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < a[i]) throw ParameterError("box_norm_range: empty box");
    Dyadic a2 = a[i].square(), b2 = b[i].square();
    if (a[i].sign() > 0) r.lo_sq += a2;
    else if (b[i].sign() < 0) r.lo_sq += b2;
    r.hi_sq += a2 < b2 ? b2 : a2;
  }
  return r;
}

IntervalSet IntervalSet::from_ranges(std::vector<NormRange> ranges) {
  std::sort(ranges.begin(), ranges.end(), [](const NormRange& x, const NormRange& y) { return x.lo_sq < y.lo_sq; });
  IntervalSet s;
  for (auto& r : ranges) {
    if (!s.iv_.empty() && r.lo_sq <= s.iv_.back().hi_sq) {
      if (s.iv_.back().hi_sq < r.hi_sq) s.iv_.back().hi_sq = r.hi_sq;
    } else {
      s.iv_.push_back(std::move(r));
    }
  }
  return s;
}

std::optional<std::size_t> IntervalSet::find(const Dyadic& t) const {
  if (t.sign() < 0) return std::nullopt;
  Dyadic t2 = t.square();
  auto it = std::upper_bound(iv_.begin(), iv_.end(), t2, [](const Dyadic& v, const NormRange& r) { return v < r.lo_sq; });
  if (it == iv_.begin()) return std::nullopt;
  --it;
  if (t2 <= it->hi_sq) return static_cast<std::size_t>(it - iv_.begin());
  return std::nullopt;
}

bool IntervalSet::contains(const Dyadic& t) const { return find(t).has_value(); }

bool IntervalSet::contains_interval(const Dyadic& x, const Dyadic& y) const {
  auto i = find(x);
  return i && y.square() <= iv_[*i].hi_sq;
}

IntervalSet IntervalSet::scaled(const Dyadic& u) const {
  if (u.sign() <= 0) throw ParameterError("IntervalSet::scaled: scale must be positive");
  Dyadic u2 = u.square();
  IntervalSet s;
  s.iv_.reserve(iv_.size());
  for (const auto& r : iv_) s.iv_.push_back({r.lo_sq * u2, r.hi_sq * u2});
  return s;
}

IntervalSet IntervalSet::united(const IntervalSet& o) const {
  std::vector<NormRange> all = iv_;
  all.insert(all.end(), o.iv_.begin(), o.iv_.end());
  return from_ranges(std::move(all));
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
  for (const auto& r : iv_) {
    auto it = std::upper_bound(o.iv_.begin(), o.iv_.end(), r.lo_sq,
                               [](const Dyadic& v, const NormRange& x) { return v < x.lo_sq; });
    if (it == o.iv_.begin()) return false;
    --it;
    if (!(r.hi_sq <= it->hi_sq)) return false;
  }
  return true;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
  if (a.iv_.size() != b.iv_.size()) return false;
  for (std::size_t i = 0; i < a.iv_.size(); ++i)
    if (a.iv_[i].lo_sq != b.iv_[i].lo_sq || a.iv_[i].hi_sq != b.iv_[i].hi_sq) return false;
  return true;
}

}  // namespace steinhaus
