#include "steinhaus/distance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "steinhaus/errors.hpp"
#include "steinhaus/lattice_blocks.hpp"

namespace steinhaus {

namespace {

// Integer-unit merge of boxes z + [-1,1]^d: lo = sum (|z_i|-1)_+^2, hi = sum (|z_i|+1)^2.
IntervalSet merge_integer_boxes(const std::vector<Cell>& diffs, int d, const Dyadic& unit) {
  std::vector<std::pair<std::int64_t, std::int64_t>> r;
  r.reserve(diffs.size());
  for (const auto& z : diffs) {
    std::int64_t lo = 0, hi = 0;
    for (int i = 0; i < d; ++i) {
      std::int64_t a = z[i] < 0 ? -z[i] : z[i];
      if (a > 1) lo += (a - 1) * (a - 1);
      hi += (a + 1) * (a + 1);
    }
    r.emplace_back(lo, hi);
  }
  std::sort(r.begin(), r.end());
  std::vector<NormRange> merged;
  const Dyadic u2 = unit.square();
  std::int64_t cl = -1, ch = -1;
  auto flush = [&] {
    if (cl >= 0) merged.push_back({Dyadic(cl) * u2, Dyadic(ch) * u2});
  };
  for (const auto& [lo, hi] : r) {
    if (cl >= 0 && lo <= ch) {
      ch = std::max(ch, hi);
    } else {
      flush();
      cl = lo, ch = hi;
    }
  }
  flush();
  return IntervalSet::from_ranges(std::move(merged));
}

}  // namespace

IntervalSet distance_set(const GridSet& e, const GridSet& f) {
  if (e.dim() != f.dim()) throw ParameterError("distance_set: dimension mismatch");
  if (e.resolution() != f.resolution()) throw ParameterError("distance_set: resolution mismatch, refine first");
  if (e.scale() != f.scale()) throw ParameterError("distance_set: scale mismatch");
  if (e.empty() || f.empty()) return {};
  const int d = e.dim();
  const Dyadic unit = e.scale() * Dyadic::pow2(-e.resolution());
  auto diffs = difference_vectors(e, f);
  std::vector<Dyadic> o(d, Dyadic(0));
  bool zero_offset = true;
  for (int i = 0; i < d; ++i) {
    const Dyadic ae = e.anchor().empty() ? Dyadic(0) : e.anchor()[i];
    const Dyadic af = f.anchor().empty() ? Dyadic(0) : f.anchor()[i];
    o[i] = ae - af;
    zero_offset = zero_offset && o[i].is_zero();
  }
  if (zero_offset) return merge_integer_boxes(diffs, d, unit);
  if (diffs.size() > 4'000'000) throw SizeError("distance_set: too many offset difference boxes");
  std::vector<NormRange> ranges;
  ranges.reserve(diffs.size());
  std::vector<Dyadic> lo(d), hi(d);
  for (const auto& z : diffs) {
    for (int i = 0; i < d; ++i) {
      Dyadic c = o[i] + unit * Dyadic(static_cast<long>(z[i]));
      lo[i] = c - unit;
      hi[i] = c + unit;
    }
    ranges.push_back(box_norm_range(lo, hi));
  }
  return IntervalSet::from_ranges(std::move(ranges));
}

IntervalSet within_block_distance_set(const BlockSet& a) {
  IntervalSet out;
  std::vector<std::pair<const GridSet*, IntervalSet>> cache;
  for (const auto& b : a.blocks()) {
    GridSet body;
    if (const auto* g = std::get_if<GridSet>(&b.body)) {
      body = *g;
    } else {
      auto m = materialize(std::get<LatticeBody>(b.body), 1u << 20);
      if (!m) throw SizeError("within_block_distance_set: lattice body too large to materialise");
      body = *m;
    }
    const IntervalSet* hit = nullptr;
    for (const auto& [g, iv] : cache)
      if (*g == body) hit = &iv;
    IntervalSet local;
    if (!hit) {
      local = distance_set(body.with_placement(Dyadic(1), {}));
      if (std::holds_alternative<GridSet>(b.body)) cache.emplace_back(&std::get<GridSet>(b.body), local);
      hit = &local;
    }
    out = out.united(hit->scaled(b.scale));
  }
  return out;
}

BlockLemmaReport verify_block_lemma(long q, Rational sigma, int d) {
  BlockLemmaReport r;
  r.q = q;
  r.sigma = sigma;
  r.dim = d;
  GridSet f = building_block(q, sigma, d);
  r.delta = distance_set(f);
  const auto& iv = r.delta.intervals();
  r.interval_count = iv.size();
  r.tail = iv.back();
  r.degenerate = iv.size() == 1;
  r.initial_disjoint_count = iv.size() - 1;
  r.separation_min = r.degenerate ? 0 : INFINITY;
  for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
    long double gap = std::sqrt(iv[i + 1].lo_sq.to_long_double()) - std::sqrt(iv[i].hi_sq.to_long_double());
    r.separation_min = std::min(r.separation_min, static_cast<double>(gap));
  }
  r.tail_constant = r.tail.lo() / std::pow(static_cast<double>(q), 2 * sigma.value() - 3);
  return r;
}

SteinhausResult steinhaus_check(const IntervalSet& delta) {
  SteinhausResult r;
  if (!delta.empty() && delta.intervals()[0].lo_sq.is_zero()) {
    r.has_zero_interval = true;
    r.a_sq = delta.intervals()[0].hi_sq;
    r.a = delta.intervals()[0].hi();
  }
  return r;
}

std::string to_string(Coverage c) {
  switch (c) {
    case Coverage::Covered: return "covered";
    case Coverage::NotCovered: return "not covered";
    default: return "undecidable";
  }
}

std::vector<CoverageResult> coverage_check(const BlockSet& a, const Dyadic& R, const std::vector<Dyadic>& targets) {
  const int d = a.dim();
  std::vector<std::size_t> used;
  bool partial = false;
  const Dyadic R2 = R.square();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& b = a.blocks()[i];
    Dyadic ext = b.scale * body_extent(b.body);
    std::vector<Dyadic> lo(d), hi(d);
    for (int k = 0; k < d; ++k) lo[k] = b.offset[k], hi[k] = b.offset[k] + ext;
    NormRange nr = box_norm_range(lo, hi);
    if (R2 <= nr.lo_sq) used.push_back(i);
    else if (R2 < nr.hi_sq) partial = true;
  }
  std::map<std::size_t, IntervalSet> self_delta;
  auto grid_of = [&](std::size_t i) {
    const auto& b = a.blocks()[i];
    return std::get<GridSet>(b.body).with_placement(b.scale, b.offset);
  };
  std::vector<CoverageResult> out;
  for (const auto& t : targets) {
    CoverageResult cr;
    cr.t = t;
    if (t.sign() < 0) throw ParameterError("coverage_check: negative target");
    if (t.is_zero()) {
      cr.status = used.empty() ? Coverage::Undecidable : Coverage::Covered;
      cr.detail = "zero distance";
      out.push_back(cr);
      continue;
    }
    bool unknown = false, any_range = false;
    std::string notes;
    for (std::size_t x = 0; x < used.size() && cr.status != Coverage::Covered; ++x) {
      for (std::size_t y = x; y < used.size() && cr.status != Coverage::Covered; ++y) {
        const auto& A = a.blocks()[used[x]];
        const auto& B = a.blocks()[used[y]];
        NormRange nr = block_pair_range(A, B);
        const Dyadic t2 = t.square();
        if (t2 < nr.lo_sq || nr.hi_sq < t2) continue;
        any_range = true;
        const bool grids = std::holds_alternative<GridSet>(A.body) && std::holds_alternative<GridSet>(B.body);
        if (grids) {
          GridSet ga = grid_of(used[x]), gb = grid_of(used[y]);
          if (ga.resolution() != gb.resolution() || ga.scale() != gb.scale()) {
            unknown = true;
            continue;
          }
          bool hit;
          if (x == y) {
            auto it = self_delta.find(used[x]);
            if (it == self_delta.end()) it = self_delta.emplace(used[x], distance_set(ga)).first;
            hit = it->second.contains(t);
          } else {
            hit = distance_set(gb, ga).contains(t);
          }
          if (hit) {
            cr.status = Coverage::Covered;
            cr.detail = "blocks " + std::to_string(used[x]) + "," + std::to_string(used[y]) + ": exact interval membership";
          }
          continue;
        }
        PairResult pr = lattice_pair_realizes(A, B, t, x == y);
        if (pr.status == PairStatus::Realized) {
          cr.status = Coverage::Covered;
          cr.detail = "blocks " + std::to_string(used[x]) + "," + std::to_string(used[y]) + ": " + pr.detail;
        } else if (pr.status == PairStatus::Unknown) {
          unknown = true;
          notes += "blocks " + std::to_string(used[x]) + "," + std::to_string(used[y]) + ": " + pr.detail + "; ";
        }
      }
    }
    if (cr.status != Coverage::Covered) {
      if (!any_range) {
        cr.status = Coverage::Undecidable;
        cr.detail = "beyond the constructed truncation";
      } else if (unknown || partial) {
        cr.status = Coverage::Undecidable;
        cr.detail = partial ? "a block meets the ball boundary; " + notes : notes;
      } else {
        cr.status = Coverage::NotCovered;
        cr.detail = "every block pair excluded at this truncation";
      }
    }
    out.push_back(cr);
  }
  return out;
}

namespace {

// Content of one occupied cube per level, bottom-up. Every occupied cube of a level is a translate
// of every other: above the lattice level it has 2^d occupied children, below it exactly one.
std::vector<ContentValue> lattice_levels(const LatticeBody& b, Rational s) {
  if (s.num <= 0 || s.num > static_cast<long>(b.dim) * s.den) throw ParameterError("lattice content: need 0 < s <= d");
  if (b.side_level < b.log2q) throw ParameterError("lattice content: cells overlap");
  std::vector<ContentValue> h(b.side_level + 1);
  h[b.side_level] = ContentValue::cube(s, b.side_level);
  const mpz_class fan = mpz_class(1) << b.dim;
  for (int k = b.side_level - 1; k >= 0; --k) {
    ContentValue kids = k < b.log2q ? h[k + 1].times(fan) : h[k + 1];
    ContentValue self = ContentValue::cube(s, k);
    h[k] = compare(self, kids) <= 0 ? self : kids;
  }
  return h;
}

}  // namespace

ContentValue lattice_content(const LatticeBody& b, Rational s) { return lattice_levels(b, s)[0]; }

std::vector<DensityCube> lattice_high_density_cubes(const LatticeBody& b, Rational s, double rho) {
  if (!(rho > 0 && rho < 1)) throw ParameterError("high density: rho must lie in (0,1)");
  auto h = lattice_levels(b, s);
  std::vector<DensityCube> out;
  for (int k = 0; k <= b.side_level; ++k)
    if (auto dc = classify_density(DyadicCube{b.dim, k, {}}, h[k], rho)) out.push_back(*dc);
  return out;
}

bool growth_ratio_ok(const std::vector<double>& v, double c0) {
  if (v.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i + 1] > v[i]) || v[i + 1] / v[i] > c0) return false;
  return true;
}

ScaleReport well_distributed_scales(const BlockSet& a, double rho, Rational s, double c0) {
  ScaleReport r;
  for (const auto& b : a.blocks()) {
    // the normalised truncation at the block's own cube is the body itself
    std::vector<DensityCube> cubes;
    if (const auto* g = std::get_if<GridSet>(&b.body)) cubes = high_density_cubes(*g, s, rho);
    else cubes = lattice_high_density_cubes(std::get<LatticeBody>(b.body), s, rho);
    if (cubes.empty()) continue;
    int best = cubes.front().cube.level;
    for (const auto& c : cubes) {
      r.scales.push_back(b.scale.to_double() * std::ldexp(1.0, -c.cube.level));
      best = std::min(best, c.cube.level);
    }
    r.block_scales.push_back(b.scale.to_double() * std::ldexp(1.0, -best));
  }
  std::sort(r.scales.begin(), r.scales.end());
  r.scales.erase(std::unique(r.scales.begin(), r.scales.end()), r.scales.end());
  std::sort(r.block_scales.begin(), r.block_scales.end());
  r.growth_ok = growth_ratio_ok(r.block_scales, c0);
  return r;
}

}  // namespace steinhaus
