#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steinhaus/constructions.hpp"
#include "steinhaus/intervals.hpp"

namespace steinhaus {

// Exact Delta(E, F) for grid sets with equal resolution and scale.
IntervalSet distance_set(const GridSet& e, const GridSet& f);
inline IntervalSet distance_set(const GridSet& e) { return distance_set(e, e); }

// Union over blocks of the within-block distance sets (grid bodies only); a subset of Delta(A).
IntervalSet within_block_distance_set(const BlockSet& a);

struct BlockLemmaReport {
  long q = 0;
  Rational sigma;
  int dim = 2;
  std::size_t interval_count = 0;
  std::size_t initial_disjoint_count = 0;  // intervals before the merged tail
  double separation_min = 0;               // smallest gap among them
  NormRange tail;                          // merged interval reaching the maximal norm
  double tail_constant = 0;                // tail.lo / q^{2 sigma - 3}
  bool degenerate = false;                 // Delta is one interval
  IntervalSet delta;
};

BlockLemmaReport verify_block_lemma(long q, Rational sigma, int d);

struct SteinhausResult {
  bool has_zero_interval = false;
  double a = 0;
  Dyadic a_sq;
};

SteinhausResult steinhaus_check(const IntervalSet& delta);

enum class Coverage { Covered, NotCovered, Undecidable };
std::string to_string(Coverage c);

struct CoverageResult {
  Dyadic t;
  Coverage status = Coverage::Undecidable;
  std::string detail;
};

// Membership of each target in Delta(A \ B(0,R)) at the constructed truncation. Only blocks lying
// entirely outside B(0,R) are used; "not covered" means every pair of those blocks was excluded.
std::vector<CoverageResult> coverage_check(const BlockSet& a, const Dyadic& R, const std::vector<Dyadic>& targets);

struct ScaleReport {
  std::vector<double> scales;        // R l(Q) over all high-density cubes of the sampled truncations
  std::vector<double> block_scales;  // largest such scale per block, increasing
  bool growth_ok = false;
};

// High-density cubes of a lattice body by the translation-symmetric DP (one representative per level).
std::vector<DensityCube> lattice_high_density_cubes(const LatticeBody& b, Rational s, double rho);
ContentValue lattice_content(const LatticeBody& b, Rational s);

bool growth_ratio_ok(const std::vector<double>& v, double c0);
ScaleReport well_distributed_scales(const BlockSet& a, double rho, Rational s, double c0);

}  // namespace steinhaus
