#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "steinhaus/content.hpp"
#include "steinhaus/dyadic.hpp"

namespace steinhaus {

// Cells p * 2^{-log2q} + 2^{-side_level} [0,1]^d for p in {0..q-1}^d, never materialised.
struct LatticeBody {
  int dim = 2;
  int log2q = 0;
  int side_level = 0;

  Dyadic pitch() const { return Dyadic::pow2(-log2q); }
  Dyadic side() const { return Dyadic::pow2(-side_level); }
  mpz_class cell_count() const;
  Dyadic volume() const;
  // largest coordinate reached: (q-1) pitch + side
  Dyadic extent() const;
};

using Body = std::variant<GridSet, LatticeBody>;

int body_dim(const Body& b);
Dyadic body_extent(const Body& b);
Dyadic body_volume(const Body& b);
// GridSet form of a lattice body when it has at most max_cells cells.
std::optional<GridSet> materialize(const LatticeBody& b, std::size_t max_cells = 1u << 22);

struct BlockPlacement {
  std::vector<Dyadic> offset;
  Dyadic scale = Dyadic(1);
  Body body;
};

using Provenance = std::vector<std::pair<std::string, std::string>>;

class BlockSet {
 public:
  BlockSet() = default;
  BlockSet(int dim, std::vector<BlockPlacement> blocks);

  int dim() const { return dim_; }
  const std::vector<BlockPlacement>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  Dyadic volume() const;

  Provenance provenance;

 private:
  int dim_ = 2;
  std::vector<BlockPlacement> blocks_;
};

GridSet building_block(long q, Rational sigma, int d);
LatticeBody building_block_lattice(int log2q, Rational sigma, int d);
GridSet iterated_set(long q, Rational sigma, int d, int n);
GridSet lattice_grid_example(const Dyadic& rho, long n, int d);

struct SteinhausUnion {
  BlockSet set;
  int m = 0;
  double ratio = 0;                 // b / a
  std::vector<double> u_exact;      // (b/a)^k q^{-sigma}
  std::vector<Dyadic> u;            // dyadic roundings (down)
  double max_rounding_slack = 0;    // max relative (u_exact - u) / u_exact
};

SteinhausUnion steinhaus_union(long q, Rational sigma, int d, double a_rho, double b_rho, int depth);

struct ZeroDensityOptions {
  std::vector<long> r;               // r_1, r_2, ...
  Rational sigma{9, 8};
  int d = 2;
  Dyadic l0 = Dyadic(1);
  std::function<double(double)> eta = [](double R) { return 1.0 / (2.0 + R); };
  int n_max = 6;
  int log2q_min = 8;                 // stands in for q_1 >> 1/c0
  int log2q_max = 4096;
};

struct ZeroDensity {
  BlockSet set;
  std::vector<int> log2q;
  std::vector<Dyadic> block_volume;
  std::vector<long> R;               // partial sums R_n
  Dyadic total_volume;
};

ZeroDensity zero_density_blocks(const ZeroDensityOptions& opt);

struct RiceVariant {
  BlockSet set;
  std::vector<Dyadic> d;             // avoided distances d_j
  std::vector<int> kappa_level;      // kappa_j = 2^{-kappa_level[j]}
  std::vector<int> log2q;            // d_j in (q_j / 2, q_j]
  std::vector<double> margin;        // min over x in Z^d of ||x| - d_j| for the final kappa
};

RiceVariant rice_variant(int d, Rational s, int n_max);

}  // namespace steinhaus
