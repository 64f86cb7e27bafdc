#include "steinhaus/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "steinhaus/certified.hpp"
#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

int exact_log2(long q, const char* what) {
  if (q < 1 || (q & (q - 1)) != 0) throw ParameterError(std::string(what) + " must be a power of 2");
  int k = 0;
  while ((1L << k) < q) ++k;
  return k;
}

int sigma_level(int log2q, Rational sigma) {
  long num = static_cast<long>(log2q) * sigma.num;
  if (num % sigma.den != 0) throw ParameterError("q^sigma is not an integer power of 2");
  return static_cast<int>(num / sigma.den);
}

void check_dim(int d) {
  if (d < 1 || d > kMaxDim) throw ParameterError("dimension must be 1, 2 or 3");
}

std::string dstr(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

mpz_class LatticeBody::cell_count() const {
  mpz_class c;
  mpz_ui_pow_ui(c.get_mpz_t(), 2, static_cast<unsigned long>(log2q) * dim);
  return c;
}

Dyadic LatticeBody::volume() const { return Dyadic(cell_count(), -static_cast<long>(side_level) * dim); }

Dyadic LatticeBody::extent() const { return Dyadic(1) - pitch() + side(); }

int body_dim(const Body& b) {
  return std::visit([](const auto& x) -> int {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, GridSet>) return x.dim();
    else return x.dim;
  }, b);
}

Dyadic body_extent(const Body& b) {
  if (const auto* l = std::get_if<LatticeBody>(&b)) return l->extent();
  const auto& g = std::get<GridSet>(b);
  std::int64_t mx = -1;
  for (const auto& c : g.cells())
    for (int i = 0; i < g.dim(); ++i) mx = std::max(mx, c[i]);
  if (mx < 0) return Dyadic(0);
  return Dyadic(mpz_class(static_cast<long>(mx + 1)), -g.resolution());
}

Dyadic body_volume(const Body& b) {
  if (const auto* l = std::get_if<LatticeBody>(&b)) return l->volume();
  return grid_volume(std::get<GridSet>(b).with_placement(Dyadic(1), {}));
}

std::optional<GridSet> materialize(const LatticeBody& b, std::size_t max_cells) {
  if (b.side_level < b.log2q) throw ParameterError("lattice body cells overlap");
  if (b.cell_count() > max_cells || b.side_level > 62) return std::nullopt;
  const std::int64_t q = std::int64_t(1) << b.log2q;
  const int shift = b.side_level - b.log2q;
  std::vector<Cell> cells;
  cells.reserve(b.cell_count().get_ui());
  Cell c{};
  std::function<void(int)> rec = [&](int i) {
    if (i == b.dim) {
      cells.push_back(c);
      return;
    }
    for (std::int64_t p = 0; p < q; ++p) {
      c[i] = p << shift;
      rec(i + 1);
    }
  };
  rec(0);
  return GridSet(b.dim, b.side_level, std::move(cells));
}

BlockSet::BlockSet(int dim, std::vector<BlockPlacement> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  check_dim(dim);
  for (auto& b : blocks_) {
    if (body_dim(b.body) != dim) throw ParameterError("BlockSet: block dimension mismatch");
    if (b.scale.sign() <= 0) throw ParameterError("BlockSet: block scale must be positive");
    b.offset.resize(dim, Dyadic(0));
  }
  std::stable_sort(blocks_.begin(), blocks_.end(),
                   [](const BlockPlacement& a, const BlockPlacement& b) { return a.offset[0] < b.offset[0]; });
  // pairwise disjoint bounding boxes offset + scale [0, extent]^d
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    Dyadic ei = blocks_[i].scale * body_extent(blocks_[i].body);
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      Dyadic ej = blocks_[j].scale * body_extent(blocks_[j].body);
      bool separated = false;
      for (int k = 0; k < dim && !separated; ++k) {
        const Dyadic& oi = blocks_[i].offset[k];
        const Dyadic& oj = blocks_[j].offset[k];
        separated = oi + ei < oj || oj + ej < oi;
      }
      if (!separated)
        throw ParameterError("BlockSet: blocks " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    }
  }
}

Dyadic BlockSet::volume() const {
  Dyadic v(0);
  for (const auto& b : blocks_) {
    Dyadic s(1);
    for (int i = 0; i < dim_; ++i) s *= b.scale;
    v += s * body_volume(b.body);
  }
  return v;
}

GridSet building_block(long q, Rational sigma, int d) {
  check_dim(d);
  if (sigma.num < sigma.den) throw ParameterError("building_block: sigma must be at least 1");
  const int k = exact_log2(q, "q");
  const int L = sigma_level(k, sigma);
  if (static_cast<long>(k) * d > 24) throw SizeError("building_block: more than 2^24 cells; use the lattice form");
  auto lb = materialize(LatticeBody{d, k, L}, std::size_t(1) << 24);
  return *lb;
}

LatticeBody building_block_lattice(int log2q, Rational sigma, int d) {
  check_dim(d);
  if (sigma.num < sigma.den) throw ParameterError("building_block: sigma must be at least 1");
  return LatticeBody{d, log2q, sigma_level(log2q, sigma)};
}

GridSet iterated_set(long q, Rational sigma, int d, int n) {
  check_dim(d);
  if (n < 1) throw ParameterError("iterated_set: depth must be at least 1");
  const int k = exact_log2(q, "q");
  const int L1 = sigma_level(k, sigma);
  if (static_cast<long>(k) * d * n > 24)
    throw SizeError("iterated_set: q^{nd} = 2^" + std::to_string(static_cast<long>(k) * d * n) +
                    " cells exceeds the 2^24 budget");
  if (static_cast<long>(L1) * n > 62) throw SizeError("iterated_set: resolution exceeds 62");
  std::vector<Cell> cur{Cell{}};
  const std::int64_t qq = std::int64_t(1) << k;
  for (int level = 1; level <= n; ++level) {
    // E_level = union_p p/q + q^{-sigma} E_{level-1}, indices at resolution level * L1
    const int shift = level * L1 - k;
    std::vector<Cell> next;
    next.reserve(cur.size() * static_cast<std::size_t>(std::pow(qq, d)));
    Cell p{};
    std::function<void(int)> rec = [&](int i) {
      if (i == d) {
        for (const auto& c : cur) {
          Cell x{};
          for (int j = 0; j < d; ++j) x[j] = (p[j] << shift) + c[j];
          next.push_back(x);
        }
        return;
      }
      for (std::int64_t v = 0; v < qq; ++v) {
        p[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    cur.swap(next);
  }
  return GridSet(d, n * L1, std::move(cur));
}

GridSet lattice_grid_example(const Dyadic& rho, long n, int d) {
  check_dim(d);
  if (rho.sign() <= 0 || rho > Dyadic(1)) throw ParameterError("lattice_grid_example: rho must lie in (0,1]");
  const int kn = exact_log2(n, "N");
  if (n < 2) throw ParameterError("lattice_grid_example: N must be at least 2");
  const long e = std::max(0L, -rho.exponent());
  const int L = kn + static_cast<int>(e);
  const long m = rho.shifted(e).floor().get_si();  // block side in cells
  double total = std::pow(static_cast<double>(n) * m, d);
  if (total > double(1 << 24)) throw SizeError("lattice_grid_example: more than 2^24 cells");
  std::vector<Cell> cells;
  Cell p{}, c{};
  std::function<void(int)> rec = [&](int i) {
    if (i == d) {
      cells.push_back(c);
      return;
    }
    for (long pi = 0; pi < n; ++pi)
      for (long j = 0; j < m; ++j) {
        p[i] = pi;
        c[i] = (pi << e) + j;
        rec(i + 1);
      }
  };
  rec(0);
  return GridSet(d, L, std::move(cells));
}

SteinhausUnion steinhaus_union(long q, Rational sigma, int d, double a_rho, double b_rho, int depth) {
  if (!(a_rho > 0) || !(b_rho > a_rho)) throw ParameterError("steinhaus_union: need 0 < a_rho < b_rho");
  const int k = exact_log2(q, "q");
  const int L1 = sigma_level(k, sigma);
  const double qs = std::ldexp(1.0, L1);
  SteinhausUnion out;
  out.ratio = b_rho / a_rho;
  if (!(qs > out.ratio)) throw ParameterError("steinhaus_union: need q^sigma > b_rho / a_rho");
  int m = 0;
  while (std::pow(out.ratio, m + 1) < qs) ++m;
  out.m = m;
  GridSet body = iterated_set(q, sigma, d, depth);
  std::vector<BlockPlacement> blocks;
  for (int j = 0; j <= m; ++j) {
    double u = j == 0 ? 1.0 : std::pow(out.ratio, j) / qs;
    Dyadic ud = j == 0 ? Dyadic(1) : Dyadic::floor_of(u, 48);
    out.u_exact.push_back(u);
    out.u.push_back(ud);
    out.max_rounding_slack = std::max(out.max_rounding_slack, (u - ud.to_double()) / u);
    std::vector<Dyadic> off(d, Dyadic(0));
    off[0] = Dyadic(2L * j);
    blocks.push_back({off, ud, body});
  }
  out.set = BlockSet(d, std::move(blocks));
  out.set.provenance = {{"q", std::to_string(q)},
                        {"sigma", sigma.str()},
                        {"a_rho", dstr(a_rho)},
                        {"b_rho", dstr(b_rho)},
                        {"m", std::to_string(m)},
                        {"depth", std::to_string(depth)},
                        {"u_rounding", "down to a multiple of 2^-48"},
                        {"max_rounding_slack", dstr(out.max_rounding_slack)}};
  return out;
}

ZeroDensity zero_density_blocks(const ZeroDensityOptions& opt) {
  const Rational sg = opt.sigma;
  if (!(Rational(1, 1) < sg) || !(sg < Rational(3, 2))) throw ParameterError("zero_density_blocks: sigma must lie in (1, 3/2)");
  if (opt.l0.sign() <= 0) throw ParameterError("zero_density_blocks: l0 must be positive");
  if (static_cast<int>(opt.r.size()) < opt.n_max) throw ParameterError("zero_density_blocks: r sequence shorter than n_max");
  for (std::size_t i = 0; i < opt.r.size(); ++i)
    if (opt.r[i] < 1 || (i > 0 && opt.r[i] <= opt.r[i - 1])) throw ParameterError("zero_density_blocks: r must be increasing positive integers");
  check_dim(opt.d);
  const int d = opt.d;
  const long step = sg.den;
  const double sqd = std::sqrt(static_cast<double>(d));
  ZeroDensity out;
  std::vector<BlockPlacement> blocks;
  long R = 0;
  Dyadic prev_vol, prev_side;
  int prev_k = -1;
  auto pow_r = [&](long r) {
    Dyadic v(1);
    for (int i = 0; i < d; ++i) v *= Dyadic(r);
    return v;
  };
  for (int n = 1; n <= opt.n_max; ++n) {
    const long r = opt.r[n - 1];
    const long Rn = R + r;
    int k = std::max(opt.log2q_min, prev_k + 1);
    k = static_cast<int>((k + step - 1) / step * step);
    bool found = false;
    for (; k <= opt.log2q_max; k += static_cast<int>(step)) {
      const long ks = static_cast<long>(k) * sg.num / sg.den;        // log2 q^sigma
      Dyadic vol = pow_r(r) * Dyadic::pow2(-static_cast<long>(d) * (ks - k));
      Dyadic side = Dyadic(r) * Dyadic::pow2(-ks);
      Dyadic third = Dyadic(static_cast<long>(n) * r) * Dyadic::pow2(2 * ks - 3L * k);
      bool ok = third < Dyadic(1) && side.to_double() < opt.eta(static_cast<double>(Rn)) / sqd;
      if (n == 1) ok = ok && vol < opt.l0.shifted(-1);
      else ok = ok && vol.shifted(1) <= prev_vol && side < prev_side;
      if (!ok) continue;
      found = true;
      out.log2q.push_back(k);
      out.block_volume.push_back(vol);
      prev_vol = vol;
      prev_side = side;
      prev_k = k;
      std::vector<Dyadic> off(d, Dyadic(0));
      off[0] = Dyadic(R);
      blocks.push_back({off, Dyadic(r), building_block_lattice(k, sg, d)});
      break;
    }
    if (!found)
      throw SizeError("zero_density_blocks: no admissible q_" + std::to_string(n) + " with log2 q <= " +
                      std::to_string(opt.log2q_max));
    R = Rn;
    out.R.push_back(R);
  }
  out.set = BlockSet(d, std::move(blocks));
  out.total_volume = out.set.volume();
  std::string qs;
  for (int k : out.log2q) qs += (qs.empty() ? "2^" : ", 2^") + std::to_string(k);
  out.set.provenance = {{"sigma", sg.str()},
                        {"l0", opt.l0.str()},
                        {"log2q_min", std::to_string(opt.log2q_min)},
                        {"q", qs},
                        {"total_volume", out.total_volume.str()}};
  return out;
}

namespace {

// distinct values |x|^2, x in Z^d, with lo <= |x|^2 < hi
std::vector<std::int64_t> lattice_norms_sq(int d, std::int64_t lo, std::int64_t hi) {
  auto isqrt = [](std::int64_t v) {
    if (v <= 0) return std::int64_t(0);
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s;
  };
  std::set<std::int64_t> out;
  const std::int64_t top = isqrt(hi) + 1;
  if (d == 2) {
    for (std::int64_t a = 0; a <= top; ++a) {
      std::int64_t rest = lo - a * a;
      std::int64_t b = rest <= 0 ? 0 : isqrt(rest - 1) + 1;
      for (; a * a + b * b < hi; ++b) out.insert(a * a + b * b);
    }
  } else if (d == 3) {
    if (top > 20000) throw SizeError("rice_variant: d = 3 norm window too large");
    for (std::int64_t a = 0; a <= top; ++a)
      for (std::int64_t c = 0; a * a + c * c < hi; ++c) {
        std::int64_t rest = lo - a * a - c * c;
        std::int64_t b = rest <= 0 ? 0 : isqrt(rest - 1) + 1;
        for (; a * a + b * b + c * c < hi; ++b) out.insert(a * a + b * b + c * c);
      }
  } else {
    throw ParameterError("rice_variant: d must be 2 or 3");
  }
  return {out.begin(), out.end()};
}

// sign of x - sqrt(a) - sqrt(b), certified
int certified_sign(const Dyadic& x, const Dyadic& a, const Dyadic& b) {
  for (mpfr_prec_t p = 128; p <= 8192; p *= 2) {
    MpInterval v = MpInterval(x, p) - MpInterval(a, p).sqrt() - MpInterval(b, p).sqrt();
    if (int s = v.sign()) return s;
  }
  return 0;
}

}  // namespace

RiceVariant rice_variant(int d, Rational s, int n_max) {
  if (d != 2 && d != 3) throw ParameterError("rice_variant: d must be 2 or 3");
  if (!(s < Rational(d, 1)) || s.num <= 0) throw ParameterError("rice_variant: need 0 < s < d");
  if (n_max < 1) throw ParameterError("rice_variant: n_max must be positive");
  const Rational sigma(static_cast<long>(d) * s.den, s.num);
  const double sg = sigma.value();
  RiceVariant out;
  std::vector<std::pair<std::int64_t, std::int64_t>> neighbours;  // lattice norms^2 around d_j
  int kappa = 0;
  std::vector<BlockPlacement> blocks;
  for (int n = 1; n <= n_max; ++n) {
    double lo = 1;
    if (n > 1) {
      lo = std::max(100.0 * d * d * out.d.back().to_double(), std::pow(2.0, kappa / (sg - 1)));
    }
    const auto W = static_cast<std::int64_t>(std::ceil(lo));
    if (W > 4'000'000) throw SizeError("rice_variant: scan window beyond 4e6");
    auto norms = lattice_norms_sq(d, (W - 1) * (W - 1), (W + 2) * (W + 2));
    // widest gap with midpoint in [W, W + 1)
    double best = -1;
    std::size_t bi = 0;
    for (std::size_t i = 0; i + 1 < norms.size(); ++i) {
      double a = std::sqrt(static_cast<double>(norms[i])), b = std::sqrt(static_cast<double>(norms[i + 1]));
      double mid = 0.5 * (a + b);
      if (mid < W || mid >= W + 1) continue;
      if (b - a > best) best = b - a, bi = i;
    }
    if (best < 0) throw SizeError("rice_variant: scan window exhausted");
    const std::int64_t na = norms[bi], nb = norms[bi + 1];
    double mid = 0.5 * (std::sqrt(static_cast<double>(na)) + std::sqrt(static_cast<double>(nb)));
    Dyadic dn = Dyadic::floor_of(mid, 24);
    if (n > 1 && dn < Dyadic(100L * d * d) * out.d.back())
      throw ParameterError("rice_variant: growth condition d_n >= 100 d^2 d_{n-1} failed");
    out.d.push_back(dn);
    neighbours.emplace_back(na, nb);
    // kappa_n: largest power of 2 (non-increasing in n) with ||x| - d_j| > 4 kappa sqrt(d), j <= n
    for (;; ++kappa) {
      Dyadic band = Dyadic(16L * d) * Dyadic::pow2(-2L * kappa);  // (4 kappa sqrt d)^2
      bool ok = true;
      for (std::size_t j = 0; j < out.d.size() && ok; ++j) {
        Dyadic a(static_cast<long>(neighbours[j].first)), b(static_cast<long>(neighbours[j].second));
        ok = certified_sign(out.d[j], a, band) > 0 && sign_sqrt_diff(b, band, out.d[j]) > 0;
      }
      if (ok) break;
      if (kappa > 200) throw SizeError("rice_variant: no admissible kappa");
    }
    out.kappa_level.push_back(kappa);
    int kq = 0;
    while (Dyadic::pow2(kq) < dn) ++kq;
    out.log2q.push_back(kq);
  }
  for (std::size_t j = 0; j < out.d.size(); ++j) {
    double dj = out.d[j].to_double();
    out.margin.push_back(std::min(dj - std::sqrt(static_cast<double>(neighbours[j].first)),
                                  std::sqrt(static_cast<double>(neighbours[j].second)) - dj));
  }
  for (int n = 0; n < n_max; ++n) {
    std::vector<Dyadic> off(d, Dyadic(0));
    off[0] = Dyadic(10L * d) * out.d[n];
    // normalised body: pitch 1/q_n, cube side kappa_n / q_n; placed with scale q_n
    blocks.push_back({off, Dyadic::pow2(out.log2q[n]),
                      LatticeBody{d, out.log2q[n], out.kappa_level[n] + out.log2q[n]}});
  }
  out.set = BlockSet(d, std::move(blocks));
  std::string ds, ks;
  for (std::size_t j = 0; j < out.d.size(); ++j) {
    ds += (j ? ", " : "") + out.d[j].str();
    ks += (j ? ", 2^-" : "2^-") + std::to_string(out.kappa_level[j]);
  }
  out.set.provenance = {{"sigma", sigma.str()}, {"d_j", ds}, {"kappa_j", ks}, {"block_side", "kappa_n"}};
  return out;
}

}  // namespace steinhaus
