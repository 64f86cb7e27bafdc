#include "steinhaus/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "steinhaus/errors.hpp"

namespace steinhaus {

DyadicRational::DyadicRational(long v) : m_(v), e_(0) { normalize(); }

DyadicRational::DyadicRational(mpz_class m, long e) : m_(std::move(m)), e_(e) { normalize(); }

void DyadicRational::normalize() {
  if (m_ == 0) {
    e_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(m_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
    e_ += static_cast<long>(tz);
  }
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& o) {
  if (o.m_ == 0) return *this;
  if (m_ == 0) return *this = o;
  if (e_ == o.e_) {
    m_ += o.m_;
  } else if (e_ < o.e_) {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), o.m_.get_mpz_t(), o.e_ - e_);
    m_ += t;
  } else {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), m_.get_mpz_t(), e_ - o.e_);
    m_ = t + o.m_;
    e_ = o.e_;
  }
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator*=(const DyadicRational& o) {
  m_ *= o.m_;
  e_ += o.e_;
  if (m_ == 0) e_ = 0;
  return *this;
}

DyadicRational DyadicRational::shifted(long k) const {
  if (m_ == 0) return *this;
  return DyadicRational(m_, e_ + k);
}

int cmp(const DyadicRational& a, const DyadicRational& b) {
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  if (a.e_ == b.e_) return ::cmp(a.m_, b.m_);
  mpz_class x = a.m_, y = b.m_;
  if (a.e_ > b.e_)
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), a.e_ - b.e_);
  else
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), b.e_ - a.e_);
  int c = ::cmp(x, y);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

mpz_class DyadicRational::floor() const {
  mpz_class r;
  if (e_ >= 0)
    mpz_mul_2exp(r.get_mpz_t(), m_.get_mpz_t(), e_);
  else
    mpz_fdiv_q_2exp(r.get_mpz_t(), m_.get_mpz_t(), -e_);
  return r;
}

mpz_class DyadicRational::ceil() const {
  mpz_class r;
  if (e_ >= 0)
    mpz_mul_2exp(r.get_mpz_t(), m_.get_mpz_t(), e_);
  else
    mpz_cdiv_q_2exp(r.get_mpz_t(), m_.get_mpz_t(), -e_);
  return r;
}

double DyadicRational::to_double() const {
  if (m_ == 0) return 0.0;
  long ex = 0;
  double d = mpz_get_d_2exp(&ex, m_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(ex + e_));
}

long double DyadicRational::to_long_double() const {
  if (m_ == 0) return 0.0L;
  // Take the top 64 bits of the mantissa.
  std::size_t bits = mpz_sizeinbase(m_.get_mpz_t(), 2);
  mpz_class top = ::abs(m_);
  long shift = 0;
  if (bits > 64) {
    shift = static_cast<long>(bits - 64);
    mpz_fdiv_q_2exp(top.get_mpz_t(), top.get_mpz_t(), shift);
  }
  unsigned long long hi = 0;
  mpz_export(&hi, nullptr, -1, sizeof(hi), 0, 0, top.get_mpz_t());
  long double v = std::ldexp(static_cast<long double>(hi), static_cast<int>(shift + e_));
  return m_ < 0 ? -v : v;
}

std::string DyadicRational::str() const {
  if (e_ >= 0) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), m_.get_mpz_t(), e_);
    return r.get_str();
  }
  return m_.get_str() + "/2^" + std::to_string(-e_);
}

DyadicRational DyadicRational::from_double(double x) {
  if (!std::isfinite(x)) throw ParameterError("non-finite value cannot be made dyadic");
  if (x == 0.0) return DyadicRational();
  int ex = 0;
  double fr = std::frexp(x, &ex);
  // fr * 2^53 is an integer
  auto m = static_cast<long long>(std::ldexp(fr, 53));
  mpz_class mm;
  mpz_set_si(mm.get_mpz_t(), m);
  return DyadicRational(mm, ex - 53);
}

DyadicRational DyadicRational::floor_of(double x, int bits) {
  double s = std::floor(std::ldexp(x, bits));
  return from_double(s).shifted(-bits);
}

namespace {
// Base-10 integer with optional sign; gmpxx would read a leading 0 as octal.
mpz_class parse_int(const std::string& t, const std::string& raw) {
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) throw ParameterError("'" + raw + "' is not a dyadic rational");
  for (std::size_t j = i; j < t.size(); ++j)
    if (t[j] < '0' || t[j] > '9') throw ParameterError("'" + raw + "' is not a dyadic rational");
  mpz_class n(t.substr(i), 10);
  return t[0] == '-' ? mpz_class(-n) : n;
}
}  // namespace

DyadicRational DyadicRational::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  if (s.empty()) throw ParameterError("empty dyadic literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    mpz_class n = parse_int(num, raw);
    if (den.rfind("2^", 0) == 0) {
      const mpz_class k = parse_int(den.substr(2), raw);
      if (!k.fits_slong_p()) throw ParameterError("exponent of '" + raw + "' out of range");
      return DyadicRational(n, -k.get_si());
    }
    mpz_class dd = parse_int(den, raw);
    if (dd <= 0 || mpz_popcount(dd.get_mpz_t()) != 1)
      throw ParameterError("denominator of '" + raw + "' is not a power of two");
    long k = static_cast<long>(mpz_scan1(dd.get_mpz_t(), 0));
    return DyadicRational(n, -k);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return DyadicRational(parse_int(s, raw), 0);
  // decimal a.b = (ab) / 10^k must reduce to a dyadic
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  long k = static_cast<long>(s.size() - dot - 1);
  mpz_class n = parse_int(digits == "-" || digits.empty() ? "0" : digits, raw);
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
  if (!mpz_divisible_p(n.get_mpz_t(), five.get_mpz_t()))
    throw ParameterError("'" + raw + "' is not a dyadic rational");
  mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), five.get_mpz_t());
  return DyadicRational(n, -k);
}

std::vector<DyadicCube> DyadicCube::children() const {
  std::vector<DyadicCube> out;
  int n = 1 << dim;
  out.reserve(n);
  for (int mask = 0; mask < n; ++mask) {
    DyadicCube c{dim, level + 1, {}};
    for (int i = 0; i < dim; ++i) c.corner[i] = 2 * corner[i] + ((mask >> i) & 1);
    out.push_back(c);
  }
  return out;
}

DyadicCube DyadicCube::parent() const {
  DyadicCube p{dim, level - 1, {}};
  for (int i = 0; i < dim; ++i) p.corner[i] = corner[i] >> 1;
  return p;
}

bool DyadicCube::contains(const DyadicCube& o) const {
  if (o.dim != dim || o.level < level) return false;
  int k = o.level - level;
  for (int i = 0; i < dim; ++i)
    if ((o.corner[i] >> k) != corner[i]) return false;
  return true;
}

std::vector<DyadicCube> children(const DyadicCube& q) { return q.children(); }

bool cell_less(const Cell& a, const Cell& b, int dim) {
  for (int i = 0; i < dim; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

GridSet::GridSet(int dim, int resolution, std::vector<Cell> cells)
    : dim_(dim), res_(resolution), cells_(std::move(cells)), anchor_(dim, Dyadic(0)) {
  if (dim < 1 || dim > kMaxDim) throw ParameterError("dimension must be 1..3");
  if (resolution < 0 || resolution > 62) throw SizeError("resolution out of range 0..62");
  const std::int64_t n = std::int64_t(1) << resolution;
  for (auto& c : cells_) {
    for (int i = 0; i < dim; ++i)
      if (c[i] < 0 || c[i] >= n) throw ParameterError("cell outside [0, 2^L)^d");
    for (int i = dim; i < kMaxDim; ++i) c[i] = 0;
  }
  std::sort(cells_.begin(), cells_.end(), [dim](const Cell& a, const Cell& b) { return cell_less(a, b, dim); });
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

GridSet GridSet::full(int dim, int resolution) {
  const std::int64_t n = std::int64_t(1) << resolution;
  std::vector<Cell> cells;
  Cell c{};
  if (dim == 1) {
    for (c[0] = 0; c[0] < n; ++c[0]) cells.push_back(c);
  } else if (dim == 2) {
    for (c[0] = 0; c[0] < n; ++c[0])
      for (c[1] = 0; c[1] < n; ++c[1]) cells.push_back(c);
  } else {
    for (c[0] = 0; c[0] < n; ++c[0])
      for (c[1] = 0; c[1] < n; ++c[1])
        for (c[2] = 0; c[2] < n; ++c[2]) cells.push_back(c);
  }
  return GridSet(dim, resolution, std::move(cells));
}

bool GridSet::contains_cell(const Cell& c) const {
  Cell k{};
  for (int i = 0; i < dim_; ++i) k[i] = c[i];
  int d = dim_;
  return std::binary_search(cells_.begin(), cells_.end(), k,
                            [d](const Cell& a, const Cell& b) { return cell_less(a, b, d); });
}

bool GridSet::contains_point(const std::vector<Dyadic>& x) const {
  // closed cells: a coordinate on a cell boundary can belong to two cells
  std::vector<std::vector<std::int64_t>> cand(dim_);
  const std::int64_t n = std::int64_t(1) << res_;
  for (int i = 0; i < dim_; ++i) {
    Dyadic y = x[i].shifted(res_);
    mpz_class f = y.floor();
    if (f < -1 || f > n) return false;
    long fi = f.get_si();
    if (fi >= 0 && fi < n) cand[i].push_back(fi);
    if (y.is_integer() && fi - 1 >= 0 && fi - 1 < n) cand[i].push_back(fi - 1);
    if (cand[i].empty()) return false;
  }
  Cell c{};
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == dim_) return contains_cell(c);
    for (auto v : cand[i]) {
      c[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

GridSet GridSet::with_placement(const Dyadic& scale, std::vector<Dyadic> anchor) const {
  GridSet g = *this;
  g.scale_ = scale;
  anchor.resize(dim_, Dyadic(0));
  g.anchor_ = std::move(anchor);
  return g;
}

GridSet GridSet::affine(const Dyadic& u, const std::vector<Dyadic>& v) const {
  if (!u.is_power_of_two()) throw ParameterError("affine scale must be a power of two");
  std::vector<Dyadic> a(dim_);
  for (int i = 0; i < dim_; ++i) a[i] = u * anchor_[i] + (i < static_cast<int>(v.size()) ? v[i] : Dyadic(0));
  return with_placement(u * scale_, a);
}

GridSet GridSet::refined(int new_resolution) const {
  if (new_resolution < res_) throw ParameterError("refined() cannot coarsen");
  int k = new_resolution - res_;
  if (new_resolution > 62) throw SizeError("refined resolution exceeds 62");
  const std::int64_t m = std::int64_t(1) << k;
  std::size_t per = std::size_t(1) << (k * dim_);
  if (cells_.size() * per > (std::size_t(1) << 28)) throw SizeError("refinement exceeds 2^28 cells");
  std::vector<Cell> out;
  out.reserve(cells_.size() * per);
  for (const auto& c : cells_) {
    for (std::size_t j = 0; j < per; ++j) {
      Cell n{};
      std::size_t r = j;
      for (int i = 0; i < dim_; ++i) {
        n[i] = c[i] * m + static_cast<std::int64_t>(r % m);
        r /= m;
      }
      out.push_back(n);
    }
  }
  GridSet g(dim_, new_resolution, std::move(out));
  return g.with_placement(scale_, anchor_);
}

bool operator==(const GridSet& a, const GridSet& b) {
  return a.dim_ == b.dim_ && a.res_ == b.res_ && a.cells_ == b.cells_ && a.scale_ == b.scale_ &&
         a.anchor_ == b.anchor_;
}

Dyadic grid_volume(const GridSet& e) {
  Dyadic v(mpz_class(static_cast<unsigned long>(e.size())), -static_cast<long>(e.resolution()) * e.dim());
  Dyadic s = e.scale();
  for (int i = 0; i < e.dim(); ++i) v *= s;
  return v;
}

GridSet restrict(const GridSet& e, const DyadicCube& q) {
  if (q.level > e.resolution()) throw ParameterError("restrict: cube finer than the grid resolution");
  int k = e.resolution() - q.level;
  std::vector<Cell> out;
  for (const auto& c : e.cells()) {
    bool in = true;
    for (int i = 0; i < e.dim() && in; ++i) in = (c[i] >> k) == q.corner[i];
    if (!in) continue;
    Cell n{};
    for (int i = 0; i < e.dim(); ++i) n[i] = c[i] - (q.corner[i] << k);
    out.push_back(n);
  }
  return GridSet(e.dim(), k, std::move(out));
}

namespace {

// Rows of a 2D/3D grid set keyed by the trailing coordinates, each a bitset over the first coordinate.
struct RowBits {
  std::vector<std::array<std::int64_t, 2>> keys;
  std::vector<std::vector<std::uint64_t>> bits;
};

RowBits rows_of(const GridSet& g, bool reverse) {
  RowBits r;
  const std::int64_t n = std::int64_t(1) << g.resolution();
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  std::map<std::array<std::int64_t, 2>, std::size_t> index;
  for (const auto& c : g.cells()) {
    std::array<std::int64_t, 2> key{g.dim() > 1 ? c[1] : 0, g.dim() > 2 ? c[2] : 0};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, r.keys.size()).first;
      r.keys.push_back(key);
      r.bits.emplace_back(words, 0);
    }
    std::int64_t x = reverse ? n - 1 - c[0] : c[0];
    r.bits[it->second][x >> 6] |= std::uint64_t(1) << (x & 63);
  }
  return r;
}

// dst |= src << shift (bit vectors, dst long enough)
void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::int64_t shift) {
  std::size_t ws = static_cast<std::size_t>(shift >> 6);
  int bs = static_cast<int>(shift & 63);
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::uint64_t w = src[i];
    if (!w) continue;
    dst[i + ws] |= w << bs;
    if (bs && i + ws + 1 < dst.size()) dst[i + ws + 1] |= w >> (64 - bs);
  }
}

}  // namespace

std::vector<Cell> difference_vectors(const GridSet& e, const GridSet& f) {
  if (e.dim() != f.dim()) throw ParameterError("difference_vectors: dimension mismatch");
  if (e.resolution() != f.resolution())
    throw ParameterError("difference_vectors: resolution mismatch, refine the coarser set first");
  const int d = e.dim();
  const std::int64_t n = std::int64_t(1) << e.resolution();
  if (n > (std::int64_t(1) << 20)) throw SizeError("difference_vectors: resolution too large for bitset rows");
  RowBits re = rows_of(e, false), rf = rows_of(f, true);
  const std::size_t out_words = static_cast<std::size_t>((2 * n + 63) / 64) + 1;
  std::map<std::array<std::int64_t, 2>, std::vector<std::uint64_t>> acc;
  for (std::size_t a = 0; a < re.keys.size(); ++a) {
    // positions of the first coordinate inside row a of E
    std::vector<std::int64_t> xs;
    for (std::size_t w = 0; w < re.bits[a].size(); ++w) {
      std::uint64_t v = re.bits[a][w];
      while (v) {
        int b = __builtin_ctzll(v);
        xs.push_back(static_cast<std::int64_t>(w * 64 + b));
        v &= v - 1;
      }
    }
    for (std::size_t b = 0; b < rf.keys.size(); ++b) {
      std::array<std::int64_t, 2> key{re.keys[a][0] - rf.keys[b][0], re.keys[a][1] - rf.keys[b][1]};
      auto& dst = acc[key];
      if (dst.empty()) dst.assign(out_words, 0);
      for (auto x : xs) or_shifted(dst, rf.bits[b], x);
    }
  }
  std::vector<Cell> out;
  for (const auto& [key, bits] : acc) {
    for (std::size_t w = 0; w < bits.size(); ++w) {
      std::uint64_t v = bits[w];
      while (v) {
        int b = __builtin_ctzll(v);
        std::int64_t pos = static_cast<std::int64_t>(w * 64 + b);
        Cell c{};
        c[0] = pos - (n - 1);
        if (d > 1) c[1] = key[0];
        if (d > 2) c[2] = key[1];
        out.push_back(c);
        v &= v - 1;
      }
    }
  }
  std::sort(out.begin(), out.end(), [d](const Cell& a, const Cell& b) { return cell_less(a, b, d); });
  return out;
}

}  // namespace steinhaus
