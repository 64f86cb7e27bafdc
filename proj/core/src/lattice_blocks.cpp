#include "steinhaus/lattice_blocks.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

using i128 = __int128;

struct Placed {
  int dim;
  std::vector<Dyadic> offset;
  Dyadic pitch, side;
  mpz_class q;
};

Placed placed(const BlockPlacement& b) {
  const auto& l = std::get<LatticeBody>(b.body);
  Placed p{l.dim, b.offset, b.scale * l.pitch(), b.scale * l.side(), mpz_class(1)};
  p.q <<= l.log2q;
  return p;
}

bool box_hits(const std::vector<Dyadic>& c, const Dyadic& ha, const Dyadic& hb, const Dyadic& t2) {
  std::vector<Dyadic> lo(c.size()), hi(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) lo[i] = c[i] - ha, hi[i] = c[i] + hb;
  NormRange r = box_norm_range(lo, hi);
  return r.lo_sq <= t2 && t2 <= r.hi_sq;
}

std::string describe(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::string s = "cells a=(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].get_str();
  s += ") b=(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + b[i].get_str();
  return s + ")";
}

class Mp {
 public:
  explicit Mp(mpfr_prec_t p = 256) { mpfr_init2(v, p); }
  Mp(const Mp& o) {
    mpfr_init2(v, mpfr_get_prec(o.v));
    mpfr_set(v, o.v, MPFR_RNDN);
  }
  Mp& operator=(const Mp& o) {
    mpfr_set(v, o.v, MPFR_RNDN);
    return *this;
  }
  ~Mp() { mpfr_clear(v); }
  mpfr_t v;
};

Mp to_mp(const Dyadic& x) {
  Mp r;
  mpfr_set_z_2exp(r.v, x.mantissa().get_mpz_t(), x.exponent(), MPFR_RNDN);
  return r;
}

// Search cells b of block B near the sphere |c(a, b)| = t with a fixed cell of A.
bool search_fixed(const Placed& A, const std::vector<mpz_class>& a, const Placed& B, const Dyadic& t, std::string& detail) {
  const int d = A.dim;
  const Dyadic t2 = t.square();
  std::vector<Dyadic> base(d);
  Dyadic half = (B.side - A.side).shifted(-1);
  for (int i = 0; i < d; ++i) base[i] = B.offset[i] - A.offset[i] - A.pitch * Dyadic(a[i], 0);
  // W = (base + half) / pitch_B, T = t / pitch_B in MPFR
  Mp pb = to_mp(B.pitch);
  std::vector<Mp> W(d);
  for (int i = 0; i < d; ++i) {
    W[i] = to_mp(base[i] + half);
    mpfr_div(W[i].v, W[i].v, pb.v, MPFR_RNDN);
  }
  Mp T = to_mp(t);
  mpfr_div(T.v, T.v, pb.v, MPFR_RNDN);
  const mpz_class qmax = B.q - 1;
  auto clip = [&](mpz_class v) {
    if (v < 0) v = 0;
    if (v > qmax) v = qmax;
    return v;
  };
  auto check = [&](const std::vector<mpz_class>& b) {
    std::vector<Dyadic> c(d);
    for (int i = 0; i < d; ++i) c[i] = base[i] + B.pitch * Dyadic(b[i], 0);
    if (box_hits(c, A.side, B.side, t2)) {
      detail = describe(a, b);
      return true;
    }
    return false;
  };
  // candidate values of one coordinate: around -W_i + f * radius
  auto centres = [&](const Mp& w, const Mp& radius, int K, std::vector<mpz_class>& out) {
    static const double fr[] = {-1, -0.875, -0.75, -0.7071067811865476, -0.625, -0.5, -0.375, -0.25, -0.125, 0,
                                0.125, 0.25, 0.375, 0.5, 0.625, 0.7071067811865476, 0.75, 0.875, 1};
    Mp x, y;
    mpz_class z;
    std::vector<mpz_class> c0;
    for (double f : fr) {
      mpfr_mul_d(x.v, radius.v, f, MPFR_RNDN);
      mpfr_sub(x.v, x.v, w.v, MPFR_RNDN);
      mpfr_get_z(z.get_mpz_t(), x.v, MPFR_RNDD);
      c0.push_back(z);
    }
    c0.push_back(0);
    c0.push_back(qmax);
    for (const auto& c : c0)
      for (int k = -K; k <= K; ++k) out.push_back(clip(c + k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  };
  // solve the last coordinate given the others
  auto solve_last = [&](std::vector<mpz_class>& b, const Mp& rem2) {
    if (mpfr_sgn(rem2.v) < 0) return false;
    Mp s, x;
    mpz_class z;
    mpfr_sqrt(s.v, rem2.v, MPFR_RNDN);
    for (int sg : {1, -1}) {
      if (sg > 0) mpfr_sub(x.v, s.v, W[d - 1].v, MPFR_RNDN);
      else {
        mpfr_neg(x.v, s.v, MPFR_RNDN);
        mpfr_sub(x.v, x.v, W[d - 1].v, MPFR_RNDN);
      }
      mpfr_get_z(z.get_mpz_t(), x.v, MPFR_RNDD);
      for (int k = -1; k <= 2; ++k) {
        b[d - 1] = clip(z + k);
        if (check(b)) return true;
      }
    }
    return false;
  };
  std::vector<mpz_class> c1;
  centres(W[0], T, d == 2 ? 48 : 12, c1);
  std::vector<mpz_class> b(d);
  Mp T2;
  mpfr_sqr(T2.v, T.v, MPFR_RNDN);
  for (const auto& v1 : c1) {
    b[0] = v1;
    Mp x, rem;
    mpfr_add_z(x.v, W[0].v, v1.get_mpz_t(), MPFR_RNDN);
    mpfr_sqr(x.v, x.v, MPFR_RNDN);
    mpfr_sub(rem.v, T2.v, x.v, MPFR_RNDN);
    if (mpfr_sgn(rem.v) < 0) continue;
    if (d == 2) {
      if (solve_last(b, rem)) return true;
      continue;
    }
    Mp r1;
    mpfr_sqrt(r1.v, rem.v, MPFR_RNDN);
    std::vector<mpz_class> c2;
    centres(W[1], r1, 3, c2);
    for (const auto& v2 : c2) {
      b[1] = v2;
      Mp y, rem2;
      mpfr_add_z(y.v, W[1].v, v2.get_mpz_t(), MPFR_RNDN);
      mpfr_sqr(y.v, y.v, MPFR_RNDN);
      mpfr_sub(rem2.v, rem.v, y.v, MPFR_RNDN);
      if (solve_last(b, rem2)) return true;
    }
  }
  return false;
}

bool search(const Placed& A, const Placed& B, const Dyadic& t, std::string& detail) {
  const int d = A.dim;
  for (int corner = 0; corner < 2; ++corner) {
    std::vector<mpz_class> a(d, corner ? mpz_class(A.q - 1) : mpz_class(0));
    if (search_fixed(A, a, B, t, detail)) return true;
  }
  return false;
}

i128 isqrt_floor(i128 v) {
  if (v <= 0) return 0;
  auto s = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (s > 0 && s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

i128 isqrt_ceil(i128 v) {
  i128 s = isqrt_floor(v);
  return s * s == v ? s : s + 1;
}

i128 div_floor(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

i128 div_ceil(i128 a, i128 b) { return -div_floor(-a, b); }

// Scaled integer form; false when something is not representable below 2^61.
struct IntForm {
  std::vector<i128> O;
  i128 P, HA, HB, T2;
  i128 zmin, zmax;
};

bool to_int(const Placed& A, const Placed& B, const Dyadic& t, IntForm& f) {
  long e = 0;
  auto need = [&](const Dyadic& x) { e = std::max(e, -x.exponent()); };
  std::vector<Dyadic> o(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    o[i] = B.offset[i] - A.offset[i];
    need(o[i]);
  }
  need(A.pitch), need(A.side), need(B.side), need(t);
  const mpz_class lim = mpz_class(1) << 61;
  auto conv = [&](const Dyadic& x, i128& out) {
    mpz_class m = x.mantissa();
    m <<= (x.exponent() + e);
    if (abs(m) >= lim) return false;
    out = static_cast<i128>(m.get_si());
    return true;
  };
  f.O.resize(A.dim);
  for (int i = 0; i < A.dim; ++i)
    if (!conv(o[i], f.O[i])) return false;
  i128 T;
  if (!conv(A.pitch, f.P) || !conv(A.side, f.HA) || !conv(B.side, f.HB) || !conv(t, T)) return false;
  if (A.q >= lim || B.q >= lim) return false;
  f.zmin = -static_cast<i128>(A.q.get_si() - 1);
  f.zmax = static_cast<i128>(B.q.get_si() - 1);
  // all coordinates must stay below 2^61 in magnitude
  mpz_class span = (abs(mpz_class(A.q)) + B.q) * (A.pitch.shifted(e).floor() + 1);
  if (span >= lim) return false;
  f.T2 = T * T;
  return true;
}

void coord_range(i128 c_lo, i128 c_hi, i128 o, i128 p, i128& zl, i128& zh) {
  zl = div_ceil(c_lo - o, p);
  zh = div_floor(c_hi - o, p);
}

// Exhaustive: does some z in the index box realise T2?  Fills z on success.
bool scan(const IntForm& f, int d, std::vector<i128>& z, long long budget, bool& over_budget) {
  over_budget = false;
  auto comp = [&](i128 c, i128& lo, i128& hi) {
    i128 a = c - f.HA, b = c + f.HB;
    lo = a > 0 ? a * a : (b < 0 ? b * b : 0);
    hi = std::max(a * a, b * b);
  };
  // given the partial sums of earlier coordinates, look for the last one
  auto last = [&](i128 lo_acc, i128 hi_acc, int i) -> bool {
    i128 L = f.T2 - lo_acc, H = f.T2 - hi_acc;
    if (L < 0) return false;
    i128 s = isqrt_floor(L);
    i128 zl, zh;
    coord_range(-f.HB - s, f.HA + s, f.O[i], f.P, zl, zh);
    zl = std::max(zl, f.zmin), zh = std::min(zh, f.zmax);
    if (zl > zh) return false;
    if (H <= 0) {
      z[i] = zl;
      return true;
    }
    i128 cs = isqrt_ceil(H);
    i128 fl, fh;
    coord_range(f.HA - cs + 1, cs - f.HB - 1, f.O[i], f.P, fl, fh);
    if (fl > fh || zl < fl) {
      z[i] = zl;
      return true;
    }
    if (zh > fh) {
      z[i] = zh;
      return true;
    }
    return false;  // [zl, zh] inside the forbidden band
  };
  long long work = 0;
  if (d == 2) {
    for (i128 z0 = f.zmin; z0 <= f.zmax; ++z0) {
      i128 lo, hi;
      comp(f.O[0] + f.P * z0, lo, hi);
      z[0] = z0;
      if (last(lo, hi, 1)) return true;
    }
    return false;
  }
  for (i128 z0 = f.zmin; z0 <= f.zmax; ++z0) {
    i128 lo0, hi0;
    comp(f.O[0] + f.P * z0, lo0, hi0);
    if (lo0 > f.T2) continue;
    for (i128 z1 = f.zmin; z1 <= f.zmax; ++z1) {
      if (++work > budget) {
        over_budget = true;
        return false;
      }
      i128 lo1, hi1;
      comp(f.O[1] + f.P * z1, lo1, hi1);
      if (lo0 + lo1 > f.T2) continue;
      z[0] = z0, z[1] = z1;
      if (last(lo0 + lo1, hi0 + hi1, 2)) return true;
    }
  }
  return false;
}

}  // namespace

NormRange block_pair_range(const BlockPlacement& a, const BlockPlacement& b) {
  const std::size_t d = a.offset.size();
  Dyadic ea = a.scale * body_extent(a.body), eb = b.scale * body_extent(b.body);
  std::vector<Dyadic> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    Dyadic o = b.offset[i] - a.offset[i];
    lo[i] = o - ea;
    hi[i] = o + eb;
  }
  return box_norm_range(lo, hi);
}

PairResult lattice_pair_realizes(const BlockPlacement& a, const BlockPlacement& b, const Dyadic& t, bool same) {
  PairResult r;
  NormRange range = block_pair_range(a, b);
  Dyadic t2 = t.square();
  if (t2 < range.lo_sq || range.hi_sq < t2) {
    r.status = PairStatus::Excluded;
    r.detail = "outside bounding-box norm range";
    return r;
  }
  if (!std::holds_alternative<LatticeBody>(a.body) || !std::holds_alternative<LatticeBody>(b.body)) {
    r.detail = "not a lattice pair";
    return r;
  }
  Placed A = placed(a), B = placed(b);
  std::string detail;
  if (search(A, B, t, detail) || (!same && search(B, A, t, detail))) {
    r.status = PairStatus::Realized;
    r.detail = detail;
    return r;
  }
  if (A.pitch != B.pitch) {
    r.detail = "candidate search failed; pitches differ so no exhaustive scan";
    return r;
  }
  IntForm f;
  if (!to_int(A, B, t, f)) {
    r.detail = "candidate search failed; integer scan out of range";
    return r;
  }
  std::vector<i128> z(A.dim);
  bool over = false;
  if (scan(f, A.dim, z, 200'000'000LL, over)) {
    r.status = PairStatus::Realized;
    r.detail = "exhaustive scan hit";
    return r;
  }
  if (over) {
    r.detail = "exhaustive scan over budget";
    return r;
  }
  r.status = PairStatus::Excluded;
  r.detail = "exhaustive scan";
  return r;
}

}  // namespace steinhaus
