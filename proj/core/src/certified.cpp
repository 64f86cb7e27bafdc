#include "steinhaus/certified.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace steinhaus {

namespace {

void set_dyadic(mpfr_t r, const Dyadic& x, mpfr_rnd_t rnd) {
  mpfr_set_z_2exp(r, x.mantissa().get_mpz_t(), x.exponent(), rnd);
}

}  // namespace

MpInterval::MpInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

MpInterval::MpInterval(const Dyadic& x, mpfr_prec_t prec) : MpInterval(prec) {
  set_dyadic(lo_, x, MPFR_RNDD);
  set_dyadic(hi_, x, MPFR_RNDU);
}

MpInterval::MpInterval(double x, mpfr_prec_t prec) : MpInterval(prec) {
  mpfr_set_d(lo_, x, MPFR_RNDD);
  mpfr_set_d(hi_, x, MPFR_RNDU);
}

MpInterval::MpInterval(const MpInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

MpInterval& MpInterval::operator=(const MpInterval& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
  }
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

MpInterval::~MpInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double MpInterval::mid_d() const { return 0.5 * (lo_d() + hi_d()); }

int MpInterval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

double MpInterval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return r;
}

MpInterval MpInterval::operator+(const MpInterval& o) const {
  MpInterval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

MpInterval MpInterval::operator-(const MpInterval& o) const {
  MpInterval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

MpInterval MpInterval::operator*(const MpInterval& o) const {
  mpfr_prec_t p = std::max(prec_, o.prec_);
  MpInterval r(p);
  mpfr_t c[4], t;
  for (auto& x : c) mpfr_init2(x, p);
  mpfr_init2(t, p);
  // lower candidates
  mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
  mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
  mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
  mpfr_set(t, c[0], MPFR_RNDD);
  for (int i = 1; i < 4; ++i) mpfr_min(t, t, c[i], MPFR_RNDD);
  mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDU);
  mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDU);
  mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDU);
  mpfr_set(t, c[0], MPFR_RNDU);
  for (int i = 1; i < 4; ++i) mpfr_max(t, t, c[i], MPFR_RNDU);
  mpfr_set(r.hi_, t, MPFR_RNDU);
  for (auto& x : c) mpfr_clear(x);
  mpfr_clear(t);
  return r;
}

MpInterval MpInterval::sqrt() const {
  MpInterval r(prec_);
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  if (mpfr_sgn(hi_) <= 0)
    mpfr_set_zero(r.hi_, 1);
  else
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

MpInterval MpInterval::pow2_frac(long num, long den, mpfr_prec_t prec) {
  MpInterval r(prec);
  mpfr_t e;
  mpfr_init2(e, prec + 64);
  // exponent num/den is computed with an enclosure too
  mpfr_set_si(e, num, MPFR_RNDN);
  mpfr_div_si(e, e, den, MPFR_RNDD);
  mpfr_ui_pow(r.lo_, 2, e, MPFR_RNDD);
  mpfr_set_si(e, num, MPFR_RNDN);
  mpfr_div_si(e, e, den, MPFR_RNDU);
  mpfr_ui_pow(r.hi_, 2, e, MPFR_RNDU);
  mpfr_clear(e);
  return r;
}

MpInterval MpInterval::pi(mpfr_prec_t prec) {
  MpInterval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

int sign_sqrt_diff(const Dyadic& a, const Dyadic& b, const Dyadic& c) {
  if (c.is_zero()) return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0);
  for (mpfr_prec_t p = 128; p <= 8192; p *= 2) {
    MpInterval v = MpInterval(a, p).sqrt() - MpInterval(b, p).sqrt() - MpInterval(c, p);
    int s = v.sign();
    if (s != 0) return s;
  }
  // unresolved at 8192 bits: reported as a tie
  return 0;
}

std::string format_interval(const MpInterval& x, int digits) {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDe, %.*RUe]", digits, x.lo(), digits, x.hi());
  return buf;
}

}  // namespace steinhaus
