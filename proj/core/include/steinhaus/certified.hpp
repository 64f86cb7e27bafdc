#pragma once

#include <mpfr.h>

#include <string>

#include "steinhaus/dyadic.hpp"

namespace steinhaus {

// Closed interval [lo, hi] with MPFR endpoints; every operation rounds outward.
class MpInterval {
 public:
  explicit MpInterval(mpfr_prec_t prec = 128);
  MpInterval(const Dyadic& x, mpfr_prec_t prec);
  MpInterval(double x, mpfr_prec_t prec);
  MpInterval(const MpInterval& o);
  MpInterval& operator=(const MpInterval& o);
  ~MpInterval();

  mpfr_prec_t prec() const { return prec_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const;
  // -1 / +1 when the interval excludes 0 strictly, 0 otherwise.
  int sign() const;
  double width() const;

  MpInterval operator+(const MpInterval& o) const;
  MpInterval operator-(const MpInterval& o) const;
  MpInterval operator*(const MpInterval& o) const;
  MpInterval sqrt() const;  // lo clamped at 0
  // 2^{-num/den} for integers
  static MpInterval pow2_frac(long num, long den, mpfr_prec_t prec);
  static MpInterval pi(mpfr_prec_t prec);

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

// Sign of sqrt(a) - sqrt(b) - c for dyadic a, b >= 0 and dyadic c. Returns 0 only on exact ties
// (decided symbolically when c == 0), refining precision until the sign is known.
int sign_sqrt_diff(const Dyadic& a, const Dyadic& b, const Dyadic& c);

// Certified decimal rendering helper.
std::string format_interval(const MpInterval& x, int digits = 20);

}  // namespace steinhaus
