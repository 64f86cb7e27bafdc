#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steinhaus/certified.hpp"
#include "steinhaus/dyadic.hpp"

namespace steinhaus {

// Positive rational exponent s = num/den in lowest terms.
struct Rational {
  long num = 1;
  long den = 1;
  Rational() = default;
  Rational(long n, long d);
  static Rational parse(const std::string& s);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }
};

// Value sum_k c_k 2^{-k s}. With s = u/v and y = 2^{-1/v} every such value has the unique
// normal form sum_{j<v} a_j y^j with dyadic a_j (x^v - 2 is irreducible), which makes equality exact.
class ContentValue {
 public:
  ContentValue() = default;
  explicit ContentValue(Rational s) : s_(s) {}
  static ContentValue cube(Rational s, long level, long count = 1);

  const Rational& s() const { return s_; }
  const std::map<long, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ContentValue& operator+=(const ContentValue& o);
  friend ContentValue operator+(ContentValue a, const ContentValue& b) { return a += b; }
  // multiply by 2^{shift s}: term k moves to k - shift
  ContentValue scaled_up(long shift) const;
  ContentValue times(const mpz_class& k) const;

  std::vector<Dyadic> normal_form() const;
  MpInterval enclose(mpfr_prec_t prec = 128) const;
  double approx() const;
  std::string symbolic() const;

  friend int compare(const ContentValue& a, const ContentValue& b);
  friend bool operator==(const ContentValue& a, const ContentValue& b) { return compare(a, b) == 0; }

 private:
  Rational s_;
  std::map<long, mpz_class> terms_;
};

// Evaluates sum_j a_j y^j (y = 2^{-1/v}) as an interval.
MpInterval enclose_normal_form(const std::vector<Dyadic>& a, long v, mpfr_prec_t prec);
// Sign of sum_j a_j y^j, refining precision; exact 0 only when every a_j is zero.
int sign_normal_form(const std::vector<Dyadic>& a, long v);

ContentValue content(const GridSet& e, Rational s, const DyadicCube& root);
ContentValue content(const GridSet& e, Rational s);

// Exhaustive minimum over all dyadic antichain covers; d = 2 and resolution <= 3 only.
ContentValue brute_force_content(const GridSet& e, Rational s);

struct DensityCube {
  DyadicCube cube;
  ContentValue content;
  double density_lo = 0, density_hi = 0;
  bool ambiguous = false;
};

std::vector<DensityCube> high_density_cubes(const GridSet& e, Rational s, double rho);
// Classifies density = content * 2^{level s} against 1 - rho; nullopt when below.
std::optional<DensityCube> classify_density(const DyadicCube& q, const ContentValue& content, double rho);

struct BoardmanResult {
  double c_rho = 0;
  bool holds = false;
  long cells_checked = 0;
};

BoardmanResult boardman_difference_check(const GridSet& e, const GridSet& f, double rho);

}  // namespace steinhaus
