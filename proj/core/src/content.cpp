#include "steinhaus/content.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <set>

#include "steinhaus/errors.hpp"

namespace steinhaus {

Rational::Rational(long n, long d) {
  if (d == 0) throw ParameterError("rational with zero denominator");
  if (d < 0) n = -n, d = -d;
  long g = std::gcd(n < 0 ? -n : n, d);
  num = n / g;
  den = d / g;
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stol(s), 1);
    long k = static_cast<long>(s.size() - dot - 1);
    long den = 1;
    for (long i = 0; i < k; ++i) den *= 10;
    return Rational(std::stol(s.substr(0, dot) + s.substr(dot + 1)), den);
  }
  return Rational(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
}

ContentValue ContentValue::cube(Rational s, long level, long count) {
  ContentValue c(s);
  if (count != 0) c.terms_[level] = count;
  return c;
}

ContentValue& ContentValue::operator+=(const ContentValue& o) {
  if (terms_.empty()) s_ = o.s_;
  for (const auto& [k, c] : o.terms_) {
    auto& t = terms_[k];
    t += c;
    if (t == 0) terms_.erase(k);
  }
  return *this;
}

ContentValue ContentValue::scaled_up(long shift) const {
  ContentValue r(s_);
  for (const auto& [k, c] : terms_) r.terms_[k - shift] = c;
  return r;
}

ContentValue ContentValue::times(const mpz_class& k) const {
  ContentValue r(s_);
  if (k == 0) return r;
  for (const auto& [lvl, c] : terms_) r.terms_[lvl] = c * k;
  return r;
}

namespace {

long floordiv(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

std::vector<Dyadic> ContentValue::normal_form() const {
  // 2^{-k u/v} = 2^{-floor(ku/v)} * y^{ku mod v}
  const long u = s_.num, v = s_.den;
  std::vector<Dyadic> a(v, Dyadic(0));
  for (const auto& [k, c] : terms_) {
    long e = k * u;
    long q = floordiv(e, v);
    long r = e - q * v;
    a[r] += Dyadic(c, -q);
  }
  return a;
}

MpInterval enclose_normal_form(const std::vector<Dyadic>& a, long v, mpfr_prec_t prec) {
  MpInterval sum(prec);
  MpInterval y = MpInterval::pow2_frac(-1, v, prec);
  MpInterval yj(Dyadic(1), prec);
  for (long j = 0; j < static_cast<long>(a.size()); ++j) {
    if (!a[j].is_zero()) sum = sum + MpInterval(a[j], prec) * yj;
    yj = yj * y;
  }
  return sum;
}

int sign_normal_form(const std::vector<Dyadic>& a, long v) {
  bool all_zero = std::all_of(a.begin(), a.end(), [](const Dyadic& x) { return x.is_zero(); });
  if (all_zero) return 0;
  for (mpfr_prec_t p = 96; p <= (1 << 16); p *= 2) {
    int s = enclose_normal_form(a, v, p).sign();
    if (s != 0) return s;
  }
  throw Error(ErrorKind::Indeterminate, "sign of a nonzero content value unresolved at 65536 bits");
}

MpInterval ContentValue::enclose(mpfr_prec_t prec) const { return enclose_normal_form(normal_form(), s_.den, prec); }

double ContentValue::approx() const { return enclose(80).mid_d(); }

std::string ContentValue::symbolic() const {
  if (terms_.empty()) return "0";
  std::string out;
  // terms listed from the coarsest level
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + "*2^(-" + std::to_string(k) + "*" + s_.str() + ")";
  }
  return out;
}

int compare(const ContentValue& a, const ContentValue& b) {
  if (a.terms_.empty() && b.terms_.empty()) return 0;
  Rational s = a.terms_.empty() ? b.s_ : a.s_;
  if (!(a.terms_.empty() || b.terms_.empty()) && !(a.s_ == b.s_))
    throw ParameterError("comparing content values with different exponents");
  // fast path in long double with a generous relative margin
  auto eval = [&](const ContentValue& x) {
    long double v = 0;
    for (const auto& [k, c] : x.terms_) v += c.get_d() * std::pow(2.0L, -static_cast<long double>(k) * s.num / s.den);
    return v;
  };
  long double va = eval(a), vb = eval(b);
  long double scale = std::fabs(va) + std::fabs(vb);
  if (std::fabs(va - vb) > 1e-12L * scale && std::isfinite(static_cast<double>(scale))) return va < vb ? -1 : 1;
  auto na = a.normal_form(), nb = b.normal_form();
  na.resize(std::max(na.size(), nb.size()), Dyadic(0));
  for (std::size_t j = 0; j < nb.size(); ++j) na[j] -= nb[j];
  return sign_normal_form(na, s.den);
}

namespace {

void check_exponent(const GridSet& e, Rational s) {
  if (s.num <= 0) throw ParameterError("content: s must be positive");
  if (s.num > static_cast<long>(e.dim()) * s.den) throw ParameterError("content: s exceeds the dimension");
}

struct Node {
  Cell corner;
  ContentValue value;
};

// Bottom-up DP over occupied cubes; levels[k] holds occupied level-k cubes (k = root..L).
std::vector<std::vector<Node>> dp_levels(const GridSet& e, Rational s, int root_level) {
  const int L = e.resolution(), d = e.dim();
  std::vector<std::vector<Node>> levels(L + 1);
  for (const auto& c : e.cells()) levels[L].push_back({c, ContentValue::cube(s, L)});
  for (int k = L - 1; k >= root_level; --k) {
    auto& up = levels[k];
    const auto& down = levels[k + 1];
    std::vector<std::pair<Cell, std::size_t>> keyed;
    keyed.reserve(down.size());
    for (std::size_t i = 0; i < down.size(); ++i) {
      Cell p{};
      for (int j = 0; j < d; ++j) p[j] = down[i].corner[j] >> 1;
      keyed.emplace_back(p, i);
    }
    std::sort(keyed.begin(), keyed.end(), [d](const auto& x, const auto& y) {
      if (cell_less(x.first, y.first, d)) return true;
      if (cell_less(y.first, x.first, d)) return false;
      return x.second < y.second;
    });
    for (std::size_t i = 0; i < keyed.size();) {
      std::size_t j = i;
      ContentValue sum(s);
      while (j < keyed.size() && keyed[j].first == keyed[i].first) sum += down[keyed[j++].second].value;
      ContentValue self = ContentValue::cube(s, k);
      up.push_back({keyed[i].first, compare(self, sum) <= 0 ? self : sum});
      i = j;
    }
  }
  return levels;
}

}  // namespace

ContentValue content(const GridSet& e, Rational s, const DyadicCube& root) {
  check_exponent(e, s);
  if (root.level > e.resolution()) throw ParameterError("content: root finer than the grid");
  for (const auto& c : e.cells()) {
    DyadicCube cc{e.dim(), e.resolution(), c};
    if (!root.contains(cc)) throw ParameterError("content: root does not contain the set");
  }
  if (e.empty()) return ContentValue(s);
  auto levels = dp_levels(e, s, root.level);
  return levels[root.level].front().value;
}

ContentValue content(const GridSet& e, Rational s) { return content(e, s, DyadicCube{e.dim(), 0, {}}); }

namespace {

using CountVec = std::vector<long>;  // number of cover cubes per level

std::set<CountVec> covers(const GridSet& e, const DyadicCube& q, int L, std::size_t& budget) {
  bool any = false;
  for (const auto& c : e.cells()) {
    if (q.contains(DyadicCube{e.dim(), L, c})) {
      any = true;
      break;
    }
  }
  std::set<CountVec> out;
  if (!any) {
    out.insert(CountVec(L + 1, 0));
    return out;
  }
  CountVec self(L + 1, 0);
  self[q.level] = 1;
  out.insert(self);
  if (q.level == L) return out;
  std::set<CountVec> acc{CountVec(L + 1, 0)};
  for (const auto& ch : q.children()) {
    auto sub = covers(e, ch, L, budget);
    std::set<CountVec> next;
    for (const auto& a : acc)
      for (const auto& b : sub) {
        CountVec c(L + 1);
        for (int i = 0; i <= L; ++i) c[i] = a[i] + b[i];
        next.insert(c);
        if (budget == 0) throw SizeError("brute_force_content: enumeration budget exhausted");
        --budget;
      }
    acc.swap(next);
  }
  out.insert(acc.begin(), acc.end());
  return out;
}

}  // namespace

ContentValue brute_force_content(const GridSet& e, Rational s) {
  check_exponent(e, s);
  if (e.dim() != 2 || e.resolution() > 3)
    throw SizeError("brute_force_content: instance too large (needs d = 2, L <= 3; got d = " +
                    std::to_string(e.dim()) + ", L = " + std::to_string(e.resolution()) + ")");
  const int L = e.resolution();
  std::size_t budget = 50'000'000;
  auto all = covers(e, DyadicCube{2, 0, {}}, L, budget);
  bool first = true;
  ContentValue best(s);
  for (const auto& cv : all) {
    ContentValue v(s);
    for (int k = 0; k <= L; ++k)
      if (cv[k]) v += ContentValue::cube(s, k, cv[k]);
    if (first || compare(v, best) < 0) best = v, first = false;
  }
  return best;
}

std::vector<DensityCube> high_density_cubes(const GridSet& e, Rational s, double rho) {
  check_exponent(e, s);
  if (!(rho > 0 && rho < 1)) throw ParameterError("high_density_cubes: rho must lie in (0,1)");
  std::vector<DensityCube> out;
  if (e.empty()) return out;
  auto levels = dp_levels(e, s, 0);
  for (int k = 0; k <= e.resolution(); ++k)
    for (const auto& n : levels[k])
      if (auto dc = classify_density(DyadicCube{e.dim(), k, n.corner}, n.value, rho)) out.push_back(*dc);
  return out;
}

std::optional<DensityCube> classify_density(const DyadicCube& q, const ContentValue& content, double rho) {
  const Rational s = content.s();
  const Dyadic threshold = Dyadic(1) - Dyadic::from_double(rho);
  const Dyadic tol = Dyadic::pow2(-80);
  ContentValue dens = content.scaled_up(q.level);
  auto nf = dens.normal_form();
  if (nf.empty()) nf.assign(s.den, Dyadic(0));
  nf[0] -= threshold;
  int sg = sign_normal_form(nf, s.den);
  MpInterval di = enclose_normal_form(nf, s.den, 256);
  bool near = cmp(Dyadic::from_double(std::fabs(di.lo_d())), tol) < 0 &&
              cmp(Dyadic::from_double(std::fabs(di.hi_d())), tol) < 0;
  if (sg <= 0 && !near) return std::nullopt;
  MpInterval dv = dens.enclose(128);
  return DensityCube{q, content, dv.lo_d(), dv.hi_d(), sg == 0 || near};
}

BoardmanResult boardman_difference_check(const GridSet& e, const GridSet& f, double rho) {
  if (!(rho > 0) || rho >= 0.5) throw ParameterError("boardman_difference_check: rho must lie in (0, 1/2)");
  if (e.dim() != f.dim()) throw ParameterError("boardman_difference_check: dimension mismatch");
  const Dyadic floor_vol = Dyadic(1) - Dyadic::from_double(rho);
  if (grid_volume(e.with_placement(1, {})) < floor_vol || grid_volume(f.with_placement(1, {})) < floor_vol)
    throw ParameterError("boardman_difference_check: volume below 1 - rho");
  const int d = e.dim();
  BoardmanResult r;
  // strict inequality (1 + c)^d < 2(1 - rho)
  r.c_rho = std::nextafter(std::pow(2.0 * (1.0 - rho), 1.0 / d) - 1.0, 0.0);
  GridSet a = e, b = f;
  int L = std::max(a.resolution(), b.resolution());
  if (a.resolution() < L) a = a.refined(L);
  if (b.resolution() < L) b = b.refined(L);
  auto diff = difference_vectors(a, b);
  auto has = [&](const Cell& z) {
    return std::binary_search(diff.begin(), diff.end(), z, [d](const Cell& x, const Cell& y) { return cell_less(x, y, d); });
  };
  // [0,c]^d is covered iff every unit cell [k,k+1]^d (units of h) meeting it has a corner in E - F
  const double ch = std::ldexp(r.c_rho, L);
  const long kmax = static_cast<long>(std::ceil(ch)) - 1;
  r.holds = true;
  Cell k{};
  std::function<void(int)> rec = [&](int i) {
    if (!r.holds) return;
    if (i == d) {
      ++r.cells_checked;
      bool covered = false;
      for (int mask = 0; mask < (1 << d) && !covered; ++mask) {
        Cell z{};
        for (int j = 0; j < d; ++j) z[j] = k[j] + ((mask >> j) & 1);
        covered = has(z);
      }
      if (!covered) r.holds = false;
      return;
    }
    for (long v = 0; v <= std::max(kmax, 0L); ++v) {
      k[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return r;
}

}  // namespace steinhaus
