#include "verify_suite.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "steinhaus/asymptotics.hpp"
#include "steinhaus/constructions.hpp"
#include "steinhaus/content.hpp"
#include "steinhaus/distance.hpp"
#include "steinhaus/energy.hpp"
#include "steinhaus/lambda.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/numtheory.hpp"
#include "steinhaus/params.hpp"
#include "steinhaus/quadrature.hpp"
#include "steinhaus/spectral.hpp"

namespace steinhaus::suite {

namespace {

struct Spec {
  const char* name;
  double budget;
};

const Spec kSpecs[] = {
    {"content identities", 5},
    {"content DP vs brute force", 60},
    {"distance-set exactness", 30},
    {"block lemma shape", 120},
    {"number theory scans", 30},
    {"Lambda cross-validation (d=3)", 120},
    {"F_mu floor", 60},
    {"spectral-gap construction audit", 180},
    {"energy two-way agreement", 180},
    {"growth exponent", 300},
    {"distance-witness pipeline", 600},
    {"coverage", 180},
    {"Boardman difference property", 60},
};

class Log {
 public:
  explicit Log(CriterionResult& r) : r_(r) {}
  bool check(bool ok, const std::string& what) {
    r_.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    all_ = all_ && ok;
    return ok;
  }
  void note(const std::string& s) { r_.lines.push_back("     " + s); }
  bool all() const { return all_; }

 private:
  CriterionResult& r_;
  bool all_ = true;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream o;
  o.precision(prec);
  o << v;
  return o.str();
}

GridSet random_grid(std::mt19937_64& rng, int d, int L, double p) {
  std::bernoulli_distribution keep(p);
  const std::int64_t n = std::int64_t(1) << L;
  std::vector<Cell> cells;
  Cell c{};
  std::int64_t total = 1;
  for (int j = 0; j < d; ++j) total *= n;
  for (std::int64_t i = 0; i < total; ++i) {
    std::int64_t r = i;
    for (int j = 0; j < d; ++j) {
      c[j] = r % n;
      r /= n;
    }
    if (keep(rng)) cells.push_back(c);
  }
  if (cells.empty()) cells.push_back(Cell{});
  return GridSet(d, L, cells);
}

// |x - y|^2 for a dyadic square inside one interval of the set
bool contains_sq(const IntervalSet& s, const Dyadic& sq) {
  for (const auto& iv : s.intervals())
    if (iv.lo_sq <= sq && sq <= iv.hi_sq) return true;
  return false;
}

void c1(Log& log) {
  const std::pair<int, Rational> cubes[] = {{2, Rational(3, 2)}, {2, Rational(4, 3)}, {3, Rational(5, 2)}};
  for (const auto& [d, s] : cubes) {
    const ContentValue v = content(GridSet::full(d, 3), s);
    log.check(v == ContentValue::cube(s, 0), "H^" + s.str() + "([0,1]^" + std::to_string(d) + ") = 1: " + v.symbolic());
  }
  const Rational s(4, 3);
  const GridSet f = building_block(4, Rational(3, 2), 2);
  log.check(content(f, s) == ContentValue::cube(s, 0), "H^4/3(F[4;3/2]) = 1");
  // F cap Q for every dyadic Q with side 2^k / 4, k = 0, 1, 2
  for (int level : {2, 1, 0}) {
    const long side = 1L << level;
    bool all = true;
    int count = 0;
    for (long x = 0; x < side; ++x)
      for (long y = 0; y < side; ++y) {
        DyadicCube q{2, level, {x, y, 0}};
        std::vector<Cell> in;
        const int sh = f.resolution() - level;
        for (const auto& c : f.cells())
          if ((c[0] >> sh) == x && (c[1] >> sh) == y) in.push_back(c);
        const ContentValue v = content(GridSet(2, f.resolution(), in), s, q);
        // l(Q)^2 = 2^{-2 level} = 2^{4m - 2 level} 2^{-3m s} with m = ceil(level / 2)
        const long m = (level + 1) / 2;
        const ContentValue want = ContentValue::cube(s, 3 * m, 1L << (4 * m - 2 * level));
        all = all && v == want;
        ++count;
      }
    log.check(all, "H^4/3(F cap Q) = l(Q)^2 on all " + std::to_string(count) + " cubes of side 2^-" +
                       std::to_string(level));
  }
}

void c2(Log& log, std::mt19937_64& rng) {
  const Rational exps[] = {Rational(1, 1), Rational(4, 3), Rational(3, 2), Rational(5, 3), Rational(7, 4)};
  int agree = 0;
  std::uniform_int_distribution<int> lev(1, 3), ex(0, 4);
  std::uniform_real_distribution<double> dens(0.15, 0.9);
  for (int i = 0; i < 100; ++i) {
    const GridSet g = random_grid(rng, 2, lev(rng), dens(rng));
    const Rational s = exps[ex(rng)];
    if (content(g, s) == brute_force_content(g, s)) ++agree;
  }
  log.check(agree == 100, std::to_string(agree) + "/100 random sets: DP content equals exhaustive minimum");
}

void c3(Log& log, std::mt19937_64& rng) {
  const GridSet e = lattice_grid_example(Dyadic::parse("1/4"), 8, 2);
  const IntervalSet de = distance_set(e);
  const auto& first = de.intervals().front();
  log.check(first.lo_sq == Dyadic(0) && first.hi_sq == Dyadic::parse("1/512"),
            "initial interval of Delta(E(1/4, 8)) = [0, sqrt(2)/32]: [" + first.lo_sq.str() + ", " +
                first.hi_sq.str() + "] (squares)");
  long violations = 0, pairs = 0;
  std::uniform_int_distribution<std::int64_t> off(0, (1 << 16) - 1);
  for (int k = 0; k < 10; ++k) {
    const GridSet g = random_grid(rng, 2, 1 + k % 4, 0.35);
    const IntervalSet dg = distance_set(g);
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int i = 0; i < 10000; ++i) {
      Dyadic sq(0);
      const Cell& a = g.cells()[pick(rng)];
      const Cell& b = g.cells()[pick(rng)];
      for (int j = 0; j < 2; ++j) {
        // points cell + u 2^{-16}, u in [0, 2^16), in units of the cell side
        const Dyadic xa = Dyadic(a[j]) + Dyadic(mpz_class(static_cast<long>(off(rng))), -16);
        const Dyadic xb = Dyadic(b[j]) + Dyadic(mpz_class(static_cast<long>(off(rng))), -16);
        sq += (xa - xb).square();
      }
      sq = sq.shifted(-2 * g.resolution());
      ++pairs;
      if (!contains_sq(dg, sq)) ++violations;
    }
  }
  log.check(violations == 0, std::to_string(pairs) + " sampled pairs on 10 sets, " + std::to_string(violations) +
                                 " outside the computed distance set");
}

void c4(Log& log) {
  const BlockLemmaReport r16 = verify_block_lemma(16, Rational(5, 4), 2);
  const BlockLemmaReport r256 = verify_block_lemma(256, Rational(5, 4), 2);
  for (const auto* r : {&r16, &r256}) {
    const std::string q = "q=" + std::to_string(r->q);
    log.check(r->initial_disjoint_count > 0,
              q + ": disjoint intervals before the tail: " + std::to_string(r->initial_disjoint_count) +
                  (r->degenerate ? " (Delta is a single interval)" : ""));
    log.check(!r->delta.empty() && r->tail.hi_sq == r->delta.intervals().back().hi_sq,
              q + ": merged tail reaching the maximal norm: [" + fmt(r->tail.lo()) + ", " + fmt(r->tail.hi()) + "]");
  }
  log.check(r256.tail.lo_sq < r16.tail.lo_sq,
            "tail left endpoint decreases from q=16 to q=256: " + fmt(r16.tail.lo()) + " -> " + fmt(r256.tail.lo()));
  log.check(r256.tail.lo_sq == Dyadic::parse("9/2^20") && r256.tail.hi_sq == Dyadic::parse("1042441/2^19") &&
                r16.tail.hi_sq == Dyadic::parse("961/2^9"),
            "frozen endpoints (squares): q=256 tail [9/2^20, 1042441/2^19], q=16 [0, 961/2^9]");
}

void c5(Log& log) {
  const RepresentabilityTable tab = build_table(100000, 4);
  long fails = 0;
  for (std::uint64_t k = 0; k <= 100000; ++k)
    if (!tab.entry(k, 4)) ++fails;
  log.check(fails == 0, "four-square representability for k <= 10^5: " + std::to_string(fails) + " failures");
  const BambahScan b = bambah_chowla_scan(1154, 1000000);
  log.check(b.violations.empty(), "Bambah-Chowla scan m in [1154, 10^6]: " + std::to_string(b.violations.size()) +
                                      " violations");
}

void c6(Log& log) {
  const GridSet cube = GridSet::full(3, 0);
  const CellMeasure mu = CellMeasure::uniform(cube);
  const std::vector<double> ts{0.1, 0.5, 1.0};
  const auto f = lambda_sweep(mu, mu, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Estimate o = lambda_oracle(cube, cube, ts[i]);
    const double rel = std::fabs(f[i].geometric.value - o.value) / o.value;
    log.check(rel < 1e-3, "t=" + fmt(ts[i]) + ": fourier " + fmt(f[i].geometric.value, 9) + ", oracle " +
                              fmt(o.value, 9) + ", rel diff " + fmt(rel, 3));
  }
}

void c7(Log& log) {
  for (int d : {2, 3}) {
    const CellMeasure mu = CellMeasure::uniform(GridSet::full(d, 0));
    const double T = 1 / (2 * std::sqrt(static_cast<double>(d)));
    const Estimate F = partial_l2(mu, T);
    const double floor4 = 4 * lambda_floor_constant(d);
    log.check(F.lo() >= floor4, "uniform d=" + std::to_string(d) + ": F(1/(2 sqrt d)) = " + fmt(F.value) + " +- " +
                                    fmt(F.err, 2) + " >= 4c_d = " + fmt(floor4));
  }
  const GridSet f16 = building_block(16, Rational(5, 4), 2);
  for (int T : {2, 3}) {
    const SpectralGapMeasure sg = spectral_gap_measure(f16, T, Rational(5, 4));
    const Estimate F = partial_l2(sg.measure, 1 / (2 * std::sqrt(2.0)));
    const double floor4 = 4 * lambda_floor_constant(2);
    log.check(F.lo() >= floor4, "spectral-gap measure on F[16;5/4], T=" + std::to_string(T) + ": F = " +
                                    fmt(F.value) + " +- " + fmt(F.err, 2) + " >= " + fmt(floor4));
  }
}

void c8(Log& log) {
  const GridSet f16 = building_block(16, Rational(5, 4), 2);
  for (int T : {2, 3}) {
    const SpectralGapMeasure sg = spectral_gap_measure(f16, T, Rational(5, 4));
    const MassAudit a = audit_cube_masses(sg);
    const std::string t = "T=" + std::to_string(T) + ": ";
    log.check(a.exact_matches == a.cubes && a.weights_sum_exact,
              t + "mu(Q) = w(Q) exactly on " + std::to_string(a.exact_matches) + "/" + std::to_string(a.cubes) +
                  " cubes, sum w = 1 exactly");
    const ProximityReport p = spectral_proximity(sg.measure, T, 1000);
    log.check(p.violations == 0, t + "proximity on " + std::to_string(p.samples) + " samples, worst ratio " +
                                     fmt(p.worst_ratio, 4) + ", " + std::to_string(p.violations) + " violations");
    const int res = sg.measure.resolution();
    const BallCondition b1 = ball_condition(sg.measure, 1.25, {res + 1, 6});
    const BallCondition b2 = ball_condition(sg.measure, 1.25, {res + 2, 6});
    const double change = std::fabs(b2.a_est - b1.a_est) / b1.a_est;
    log.check(std::isfinite(b1.a_est) && change <= 0.1,
              t + "ball-condition sup " + fmt(b1.a_est, 5) + " -> " + fmt(b2.a_est, 5) +
                  " under centre-grid doubling (" + fmt(100 * change, 3) + "%)");
  }
}

void c9(Log& log) {
  auto agree = [&](const CellMeasure& mu, double s, const std::string& what) {
    const EnergyResult a = energy(mu, s, EnergyMethod::Direct);
    const EnergyResult b = energy(mu, s, EnergyMethod::Fourier);
    const double rel = std::fabs(a.value.value - b.value.value) / std::max(a.value.value, b.value.value);
    log.check(rel <= 0.05, what + ": direct " + fmt(a.value.value, 8) + ", fourier " + fmt(b.value.value, 8) +
                               ", rel diff " + fmt(rel, 3));
  };
  agree(CellMeasure::uniform(GridSet::full(2, 0)), 1.5, "uniform [0,1]^2, s=3/2");
  const SpectralGapMeasure sg = spectral_gap_measure(building_block(16, Rational(5, 4), 2), 2, Rational(5, 4));
  agree(sg.measure, 1.5 + 0.125, "spectral-gap measure on F[16;5/4], s=13/8");
}

std::vector<double> growth_grid() {
  std::vector<double> T;
  for (int i = 0; i <= 12; ++i) T.push_back(std::pow(1000.0, i / 12.0));
  return T;
}

void c10(Log& log) {
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 3));
  const GrowthProfile g = growth_profile(mu, growth_grid(), 4.0 / 3);
  log.check(std::fabs(g.exponent - 2.0 / 3) <= 0.15,
            "fitted exponent " + fmt(g.exponent, 4) + " (target 2/3 +- 0.15), rms log residual " + fmt(g.residual, 3));
}

void c11(Log& log) {
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 3));
  const WitnessSearch s = witness_search(mu, 0.21, 1000);
  log.check(s.growth_certified, "controlled growth certified from the Plancherel ceiling (c = 0.21, T0 = 1000)");
  log.check(s.rj.passes(), "rj_check passes: delta = 2^" + fmt(std::log2(s.delta)) + ", J = " +
                               std::to_string(s.R.size()) + ", spacing " + to_string(s.rj.spacing) + ", mass " +
                               to_string(s.rj.mass));
  const bool found = s.witness.witness.has_value();
  log.check(found, found ? "witness j = " + std::to_string(s.witness.witness->j) + ", t = " +
                               fmt(s.witness.witness->t, 6) + ", Lambda = " + fmt(s.witness.witness->lambda.value) +
                               " >= " + fmt(s.witness.witness->threshold)
                         : "no witness (" + to_string(s.witness.status) + ")");
  log.check(s.witness.exact_membership.value_or(false), "witness t lies in Delta(support) by exact interval membership");
}

void c12(Log& log) {
  ZeroDensityOptions o;
  o.r = {1, 2, 3, 4, 5, 6};
  o.n_max = 6;
  const ZeroDensity z = zero_density_blocks(o);
  const auto cov = coverage_check(z.set, Dyadic(0), {Dyadic(1), Dyadic::parse("2.5"), Dyadic(10)});
  for (const auto& c : cov)
    log.check(c.status == Coverage::Covered, "zero-density blocks: t = " + fmt(c.t.to_double()) + " " +
                                                 to_string(c.status));
  const RiceVariant rv = rice_variant(2, Rational(1, 1), 3);
  const auto av = coverage_check(rv.set, Dyadic(0), rv.d);
  for (const auto& c : av)
    log.check(c.status == Coverage::NotCovered, "Rice variant: d_j = " + fmt(c.t.to_double(), 9) + " " +
                                                    to_string(c.status));
}

void c13(Log& log, std::mt19937_64& rng) {
  int ok = 0, made = 0;
  while (made < 50) {
    const GridSet e = random_grid(rng, 2, 5, 0.85), f = random_grid(rng, 2, 5, 0.85);
    if (grid_volume(e).to_double() < 0.7 || grid_volume(f).to_double() < 0.7) continue;
    ++made;
    if (boardman_difference_check(e, f, 0.3).holds) ++ok;
  }
  log.check(ok == 50, std::to_string(ok) + "/50 random pairs: E - F contains [0, c_rho]^2 (rho = 0.3)");
}

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kSpecs)); }

std::string criterion_name(int id) {
  if (id < 1 || id > criterion_count()) return "unknown";
  return kSpecs[id - 1].name;
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  r.budget = kSpecs[id - 1].budget;
  std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(id));
  Log log(r);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: c1(log); break;
      case 2: c2(log, rng); break;
      case 3: c3(log, rng); break;
      case 4: c4(log); break;
      case 5: c5(log); break;
      case 6: c6(log); break;
      case 7: c7(log); break;
      case 8: c8(log); break;
      case 9: c9(log); break;
      case 10: c10(log); break;
      case 11: c11(log); break;
      case 12: c12(log); break;
      case 13: c13(log, rng); break;
      default: log.check(false, "no such criterion");
    }
  } catch (const std::exception& e) {
    log.check(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.checks_ok = log.all();
  const bool in_time = r.seconds <= r.budget;
  if (!in_time) r.lines.push_back("FAIL runtime " + fmt(r.seconds, 3) + " s over the " + fmt(r.budget) + " s budget");
  r.pass = r.checks_ok && in_time;
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt, const std::function<void(const CriterionResult&)>& on_done) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count(); ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
    if (on_done) on_done(out.back());
  }
  return out;
}

}  // namespace steinhaus::suite
