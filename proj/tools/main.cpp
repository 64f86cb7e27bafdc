#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "steinhaus/asymptotics.hpp"
#include "steinhaus/constructions.hpp"
#include "steinhaus/content.hpp"
#include "steinhaus/distance.hpp"
#include "steinhaus/energy.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/lambda.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/mollifier.hpp"
#include "steinhaus/numtheory.hpp"
#include "steinhaus/params.hpp"
#include "steinhaus/spectral.hpp"
#include "verify_suite.hpp"

using nlohmann::json;
using namespace steinhaus;

namespace {

enum Exit { kPass = 0, kFail = 1, kIndeterminate = 2, kParam = 3, kBudget = 4 };

struct Global {
  std::uint64_t seed = 20240611;
  std::string out_dir;
  std::string params;
  double tol = 1e-4;
  int prec_bits = 128;
  int threads = 1;
  bool print_json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QuadSpec quad(const Global& g) {
  QuadSpec q;
  q.tol = g.tol;
  return q;
}

// Writes report files and prints the JSON when asked.
struct Output {
  const Global& g;
  void file(const std::string& name, const std::string& text) const {
    if (g.out_dir.empty()) return;
    std::filesystem::create_directories(g.out_dir);
    std::ofstream o(std::filesystem::path(g.out_dir) / name);
    if (!o) throw ParameterError("cannot write to " + g.out_dir);
    o << text;
  }
  void report(const std::string& name, const json& j) const {
    file(name + ".json", j.dump(2) + "\n");
    if (g.print_json) std::cout << j.dump(2) << "\n";
  }
};

std::vector<double> parse_range(const std::string& s) {
  // lo:hi:n, log-spaced when lo > 0 and "log" suffix, linear otherwise
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3) throw ParameterError("range must be lo:hi:n[:log]");
  const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  const int n = std::stoi(parts[2]);
  const bool lg = parts.size() > 3 && parts[3] == "log";
  if (n < 1 || !(hi >= lo) || (lg && !(lo > 0))) throw ParameterError("bad range " + s);
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v.push_back(lg ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
  }
  return v;
}

// A grid set from a JSON file or from construction flags.
struct SetSource {
  std::string file;
  std::string kind = "block";
  long q = 4;
  std::string sigma = "3/2";
  int d = 2;
  int n = 1;
  std::string rho = "1/4";

  void add(CLI::App* app, const std::string& prefix = "") {
    app->add_option("--" + prefix + "set", file, "grid set JSON file");
    app->add_option("--" + prefix + "kind", kind, "construction when no file is given")
        ->check(CLI::IsMember({"block", "iterated", "grid", "full"}));
    app->add_option("--" + prefix + "q", q, "block parameter q");
    app->add_option("--" + prefix + "sigma", sigma, "block exponent sigma (rational)");
    app->add_option("--" + prefix + "d", d, "dimension");
    app->add_option("--" + prefix + "n", n, "iteration depth, grid size N, or resolution for full");
    app->add_option("--" + prefix + "rho", rho, "grid example rho (dyadic)");
  }
  GridSet build() const {
    if (!file.empty()) return grid_set_from_json(read_file(file));
    if (kind == "block") return building_block(q, Rational::parse(sigma), d);
    if (kind == "iterated") return iterated_set(q, Rational::parse(sigma), d, n);
    if (kind == "grid") return lattice_grid_example(Dyadic::parse(rho), n, d);
    return GridSet::full(d, n);
  }
};

// A measure from JSON: weighted cells, or a grid set taken with its uniform measure.
CellMeasure load_measure(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError("malformed JSON in " + path + " at " + text_position(text, e.byte ? e.byte - 1 : 0));
  }
  const int dim = j.value("dim", 0);
  if (j.contains("cells") && j["cells"].is_array() && !j["cells"].empty() &&
      j["cells"][0].size() == static_cast<std::size_t>(dim) + 1)
    return cell_measure_from_json(text);
  return CellMeasure::uniform(grid_set_from_json(text));
}

json estimate_json(const Estimate& e) { return {{"value", e.value}, {"err", e.err}}; }

// ---------------------------------------------------------------- construct
int cmd_construct(const SetSource& src, const Output& out) {
  const GridSet e = src.build();
  std::cout << "cells " << e.size() << ", resolution " << e.resolution() << ", volume " << grid_volume(e).str()
            << "\n";
  out.report("construct", json::parse(to_json(e)));
  std::ostringstream csv;
  csv << "x,y\n";
  for (const auto& c : e.cells()) csv << c[0] << "," << (e.dim() > 1 ? c[1] : 0) << "\n";
  out.file("construct_cells.csv", csv.str());
  return kPass;
}

// ---------------------------------------------------------------- content
int cmd_content(const SetSource& src, const std::string& s_str, bool brute, double rho, const Global& g,
                const Output& out) {
  const GridSet e = src.build();
  const Rational s = Rational::parse(s_str);
  const ContentValue c = content(e, s);
  const MpInterval iv = c.enclose(g.prec_bits);
  json j{{"s", s.str()}, {"symbolic", c.symbolic()}, {"approx", c.approx()}, {"enclosure", format_interval(iv)}};
  std::cout << "H^" << s.str() << "_inf = " << c.symbolic() << " ~ " << c.approx() << "\n";
  int code = kPass;
  if (brute) {
    const ContentValue b = brute_force_content(e, s);
    const bool same = b == c;
    j["brute_force"] = b.symbolic();
    j["brute_force_agrees"] = same;
    std::cout << "exhaustive minimum " << (same ? "agrees" : "DISAGREES") << "\n";
    if (!same) code = kFail;
  }
  if (rho > 0) {
    json cubes = json::array();
    for (const auto& dc : high_density_cubes(e, s, rho)) {
      json corner = json::array();
      for (int k = 0; k < e.dim(); ++k) corner.push_back(dc.cube.corner[k]);
      cubes.push_back({{"level", dc.cube.level}, {"corner", corner}, {"density_lo", dc.density_lo},
                       {"density_hi", dc.density_hi}, {"ambiguous", dc.ambiguous}});
    }
    std::cout << cubes.size() << " high-density cubes at rho = " << rho << "\n";
    j["high_density_cubes"] = cubes;
  }
  out.report("content", j);
  return code;
}

// ---------------------------------------------------------------- distances
int cmd_distances(const SetSource& a, const SetSource& b, bool two, const std::vector<std::string>& targets,
                  long lemma_q, const Output& out) {
  json j;
  int code = kPass;
  if (lemma_q > 0) {
    const BlockLemmaReport r = verify_block_lemma(lemma_q, Rational::parse(a.sigma), a.d);
    j["block_lemma"] = {{"q", r.q},
                        {"sigma", r.sigma.str()},
                        {"intervals", r.interval_count},
                        {"disjoint_prefix", r.initial_disjoint_count},
                        {"separation_min", r.separation_min},
                        {"tail", {{"lo_sq", r.tail.lo_sq.str()}, {"hi_sq", r.tail.hi_sq.str()}}},
                        {"tail_constant", r.tail_constant},
                        {"degenerate", r.degenerate}};
    std::cout << "q=" << r.q << ": " << r.interval_count << " intervals, " << r.initial_disjoint_count
              << " before the tail [" << r.tail.lo() << ", " << r.tail.hi() << "]\n";
    out.report("distances", j);
    return code;
  }
  const GridSet e = a.build();
  const IntervalSet ds = two ? distance_set(e, b.build()) : distance_set(e);
  j["delta"] = json::parse(to_json(ds));
  const SteinhausResult st = steinhaus_check(ds);
  j["zero_interval"] = st.has_zero_interval;
  j["zero_interval_end"] = st.a;
  std::cout << ds.size() << " intervals";
  if (st.has_zero_interval) std::cout << ", contains [0, " << st.a << "]";
  std::cout << "\n";
  json tj = json::array();
  for (const auto& t : targets) {
    const bool in = ds.contains(Dyadic::parse(t));
    tj.push_back({{"t", t}, {"member", in}});
    std::cout << "t = " << t << (in ? " in" : " not in") << " Delta\n";
  }
  j["targets"] = tj;
  std::ostringstream csv;
  csv << "lo,hi\n";
  for (const auto& iv : ds.intervals()) csv << iv.lo() << "," << iv.hi() << "\n";
  out.file("delta_intervals.csv", csv.str());
  out.report("distances", j);
  return code;
}

// ---------------------------------------------------------------- numtheory
int cmd_numtheory(std::uint64_t four_bound, const std::string& bambah, const std::vector<double>& gap,
                  const Output& out) {
  json j;
  int code = kPass;
  if (four_bound > 0) {
    const auto tab = build_table(four_bound, 4);
    std::uint64_t fails = 0;
    for (std::uint64_t k = 0; k <= four_bound; ++k)
      if (!tab.entry(k, 4)) ++fails;
    j["four_squares"] = {{"bound", four_bound}, {"failures", fails}};
    std::cout << "four squares up to " << four_bound << ": " << fails << " failures\n";
    if (fails) code = kFail;
  }
  if (!bambah.empty()) {
    const auto pos = bambah.find(':');
    if (pos == std::string::npos) throw ParameterError("--bambah expects lo:hi");
    const auto lo = std::stoull(bambah.substr(0, pos)), hi = std::stoull(bambah.substr(pos + 1));
    const BambahScan s = bambah_chowla_scan(lo, hi);
    j["bambah"] = {{"lo", s.m_lo}, {"hi", s.m_hi}, {"violations", s.violations.size()},
                   {"first_witness", s.first_witness}};
    std::cout << "Bambah-Chowla on [" << lo << ", " << hi << "]: " << s.violations.size() << " violations\n";
    if (!s.violations.empty()) code = kFail;
  }
  if (!gap.empty()) {
    if (gap.size() < 5) throw ParameterError("--gap expects q sigma dim lo hi [windows]");
    const GapReport r = r_set_gap_check(static_cast<int>(gap[0]), gap[1], static_cast<int>(gap[2]), gap[3], gap[4],
                                        1.0, gap.size() > 5 ? static_cast<int>(gap[5]) : 1);
    j["gap"] = {{"q", r.q}, {"count", r.count}, {"max_gap", r.max_gap ? json(*r.max_gap) : json()},
                {"bound", r.bound}, {"within_bound", r.within_bound}, {"window_gaps", r.window_gaps}};
    std::cout << "largest gap " << (r.max_gap ? std::to_string(*r.max_gap) : "n/a") << " vs bound " << r.bound
              << "\n";
  }
  out.report("numtheory", j);
  return code;
}

// ---------------------------------------------------------------- measure
int cmd_measure_build(const SetSource& src, int level, const std::string& s, bool uniform, const Output& out) {
  const GridSet e = src.build();
  if (uniform) {
    const CellMeasure mu = CellMeasure::uniform(e);
    std::cout << "uniform measure on " << mu.size() << " cells\n";
    out.report("measure", json::parse(to_json(mu)));
    return kPass;
  }
  const SpectralGapMeasure sg = spectral_gap_measure(e, level, Rational::parse(s));
  const MassAudit a = audit_cube_masses(sg);
  std::cout << "spectral-gap measure: " << sg.measure.size() << " cells, " << a.exact_matches << "/" << a.cubes
            << " cube masses exact\n";
  out.report("measure", json::parse(to_json(sg.measure)));
  return a.exact_matches == a.cubes ? kPass : kFail;
}

int cmd_measure_fourier(const std::string& file, const std::vector<std::string>& xis, const Output& out) {
  const CellMeasure mu = load_measure(file);
  json arr = json::array();
  for (const auto& s : xis) {
    std::vector<double> xi;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) xi.push_back(std::stod(p));
    if (static_cast<int>(xi.size()) != mu.dim()) throw ParameterError("--xi needs " + std::to_string(mu.dim()) + " components");
    const auto v = mu.fourier(xi);
    arr.push_back({{"xi", xi}, {"re", v.real()}, {"im", v.imag()}});
    std::cout << "mu^(" << s << ") = " << v.real() << " + " << v.imag() << "i\n";
  }
  out.report("fourier", {{"values", arr}});
  return kPass;
}

int cmd_measure_energy(const std::string& file, double s, const std::string& method, const Global& g,
                       const Output& out) {
  const CellMeasure mu = load_measure(file);
  json j{{"s", s}};
  if (method == "direct" || method == "both") {
    const EnergyResult r = energy(mu, s, EnergyMethod::Direct, quad(g));
    j["direct"] = estimate_json(r.value);
    std::cout << "direct  " << r.value.value << " +- " << r.value.err << "\n";
  }
  if (method == "fourier" || method == "both") {
    const EnergyResult r = energy(mu, s, EnergyMethod::Fourier, quad(g));
    j["fourier"] = estimate_json(r.value);
    j["fourier_xi_max"] = r.xi_max;
    std::cout << "fourier " << r.value.value << " +- " << r.value.err << " (xi_max " << r.xi_max << ")\n";
  }
  out.report("energy", j);
  return kPass;
}

int cmd_measure_gap(const SetSource& src, int level, const std::string& s, const std::string& bundle_file,
                    const Global& g, const Output& out) {
  const SpectralGapMeasure sg = spectral_gap_measure(src.build(), level, Rational::parse(s));
  if (bundle_file.empty()) throw ParameterError("measure gap needs --bundle");
  const ParamBundle b = param_bundle_from_json(read_file(bundle_file));
  const SpectralGapReport r = verify_spectral_gap(sg, b, quad(g));
  const BallCondition bc = ball_condition(sg.measure, Rational::parse(s).value(), {sg.measure.resolution() + 1, 6});
  json j{{"gap_mass", estimate_json(r.gap_mass)}, {"threshold", r.threshold}, {"pass", r.pass},
         {"level_matches_bundle", r.level_matches}, {"r_inner", r.r_inner}, {"r_outer", r.r_outer},
         {"proximity_worst", r.proximity.worst_ratio}, {"proximity_violations", r.proximity.violations},
         {"ball_condition", bc.a_est}};
  std::cout << "gap mass " << r.gap_mass.value << " +- " << r.gap_mass.err << " vs a = " << r.threshold
            << (r.pass ? " (pass)" : " (fail)") << "; proximity worst ratio " << r.proximity.worst_ratio
            << "; ball-condition sup " << bc.a_est << "\n";
  out.report("gap", j);
  return r.pass && r.proximity.violations == 0 ? kPass : kFail;
}

// ---------------------------------------------------------------- lambda
int cmd_lambda(const std::string& mu_file, const std::string& nu_file, const std::string& sweep,
               const std::vector<double>& ts_in, bool decompose, const std::string& bundle_file, bool oracle,
               double xi_max, const Global& g, const Output& out) {
  const CellMeasure mu = load_measure(mu_file);
  const CellMeasure nu = nu_file.empty() ? mu : load_measure(nu_file);
  std::vector<double> ts = ts_in;
  if (!sweep.empty()) {
    const auto v = parse_range(sweep);
    ts.insert(ts.end(), v.begin(), v.end());
  }
  if (ts.empty()) throw ParameterError("lambda needs --t or --t-sweep");
  const CellMeasure& nref = nu_file.empty() ? mu : nu;
  json rows = json::array();
  std::ostringstream csv;
  csv << "t,value,err,I1,I2,I3\n";
  int code = kPass;
  if (decompose) {
    if (bundle_file.empty()) throw ParameterError("--decompose needs --bundle");
    const ParamBundle b = param_bundle_from_json(read_file(bundle_file));
    for (double t : ts) {
      const LambdaReport r = lambda_decomposition(mu, t, b, quad(g));
      rows.push_back({{"t", t}, {"total", estimate_json(r.total)}, {"I1", estimate_json(r.I1)},
                      {"I2", estimate_json(r.I2)}, {"I3", estimate_json(r.I3)}, {"i1_lower", r.i1_lower},
                      {"gap_mass", r.gap_mass}, {"i3_bound", r.i3_bound}, {"energy", r.energy},
                      {"sigma_worst", r.sigma_worst}, {"i1_ok", r.i1_ok}, {"i2_ok", r.i2_ok}, {"i3_ok", r.i3_ok},
                      {"sigma_ok", r.sigma_ok}, {"chain_holds", r.chain_holds}, {"c_d", r.c_d},
                      {"total_ge_cd", r.total_ge_cd}});
      csv << t << "," << r.total.value << "," << r.total.err << "," << r.I1.value << "," << r.I2.value << ","
          << r.I3.value << "\n";
      std::cout << "t=" << t << ": total " << r.total.value << " +- " << r.total.err << " (I1 " << r.I1.value
                << ", I2 " << r.I2.value << ", I3 " << r.I3.value << "), chain " << (r.chain_holds ? "holds" : "fails")
                << "\n";
      if (!(r.i1_ok && r.i2_ok && r.i3_ok && r.sigma_ok)) code = kFail;
    }
  } else {
    LambdaOptions lo;
    lo.xi_max = xi_max;
    const auto vals = lambda_sweep(mu, nref, ts, quad(g), lo);
    for (const auto& v : vals) {
      json row{{"t", v.t}, {"raw", estimate_json(v.raw)}, {"geometric", estimate_json(v.geometric)},
               {"xi_max", v.xi_max}, {"positive", v.positive}};
      if (oracle) {
        const Estimate o = lambda_geometric(mu, nref, v.t);
        row["oracle"] = estimate_json(o);
      }
      rows.push_back(row);
      csv << v.t << "," << v.geometric.value << "," << v.geometric.err << ",,,\n";
      std::cout << "t=" << v.t << ": Lambda " << v.geometric.value << " +- " << v.geometric.err;
      if (oracle) std::cout << " (oracle " << row["oracle"]["value"].get<double>() << ")";
      std::cout << "\n";
    }
  }
  out.file("lambda.csv", csv.str());
  out.report("lambda", {{"rows", rows}});
  return code;
}

// ---------------------------------------------------------------- asymptotics
struct AsymOpts {
  std::string measure;
  SetSource src;
  std::string profile_range;
  double nominal_s = 0;
  bool witness = false;
  double delta = 0;
  int M = 4;
  std::vector<double> R;
  bool search = false;
  double c = 0.21, T0 = 1000;
  std::vector<double> lacunary;  // tau1 tau2 C0
  double s = 0;
  std::vector<double> selector;  // d c T0 M
  std::vector<double> bourgain;
};

int cmd_asymptotics(const AsymOpts& o, const Global& g, const Output& out) {
  json j;
  int code = kPass;
  auto measure = [&]() { return o.measure.empty() ? CellMeasure::uniform(o.src.build()) : load_measure(o.measure); };
  if (!o.selector.empty()) {
    if (o.selector.size() != 4) throw ParameterError("--delta-selector expects d c T0 M");
    const double dl = delta_selector(static_cast<int>(o.selector[0]), o.selector[1], o.selector[2],
                                     static_cast<int>(o.selector[3]));
    j["delta_selector"] = dl;
    std::cout << "delta_M = " << dl << " (2^" << std::log2(dl) << ")\n";
  }
  if (!o.lacunary.empty()) {
    if (o.lacunary.size() != 3) throw ParameterError("--lacunary expects tau1 tau2 C0");
    const int d = o.src.d;
    const double s = o.s > 0 ? o.s : d;
    const auto delta = o.delta > 0 ? std::optional<double>(o.delta) : std::nullopt;
    const LacunaryPlan p = lacunary_block_plan(o.lacunary[0], o.lacunary[1], o.lacunary[2], d, s, o.M, delta);
    j["lacunary"] = {{"c", p.c}, {"T0", p.T0}, {"delta", p.delta}, {"m", p.m}, {"J0", p.J0},
                     {"log2_R", p.log2_R}, {"ratio_ok", p.ratio_ok}};
    std::cout << "lacunary plan: m = " << p.m << ", J0 = " << p.J0 << ", delta = " << p.delta << "\n";
  }
  if (!o.profile_range.empty()) {
    const CellMeasure mu = measure();
    const auto T = parse_range(o.profile_range);
    const GrowthProfile p =
        growth_profile(mu, T, o.nominal_s > 0 ? std::optional<double>(o.nominal_s) : std::nullopt, quad(g));
    json samples = json::array();
    std::ostringstream csv;
    csv << "T,F\n";
    for (const auto& sm : p.samples) {
      samples.push_back({{"T", sm.T}, {"F", estimate_json(sm.F)}});
      csv << sm.T << "," << sm.F.value << "\n";
    }
    out.file("growth.csv", csv.str());
    j["profile"] = {{"samples", samples}, {"exponent", p.exponent}, {"constant", p.constant},
                    {"residual", p.residual}, {"c_estimate", p.c_estimate}, {"C0_emp", p.C0_emp}};
    std::cout << "growth exponent " << p.exponent << " (rms residual " << p.residual << "), C0_emp " << p.C0_emp
              << "\n";
  }
  auto witness_json = [](const WitnessResult& w) {
    json steps = json::array();
    for (const auto& s : w.steps)
      steps.push_back({{"j", s.j}, {"t", s.t}, {"lambda", estimate_json(s.lambda)}, {"threshold", s.threshold},
                       {"passed", s.passed},
                       {"method", s.method == LambdaMethod::Fourier ? "fourier" : "geometric"}});
    json r{{"status", to_string(w.status)}, {"steps", steps}};
    if (w.exact_membership) r["exact_membership"] = *w.exact_membership;
    return r;
  };
  if (o.witness) {
    const CellMeasure mu = measure();
    if (!(o.delta > 0) || o.R.empty()) throw ParameterError("--witness needs --delta and --R-list");
    const WitnessResult w = find_distance_witness(mu, o.R, o.delta, o.M, quad(g));
    j["witness"] = witness_json(w);
    std::cout << "witness: " << to_string(w.status) << "\n";
    if (w.status == Verdict::Indeterminate) code = kIndeterminate;
    if (w.exact_membership && !*w.exact_membership) code = kFail;
  }
  if (o.search) {
    const CellMeasure mu = measure();
    const WitnessSearch s = witness_search(mu, o.c, o.T0, o.M, 8, quad(g));
    j["search"] = {{"c", s.c}, {"T0", s.T0}, {"delta_M", s.delta_M}, {"delta", s.delta},
                   {"growth_certified", s.growth_certified}, {"R", s.R},
                   {"rj_spacing", to_string(s.rj.spacing)}, {"rj_mass", to_string(s.rj.mass)},
                   {"witness", witness_json(s.witness)}};
    std::cout << "search: growth " << (s.growth_certified ? "certified" : "not certified") << ", rj "
              << to_string(s.rj.mass) << ", witness " << to_string(s.witness.status) << "\n";
    if (s.witness.status != Verdict::Pass) code = kIndeterminate;
  }
  if (!o.bourgain.empty()) {
    const BourgainScan b = bourgain_block_scan(o.src.build(), o.bourgain);
    json vals = json::array();
    for (const auto& v : b.values) vals.push_back(estimate_json(v));
    j["bourgain"] = {{"values", vals}, {"first", b.first ? json(*b.first) : json()}};
    std::cout << "Bourgain scan: first index " << (b.first ? std::to_string(*b.first) : "none") << "\n";
    if (!b.first) code = std::max(code, static_cast<int>(kIndeterminate));
  }
  out.report("asymptotics", j);
  return code;
}

// ---------------------------------------------------------------- verify-suite
int cmd_suite(const std::string& level, const std::vector<int>& only, const Global& g, const Output& out) {
  if (level != "desk") throw ParameterError("only --level desk is available");
  suite::SuiteOptions so;
  so.seed = g.seed;
  so.only = only;
  json arr = json::array();
  bool all = true;
  suite::run_suite(so, [&](const suite::CriterionResult& r) {
    std::printf("[%s] %2d %-36s %8.2f s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    for (const auto& l : r.lines) std::printf("       %s\n", l.c_str());
    std::fflush(stdout);
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"checks", r.lines}});
    all = all && r.pass;
  });
  out.report("verify_suite", {{"seed", g.seed}, {"criteria", arr}});
  return all ? kPass : kFail;
}

// Applies values from the JSON parameter file to options not given on the command line.
void apply_params(CLI::App& app, CLI::App* leaf, const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError("malformed JSON in " + path + " at " + text_position(text, e.byte ? e.byte - 1 : 0));
  }
  if (!j.is_object()) throw ParameterError("parameter file must hold a JSON object");
  std::vector<CLI::App*> chain;
  for (CLI::App* a = leaf; a; a = a->get_parent()) chain.push_back(a);
  auto apply = [&](const json& obj) {
    for (const auto& [key, val] : obj.items()) {
      if (val.is_object()) continue;
      CLI::Option* opt = nullptr;
      for (CLI::App* a : chain) {
        opt = a->get_option_no_throw("--" + key);
        if (opt) break;
      }
      if (!opt) throw ParameterError("parameter file: unknown option '" + key + "'");
      if (opt->count() > 0) continue;
      std::vector<std::string> in;
      auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (val.is_array())
        for (const auto& x : val) in.push_back(str(x));
      else
        in.push_back(str(val));
      for (const auto& s : in) opt->add_result(s);
      opt->run_callback();
    }
  };
  apply(j);
  // subcommand sections override top-level keys
  std::vector<std::string> names;
  for (CLI::App* a = leaf; a && a != &app; a = a->get_parent()) names.insert(names.begin(), a->get_name());
  const json* cur = &j;
  for (const auto& n : names) {
    if (!cur->contains(n) || !(*cur)[n].is_object()) break;
    cur = &(*cur)[n];
    apply(*cur);
  }
  (void)app;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic content, distance sets and configuration integrals"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "seed for every sampled check");
  app.add_option("--out", g.out_dir, "directory for JSON/CSV reports");
  app.add_option("--params", g.params, "JSON parameter file mirroring the flags");
  app.add_option("--tol", g.tol, "relative quadrature tolerance")->envname("STEINHAUS_TOL");
  app.add_option("--prec-bits", g.prec_bits, "interval precision in bits")->envname("STEINHAUS_PREC_BITS");
  app.add_option("--threads", g.threads, "parallelism degree (results do not depend on it)");
  app.add_flag("--json", g.print_json, "print the JSON report on stdout");

  SetSource src_construct;
  auto* construct = app.add_subcommand("construct", "build a grid set");
  src_construct.add(construct);

  SetSource src_content;
  std::string content_s = "4/3";
  bool brute = false;
  double hd_rho = 0;
  auto* content_cmd = app.add_subcommand("content", "dyadic Hausdorff content");
  src_content.add(content_cmd);
  content_cmd->add_option("--s", content_s, "exponent (rational)");
  content_cmd->add_flag("--brute", brute, "compare with the exhaustive minimum (small sets)");
  content_cmd->add_option("--high-density", hd_rho, "list cubes with density above 1 - rho");

  SetSource src_a, src_b;
  bool two_sets = false;
  std::vector<std::string> targets;
  long lemma_q = 0;
  auto* distances = app.add_subcommand("distances", "exact distance sets");
  src_a.add(distances);
  distances->add_option("--other", src_b.file, "second grid set JSON file")->check(CLI::ExistingFile);
  distances->add_option("--contains", targets, "dyadic distances to test");
  distances->add_option("--block-lemma", lemma_q, "run the building-block lemma check for this q");

  std::uint64_t four_bound = 0;
  std::string bambah;
  std::vector<double> gap;
  auto* numtheory = app.add_subcommand("numtheory", "lattice norm scans");
  numtheory->add_option("--four-squares", four_bound, "check four-square representability up to this bound");
  numtheory->add_option("--bambah", bambah, "Bambah-Chowla scan lo:hi");
  numtheory->add_option("--gap", gap, "norm gap check: q sigma dim lo hi [windows]");

  auto* measure = app.add_subcommand("measure", "spectral-gap measures");
  measure->require_subcommand(1);
  SetSource src_mb, src_mg;
  int level = 2, gap_level = 2;
  std::string mb_s = "5/4", mg_s = "5/4", bundle_gap;
  bool uniform = false;
  auto* mbuild = measure->add_subcommand("build", "construct a measure");
  src_mb.add(mbuild);
  mbuild->add_option("--level", level, "cube level T");
  mbuild->add_option("--s", mb_s, "content exponent for the density precondition");
  mbuild->add_flag("--uniform", uniform, "normalised Lebesgue measure instead");
  std::string mf_file, me_file, e_method = "both";
  std::vector<std::string> xis;
  double e_s = 1.5;
  auto* mfourier = measure->add_subcommand("fourier", "evaluate the Fourier transform");
  mfourier->add_option("--measure", mf_file, "measure or grid set JSON")->required();
  mfourier->add_option("--xi", xis, "frequency as comma-separated components")->required();
  auto* menergy = measure->add_subcommand("energy", "Riesz energy");
  menergy->add_option("--measure", me_file, "measure or grid set JSON")->required();
  menergy->add_option("--s", e_s, "energy exponent");
  menergy->add_option("--method", e_method, "direct, fourier or both")
      ->check(CLI::IsMember({"direct", "fourier", "both"}));
  auto* mgap = measure->add_subcommand("gap", "spectral-gap verification");
  src_mg.add(mgap);
  mgap->add_option("--level", gap_level, "cube level T");
  mgap->add_option("--s", mg_s, "content exponent");
  mgap->add_option("--bundle", bundle_gap, "parameter bundle JSON");

  std::string mu_file, nu_file, sweep, bundle_l;
  std::vector<double> ts;
  bool decompose = false, oracle = false;
  double xi_max = 0;
  auto* lambda = app.add_subcommand("lambda", "configuration integral");
  lambda->add_option("--mu", mu_file, "measure or grid set JSON")->required();
  lambda->add_option("--nu", nu_file, "second measure (defaults to mu)");
  lambda->add_option("--t", ts, "distances");
  lambda->add_option("--t-sweep", sweep, "lo:hi:n[:log]");
  lambda->add_flag("--decompose", decompose, "three-domain decomposition");
  lambda->add_option("--bundle", bundle_l, "parameter bundle JSON");
  lambda->add_flag("--oracle", oracle, "also evaluate the geometric form");
  lambda->add_option("--xi-max", xi_max, "frequency truncation radius");

  AsymOpts ao;
  auto* asym = app.add_subcommand("asymptotics", "growth profiles and distance witnesses");
  asym->add_option("--measure", ao.measure, "measure or grid set JSON");
  ao.src.add(asym);
  asym->add_option("--profile", ao.profile_range, "growth profile radii lo:hi:n[:log]");
  asym->add_option("--nominal-s", ao.nominal_s, "dimension s used for C0_emp");
  asym->add_flag("--witness", ao.witness, "run the witness finder on --R-list");
  asym->add_option("--delta", ao.delta, "delta");
  asym->add_option("--M", ao.M, "M");
  asym->add_option("--R-list", ao.R, "increasing radii");
  asym->add_flag("--search", ao.search, "search for certified witness parameters");
  asym->add_option("--c", ao.c, "growth exponent c for the search");
  asym->add_option("--T0", ao.T0, "threshold T0 for the search");
  asym->add_option("--lacunary", ao.lacunary, "tau1 tau2 C0");
  asym->add_option("--s", ao.s, "nominal dimension for the lacunary plan");
  asym->add_option("--delta-selector", ao.selector, "d c T0 M");
  asym->add_option("--bourgain", ao.bourgain, "decreasing t list for the block scan");

  std::string level_name = "desk";
  std::vector<int> only;
  auto* suite_cmd = app.add_subcommand("verify-suite", "run the acceptance battery");
  suite_cmd->add_option("--level", level_name, "battery level");
  suite_cmd->add_option("--only", only, "criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParam;
  }

  try {
    CLI::App* leaf = app.get_subcommands().front();
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    if (!g.params.empty()) apply_params(app, leaf, g.params);
    if (g.threads < 1) throw ParameterError("--threads must be positive");
    const Output out{g};
    if (leaf == construct) return cmd_construct(src_construct, out);
    if (leaf == content_cmd) return cmd_content(src_content, content_s, brute, hd_rho, g, out);
    if (leaf == distances) return cmd_distances(src_a, src_b, !src_b.file.empty(), targets, lemma_q, out);
    if (leaf == numtheory) return cmd_numtheory(four_bound, bambah, gap, out);
    if (leaf == mbuild) return cmd_measure_build(src_mb, level, mb_s, uniform, out);
    if (leaf == mfourier) return cmd_measure_fourier(mf_file, xis, out);
    if (leaf == menergy) return cmd_measure_energy(me_file, e_s, e_method, g, out);
    if (leaf == mgap) return cmd_measure_gap(src_mg, gap_level, mg_s, bundle_gap, g, out);
    if (leaf == lambda) return cmd_lambda(mu_file, nu_file, sweep, ts, decompose, bundle_l, oracle, xi_max, g, out);
    if (leaf == asym) return cmd_asymptotics(ao, g, out);
    if (leaf == suite_cmd) return cmd_suite(level_name, only, g, out);
    throw ParameterError("unknown command");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParam;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number (" << e.what() << ")\n";
    return kParam;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range\n";
    return kParam;
  }
}
