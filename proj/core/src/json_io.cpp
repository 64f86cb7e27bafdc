#include "steinhaus/json_io.hpp"

#include <json.hpp>

#include "steinhaus/errors.hpp"

namespace steinhaus {

using nlohmann::json;

std::string text_position(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParameterError("malformed JSON at " + text_position(text, at));
  }
}

template <class F>
auto field(const json& j, const char* key, F conv) {
  if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("JSON: missing field '") + key + "'");
  try {
    return conv(j.at(key));
  } catch (const json::exception&) {
    throw ParameterError(std::string("JSON: bad value for '") + key + "'");
  }
}

Dyadic dyadic_of(const json& v) {
  if (v.is_string()) return Dyadic::parse(v.get<std::string>());
  if (v.is_number_integer()) return Dyadic(v.get<long>());
  if (v.is_number()) return Dyadic::from_double(v.get<double>());
  throw ParameterError("JSON: expected a dyadic number");
}

}  // namespace

std::string to_json(const GridSet& e) {
  json j;
  j["dim"] = e.dim();
  j["resolution"] = e.resolution();
  json cells = json::array();
  for (const auto& c : e.cells()) {
    json row = json::array();
    for (int k = 0; k < e.dim(); ++k) row.push_back(c[k]);
    cells.push_back(row);
  }
  j["cells"] = cells;
  j["scale"] = e.scale().str();
  json anchor = json::array();
  for (const auto& a : e.anchor()) anchor.push_back(a.str());
  j["anchor"] = anchor;
  return j.dump();
}

GridSet grid_set_from_json(const std::string& text) {
  const json j = parse(text);
  const int dim = field(j, "dim", [](const json& v) { return v.get<int>(); });
  const int res = field(j, "resolution", [](const json& v) { return v.get<int>(); });
  if (dim < 1 || dim > kMaxDim) throw ParameterError("JSON: dim must be 1..3");
  if (res < 0 || res > 40) throw ParameterError("JSON: resolution out of range");
  std::vector<Cell> cells;
  for (const auto& row : field(j, "cells", [](const json& v) { return v; })) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) throw ParameterError("JSON: cell with wrong arity");
    Cell c{};
    for (int k = 0; k < dim; ++k) {
      if (!row[k].is_number_integer()) throw ParameterError("JSON: cell coordinates must be integers");
      c[k] = row[k].get<std::int64_t>();
    }
    cells.push_back(c);
  }
  GridSet g(dim, res, std::move(cells));
  if (j.contains("scale") || j.contains("anchor")) {
    const Dyadic scale = j.contains("scale") ? dyadic_of(j["scale"]) : Dyadic(1);
    std::vector<Dyadic> anchor(dim, Dyadic(0));
    if (j.contains("anchor")) {
      const json& a = j["anchor"];
      if (!a.is_array() || static_cast<int>(a.size()) != dim) throw ParameterError("JSON: anchor with wrong arity");
      for (int k = 0; k < dim; ++k) anchor[k] = dyadic_of(a[k]);
    }
    g = g.with_placement(scale, anchor);
  }
  return g;
}

std::string to_json(const CellMeasure& mu) {
  json j;
  j["dim"] = mu.dim();
  j["resolution"] = mu.resolution();
  j["scale"] = mu.scale();
  j["origin"] = mu.origin();
  json cells = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < mu.dim(); ++k) row.push_back(mu.cells()[i][k]);
    row.push_back(mu.weights()[i]);
    cells.push_back(row);
  }
  j["cells"] = cells;
  return j.dump();
}

CellMeasure cell_measure_from_json(const std::string& text) {
  const json j = parse(text);
  const int dim = field(j, "dim", [](const json& v) { return v.get<int>(); });
  const int res = field(j, "resolution", [](const json& v) { return v.get<int>(); });
  if (dim < 1 || dim > kMaxDim) throw ParameterError("JSON: dim must be 1..3");
  if (res < 0 || res > 40) throw ParameterError("JSON: resolution out of range");
  std::vector<Cell> cells;
  std::vector<double> w;
  for (const auto& row : field(j, "cells", [](const json& v) { return v; })) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim + 1)
      throw ParameterError("JSON: measure cell needs dim coordinates and a weight");
    Cell c{};
    for (int k = 0; k < dim; ++k) {
      if (!row[k].is_number_integer()) throw ParameterError("JSON: cell coordinates must be integers");
      c[k] = row[k].get<std::int64_t>();
    }
    if (!row[dim].is_number()) throw ParameterError("JSON: weight must be a number");
    cells.push_back(c);
    w.push_back(row[dim].get<double>());
  }
  std::vector<double> origin;
  if (j.contains("origin")) origin = field(j, "origin", [](const json& v) { return v.get<std::vector<double>>(); });
  const double scale = j.contains("scale") ? field(j, "scale", [](const json& v) { return v.get<double>(); }) : 1.0;
  return CellMeasure(dim, res, std::move(cells), std::move(w), std::move(origin), scale);
}

std::string to_json(const IntervalSet& s) {
  json arr = json::array();
  for (const auto& r : s.intervals())
    arr.push_back({{"lo_sq", r.lo_sq.str()}, {"hi_sq", r.hi_sq.str()}, {"lo", r.lo()}, {"hi", r.hi()}});
  return json{{"intervals", arr}}.dump();
}

std::string to_json(const ParamBundle& b) {
  json checks = json::array(), adv = json::array();
  for (const auto& c : b.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  for (const auto& c : b.advisory) adv.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  json j{{"d", b.d},         {"N", b.N},       {"kappa", b.kappa},     {"rho", b.rho},   {"alpha", b.alpha},
         {"c0", b.c0},       {"C0", b.C0},     {"T", b.T},             {"a", b.a},       {"b", b.b},
         {"delta", b.delta}, {"eps", b.eps},   {"eps_max", b.eps_max}, {"c_d", b.c_d},   {"feasible", b.feasible()},
         {"checks", checks}, {"advisory", adv}};
  return j.dump();
}

ParamBundle param_bundle_from_json(const std::string& text) {
  const json j = parse(text);
  auto num = [](const json& v) { return v.get<double>(); };
  const int d = field(j, "d", [](const json& v) { return v.get<int>(); });
  const int N = field(j, "N", [](const json& v) { return v.get<int>(); });
  const double kappa = field(j, "kappa", num), rho = field(j, "rho", num), alpha = field(j, "alpha", num);
  const double C0 = j.contains("C0") ? field(j, "C0", num) : 1.0;
  return compute_parameters(d, kappa, rho, N, alpha, C0);
}

}  // namespace steinhaus
