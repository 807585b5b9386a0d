#include "wco/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wco/error.hpp"

namespace wco::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() && s.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
}

std::vector<std::vector<double>> read_csv(std::istream& in, const std::string& header, std::size_t cols) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError("CSV header must be '" + header + "'");
  std::vector<std::vector<double>> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != cols) throw ParseError("line " + std::to_string(n) + ": expected " + std::to_string(cols) + " columns");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, n));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(complex z) { return json::array({z.real(), z.imag()}); }

complex complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json to_json(const TaylorSeries& s) {
  json c = json::array();
  for (const complex& x : s.coeffs()) c.push_back(to_json(x));
  return json{{"order", s.order()}, {"coeffs", c}, {"label", s.label()}};
}

TaylorSeries series_from(const json& j) {
  const json& c = field(j, "coeffs");
  if (!c.is_array()) throw ParseError("'coeffs' must be an array");
  std::vector<complex> v;
  for (const json& x : c) v.push_back(complex_from(x));
  if (j.contains("order")) {
    const int order = field(j, "order").get<int>();
    if (order != static_cast<int>(v.size()) - 1)
      throw ParseError("'order' " + std::to_string(order) + " does not match " + std::to_string(v.size()) + " coefficients");
  }
  std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string{};
  if (v.size() == 1) v.push_back(0.0);
  try {
    return TaylorSeries(std::move(v), std::move(label));
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const CircleSamples& cs) {
  json v = json::array();
  for (const complex& x : cs.values) v.push_back(to_json(x));
  return json{{"radius", cs.radius}, {"values", v}};
}

CircleSamples samples_from(const json& j) {
  std::vector<complex> v;
  for (const json& x : field(j, "values")) v.push_back(complex_from(x));
  try {
    return CircleSamples(number(field(j, "radius"), "radius"), std::move(v));
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const WCOperator& a) { return json{{"psi", to_json(a.psi())}, {"phi", to_json(a.phi())}}; }

WCOperator operator_from(const json& j, const Settings& cfg) {
  return WCOperator(series_from(field(j, "psi")), series_from(field(j, "phi")), cfg);
}

json to_json(const PointEvalOperator& e) { return json{{"alpha", to_json(e.alpha)}, {"z0", to_json(e.z0)}}; }

PointEvalOperator point_eval_from(const json& j, const Settings& cfg) {
  return PointEvalOperator(complex_from(field(j, "alpha")), complex_from(field(j, "z0")), cfg);
}

json to_json(const Plane& p) { return json{{"f", to_json(p.f())}, {"g", to_json(p.g())}}; }

Plane plane_from(const json& j, const Settings& cfg) {
  return Plane(series_from(field(j, "f")), series_from(field(j, "g")), cfg);
}

json to_json(const SeparationVerdict& v) {
  json out{{"separating", v.separating}, {"reason", to_string(v.reason)}};
  out["witness"] = v.witness ? json::array({to_json(v.witness->e1), to_json(v.witness->e2)}) : json::array();
  out["radius"] = v.radius;
  out["samples"] = v.samples;
  if (v.common_zero) out["common_zero"] = to_json(*v.common_zero);
  if (v.collision)
    out["collision"] = json{{"z0", to_json(v.collision->z0)},
                            {"z1", to_json(v.collision->z1)},
                            {"discriminant", v.collision->discriminant}};
  if (v.suspect) out["suspect"] = true;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Witness witness_from(const json& j, const Settings& cfg) {
  const json& w = j.is_object() ? field(j, "witness") : j;
  if (!w.is_array() || w.size() != 2) throw ParseError("witness must be a pair of point evaluations");
  return Witness{point_eval_from(w[0], cfg), point_eval_from(w[1], cfg)};
}

json to_json(const ZeroFreeUnit& h) { return json{{"k", to_json(h.k())}, {"h", to_json(h.h())}}; }

json to_json(const DecompositionRecord& d) {
  return json{{"h", to_json(d.h)},
              {"tau", to_json(d.tau.s())},
              {"sigma", to_json(d.sigma.s())},
              {"alpha", to_json(d.alpha)},
              {"lambda", to_json(d.lambda)},
              {"c", to_json(d.c)},
              {"G", to_json(d.G)},
              {"swapped", d.swapped},
              {"tie", d.tie},
              {"span_residual", d.span_residual}};
}

json to_json(const IdentificationResult& r) {
  double worst = 0.0;
  int iters = 0, reseeds = 0, from_g = 0;
  for (const auto& b : r.branch_log) {
    worst = std::max(worst, b.condition);
    iters = std::max(iters, b.iterations);
    reseeds += b.reseeded ? 1 : 0;
    from_g += b.used_f ? 0 : 1;
  }
  json log{{"samples", r.branch_log.size()},
           {"max_iterations", iters},
           {"max_condition", worst},
           {"reseeded", reseeds},
           {"psi_from_g", from_g}};
  return json{{"operator", to_json(r.op)}, {"residual", r.residual}, {"radius", r.radius},
              {"canonical", r.canonical}, {"branch_log", log}};
}

json to_json(const Settings& s) {
  json j = json::object();
#define X(name) j[#name] = s.name;
  WCO_SETTINGS_FIELDS(X)
#undef X
  return j;
}

Settings settings_from(const json& j, Settings base) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
#define X(name)                                                                  \
  if (key == #name) {                                                            \
    if (!value.is_number()) throw ParseError("config field '" + key + "' must be a number"); \
    base.name = value.get<decltype(base.name)>();                                \
    known = true;                                                                \
  }
    WCO_SETTINGS_FIELDS(X)
#undef X
    if (!known) throw ParseError("unknown config field '" + key + "'");
  }
  return base;
}

Image image_from(const json& j) {
  if (j.is_object() && j.contains("values")) return samples_from(j);
  return series_from(j);
}

ProbeRecord probe_from(const json& j, const Settings& cfg) {
  return ProbeRecord{plane_from(field(j, "plane"), cfg), image_from(field(j, "Af")), image_from(field(j, "Ag"))};
}

std::vector<CatalogEntry> catalog_from(const json& j, int order, const Settings& cfg) {
  std::vector<CatalogEntry> out;
  for (const json& e : field(j, "entries")) {
    const std::string name = field(e, "name").get<std::string>();
    TaylorSeries s = e.contains("series")
                         ? series_from(e.at("series")).resized(order)
                         : catalog_series(field(e, "kind").get<std::string>(),
                                          e.contains("param") ? complex_from(e.at("param")) : complex{}, order);
    out.push_back({name, SchlichtFunction(s.with_label(name), cfg)});
  }
  return out;
}

json catalog_document(const std::vector<CatalogEntry>& entries) {
  json list = json::array();
  for (const auto& e : entries) list.push_back(json{{"name", e.name}, {"series", to_json(e.sigma.s())}});
  return json{{"schema", "wco.catalog/1"}, {"entries", list}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

TimeSignal read_signal_csv(std::istream& in) {
  const auto rows = read_csv(in, "t,re,im", 3);
  if (rows.size() < 2) throw ParseError("a signal needs at least two rows");
  const double dt = rows[1][0] - rows[0][0];
  if (std::abs(rows[0][0]) > 1e-12 * std::max(1.0, dt)) throw ParseError("signal grid must start at t = 0");
  std::vector<complex> v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - dt * static_cast<double>(i)) > 1e-9 * std::max(1.0, dt * static_cast<double>(i)))
      throw ParseError("signal grid is not uniform at row " + std::to_string(i + 2));
    v.emplace_back(rows[i][1], rows[i][2]);
  }
  try {
    return TimeSignal(dt, std::move(v));
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

TimeSignal read_signal_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const TimeSignal& x) {
  out << "t,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < x.samples.size(); ++i)
    out << x.time(i) << ',' << x.samples[i].real() << ',' << x.samples[i].imag() << '\n';
}

HalfPlaneSamples read_halfplane_csv(std::istream& in) {
  const auto rows = read_csv(in, "re_z,im_z,re_v,im_v", 4);
  std::vector<complex> z, v;
  for (const auto& r : rows) z.emplace_back(r[0], r[1]), v.emplace_back(r[2], r[3]);
  try {
    return HalfPlaneSamples(std::move(z), std::move(v));
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

void write_halfplane_csv(std::ostream& out, const HalfPlaneSamples& s) {
  out << "re_z,im_z,re_v,im_v\n" << std::setprecision(17);
  for (std::size_t i = 0; i < s.points.size(); ++i)
    out << s.points[i].real() << ',' << s.points[i].imag() << ',' << s.values[i].real() << ','
        << s.values[i].imag() << '\n';
}

}  // namespace wco::io
