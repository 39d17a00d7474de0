#pragma once

// Structured-text (JSON) serialization for circle functions, atoms,
// decompositions, operator measures and ratio reports, plus flat CSV rows
// for plotting. Complex entries are written as [re, im] pairs; doubles use
// shortest round-trip formatting, so values survive a round trip exactly.

#include "ncharm/carleson.hpp"
#include "ncharm/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace ncharm {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(j.at(i).at(k));
  return m;
}

inline Json to_json(const CircleFun& f) {
  Json j;
  j["dim"] = f.dim();
  if (f.band_limited_repr()) {
    j["repr"] = "band";
    j["degree"] = f.degree();
    Json coeffs = Json::array();
    for (int n = -f.degree(); n <= f.degree(); ++n) coeffs.push_back(to_json(f.coeff(n)));
    j["coeffs"] = std::move(coeffs);
  } else {
    j["repr"] = "piecewise";
    Json cells = Json::array();
    for (const auto& c : f.cells())
      cells.push_back({{"lo", c.lo}, {"hi", c.hi}, {"value", to_json(c.value)}});
    j["cells"] = std::move(cells);
  }
  return j;
}

inline CircleFun circlefun_from_json(const Json& j) {
  const std::string repr = j.at("repr").get<std::string>();
  if (repr == "band") {
    const int degree = j.at("degree").get<int>();
    std::vector<Matrix> coeffs;
    for (const Json& c : j.at("coeffs")) coeffs.push_back(matrix_from_json(c));
    return CircleFun::band_limited(degree, std::move(coeffs));
  }
  if (repr == "piecewise") {
    std::vector<CircleFun::Cell> cells;
    for (const Json& c : j.at("cells"))
      cells.push_back({c.at("lo").get<double>(), c.at("hi").get<double>(),
                       matrix_from_json(c.at("value"))});
    return CircleFun::piecewise(std::move(cells));
  }
  throw std::invalid_argument("circlefun_from_json: unknown repr '" + repr + "'");
}

inline Json to_json(const Arc& a) { return {{"center", a.center}, {"radius", a.radius}}; }

inline Arc arc_from_json(const Json& j) {
  return Arc{j.at("center").get<double>(), j.at("radius").get<double>()};
}

inline Json to_json(const Atom& a) {
  return {{"support", to_json(a.support)}, {"fun", to_json(a.fun)}};
}

inline Atom atom_from_json(const Json& j) {
  return Atom{arc_from_json(j.at("support")), circlefun_from_json(j.at("fun"))};
}

inline Json to_json(const Decomposition& dec) {
  Json terms = Json::array();
  for (const auto& t : dec.terms)
    terms.push_back({{"lambda", to_json(t.lambda)},
                     {"kind", t.is_atom ? "atom" : "constant"},
                     {"support", to_json(t.support)},
                     {"piece", to_json(t.piece)}});
  return {{"terms", std::move(terms)}};
}

inline Json to_json(const OperatorMeasure& nu) {
  Json nodes = Json::array();
  for (Complex z : nu.nodes) nodes.push_back(to_json(z));
  Json weights = Json::array();
  for (const Matrix& w : nu.weights) weights.push_back(to_json(w));
  return {{"dim", nu.dim}, {"nodes", std::move(nodes)}, {"weights", std::move(weights)}};
}

inline OperatorMeasure measure_from_json(const Json& j) {
  OperatorMeasure nu;
  nu.dim = j.at("dim").get<int>();
  for (const Json& n : j.at("nodes")) nu.nodes.push_back(complex_from_json(n));
  for (const Json& w : j.at("weights")) nu.weights.push_back(matrix_from_json(w));
  if (nu.nodes.size() != nu.weights.size())
    throw std::invalid_argument("measure_from_json: node/weight count mismatch");
  return nu;
}

inline Json to_json(const RatioReport& r) {
  Json j;
  j["x"] = r.x_name;
  j["y"] = r.y_name;
  j["ratio_min"] = r.ratio_min;
  j["ratio_max"] = r.ratio_max;
  j["ratio_median"] = r.ratio_median;
  j["witness_min"] = r.witness_min;
  j["witness_max"] = r.witness_max;
  j["excluded"] = r.excluded;
  j["metadata"] = r.metadata;
  return j;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// One row per corpus item: index, X, Y, Y/X, excluded flag.
inline std::string ratio_report_csv(const RatioReport& r) {
  std::ostringstream os;
  os << "index," << r.x_name << "," << r.y_name << ",ratio,excluded\n";
  for (size_t k = 0; k < r.x.size(); ++k) {
    const bool ex = std::find(r.excluded.begin(), r.excluded.end(),
                              static_cast<int>(k)) != r.excluded.end();
    const bool ok = std::isfinite(r.x[k]) && std::isfinite(r.y[k]);
    os << k << "," << (ok ? format_double(r.x[k]) : "") << ","
       << (ok ? format_double(r.y[k]) : "") << ","
       << (ok && !ex && r.x[k] != 0.0 ? format_double(r.y[k] / r.x[k]) : "") << ","
       << (ex ? 1 : 0) << "\n";
  }
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return Json::parse(in);
}

}  // namespace ncharm
