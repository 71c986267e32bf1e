#include "supcusp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace supcusp {

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex number must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  if (j.empty()) return Mat(0, 0);
  Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("matrix rows have unequal lengths");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

json cvector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec cvector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

json element_to_json(const GroupElement& g) {
  return json{{"n", g.n}, {"r", g.r}, {"gprime", matrix_to_json(g.gprime)},
              {"E", matrix_to_json(g.E)}};
}

GroupElement element_from_json(const json& j) {
  int n = j.at("n").get<int>();
  int r = j.at("r").get<int>();
  Mat gp = matrix_from_json(j.at("gprime"));
  Mat E = j.contains("E") ? matrix_from_json(j.at("E")) : Mat(0, 0);
  if (gp.rows() != n + 1 || gp.cols() != n + 1)
    throw std::invalid_argument("gprime block has the wrong shape");
  if (E.rows() != r || E.cols() != r)
    throw std::invalid_argument("E block has the wrong shape");
  return make_element(gp, E);
}

json multivector_to_json(const Multivector& v) {
  json terms = json::array();
  for (const auto& [bits, c] : v.coeff)
    terms.push_back(json{{"I", SubsetIndex(bits).to_list()}, {"c", complex_to_json(c)}});
  return json{{"r", v.r}, {"terms", std::move(terms)}};
}

Multivector multivector_from_json(const json& j) {
  Multivector v(j.at("r").get<int>());
  for (const auto& term : j.at("terms")) {
    SubsetIndex I = SubsetIndex::from_list(term.at("I").get<std::vector<int>>());
    v.add(I, complex_from_json(term.at("c")));
  }
  return v;
}

json lox_to_json(const LoxodromicData& lox) {
  return json{{"g", element_to_json(lox.g)},
              {"t0", lox.t0},
              {"w0", element_to_json(lox.w0)},
              {"d", lox.phases.d},
              {"chi", lox.phases.chi},
              {"x_plus", cvector_to_json(lox.x_plus)},
              {"x_minus", cvector_to_json(lox.x_minus)}};
}

LoxodromicData lox_from_json(const json& j) {
  LoxodromicData lox;
  lox.g = element_from_json(j.at("g"));
  lox.t0 = j.at("t0").get<double>();
  lox.w0 = element_from_json(j.at("w0"));
  lox.phases.d = j.at("d").get<std::vector<double>>();
  lox.phases.chi = j.at("chi").get<double>();
  lox.x_plus = cvector_from_json(j.at("x_plus"));
  lox.x_minus = cvector_from_json(j.at("x_minus"));
  if (!(lox.t0 > 0.0)) throw std::invalid_argument("closed line data needs t0 > 0");
  return lox;
}

json closing_to_json(const ClosingResult& res) {
  json ratios = json::object();
  for (const auto& [name, val] : res.bound_ratios) ratios[name] = val;
  return json{{"certified", res.certified},
              {"degenerate", res.degenerate},
              {"converged", res.converged},
              {"epsilon", std::isfinite(res.epsilon) ? json(res.epsilon) : json("inf")},
              {"t0", res.t0},
              {"residual", res.residual},
              {"iterations", res.iterations},
              {"z", element_to_json(res.z)},
              {"w", element_to_json(res.w)},
              {"bound_ratios", std::move(ratios)}};
}

json spectrum_to_json(const FourierSpectrum& spec) {
  json offsets = json::object();
  for (const auto& [bits, nu] : spec.offsets)
    offsets[SubsetIndex(bits).to_string()] = nu;
  json modes = json::array();
  for (const auto& md : spec.modes)
    modes.push_back(json{{"I", md.I.to_list()}, {"m", md.m}, {"b", complex_to_json(md.b)}});
  return json{{"t0", spec.t0}, {"offsets", std::move(offsets)}, {"modes", std::move(modes)}};
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string spectrum_to_csv(const FourierSpectrum& spec) {
  std::ostringstream out;
  out << "I,m,re,im\n";
  for (const auto& md : spec.modes)
    out << '"' << md.I.to_string() << "\"," << format_full(md.m) << ','
        << format_full(md.b.real()) << ',' << format_full(md.b.imag()) << '\n';
  return out.str();
}

std::string multivector_to_csv(const Multivector& v) {
  std::ostringstream out;
  out << "I,re,im\n";
  for (const auto& [bits, c] : v.coeff)
    out << '"' << SubsetIndex(bits).to_string() << "\"," << format_full(c.real()) << ','
        << format_full(c.imag()) << '\n';
  return out.str();
}

PoincareKernel kernel_from_json(const json& j) {
  LoxodromicData lox;
  if (j.contains("lox")) {
    lox = lox_from_json(j.at("lox"));
  } else if (j.contains("gamma")) {
    GroupElement gamma = element_from_json(j.at("gamma"));
    Classification cls = classify_element(gamma);
    if (cls.type != LoxType::RegularLoxodromic || !cls.data)
      throw std::invalid_argument("kernel element is not regular loxodromic");
    lox = *cls.data;
  } else {
    throw std::invalid_argument("kernel needs \"gamma\" or \"lox\"");
  }
  SubsetIndex I = j.contains("I")
                      ? SubsetIndex::from_list(j.at("I").get<std::vector<int>>())
                      : SubsetIndex();
  int k = j.at("k").get<int>();
  double m = 0.0;
  if (j.contains("m"))
    m = j.at("m").get<double>();
  else if (j.contains("j"))
    m = (j.at("j").get<double>() - lattice_offset(lox, I, k)) / lox.t0;
  else
    throw std::invalid_argument("kernel needs a frequency \"m\" or a lattice index \"j\"");
  return make_poincare_kernel(lox, I, m, k);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace supcusp
