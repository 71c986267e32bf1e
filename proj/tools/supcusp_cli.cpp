#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "supcusp/cayley.hpp"
#include "supcusp/dynamics.hpp"
#include "supcusp/json_io.hpp"
#include "supcusp/random_elements.hpp"

using namespace supcusp;

namespace {

constexpr cplx kI(0.0, 1.0);

struct Options {
  std::string cmd;
  std::string in_path;
  std::string out_path;
  double tol = 1e-11;
  bool tol_given = false;
  int quad_radial = 64;
  int quad_angular = 64;
  int jobs = 1;
  unsigned long long seed = 1;
  bool verbose = false;
};

void vlog(const Options& opt, const std::string& msg) {
  if (opt.verbose) std::fprintf(stderr, "[supcusp] %s\n", msg.c_str());
}

bool wants_csv(const Options& opt) {
  const std::string& p = opt.out_path;
  return p.size() > 4 && p.compare(p.size() - 4, 4, ".csv") == 0;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(opt.out_path, text);
    vlog(opt, "wrote " + opt.out_path);
  }
}

void emit_json(const Options& opt, const json& j) { emit(opt, j.dump(2) + "\n"); }

// Runs fn(i) for i in [0, count) on opt.jobs threads. Each index owns
// its output slot, so the result is independent of the thread count.
void parallel_for(const Options& opt, int count, const std::function<void(int)>& fn) {
  int workers = std::max(1, std::min(opt.jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::string> errors(workers);
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += workers) fn(i);
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& err : errors)
    if (!err.empty()) throw std::runtime_error(err);
}

Eigen::Matrix2cd su11_from_sl2r(double a, double b, double c, double d) {
  Eigen::Matrix2cd C, Cinv, M;
  C << kI, kI, -1.0, 1.0;
  Cinv << 1.0, -kI, 1.0, kI;
  Cinv /= 2.0 * kI;
  M << a, b, c, d;
  return Cinv * M * C;
}

// Deterministic interior points spiralling out to the given radius.
BallPoint spiral_point(int n, int i, int count, double radius) {
  Vec z = Vec::Zero(n);
  double u = radius * (i + 1.0) / (count + 1.0);
  double a = 2.4 * i + 0.3;
  if (n == 1) {
    z(0) = u * std::exp(kI * a);
  } else {
    z(0) = u * std::cos(a) * std::exp(kI * (0.3 * a));
    for (int d = 1; d < n; ++d) z(d) = u * std::sin(a) * std::exp(kI * (0.7 * a)) / std::sqrt(n - 1.0);
  }
  return make_ball_point(z);
}

SuperFunction polynomial_probe(int n, int r) {
  SuperFunction f;
  f.n = n;
  f.r = r;
  f.eval = [n, r](const BallPoint& p) {
    Multivector out(r);
    cplx base = 1.0;
    for (int i = 0; i < n; ++i)
      base += (0.3 + 0.1 * i) * p.z(i) + cplx(0.0, 0.2) * p.z(i) * p.z(i);
    for (std::uint32_t bits = 0; bits < (1u << r); ++bits)
      out.add(SubsetIndex(bits), base * (1.0 + 0.25 * static_cast<double>(bits)));
    return out;
  };
  return f;
}

struct VerifyRow {
  std::string name;
  double residual = 0.0;
  double allowed = 0.0;
  bool ok() const { return std::isfinite(residual) && residual <= allowed; }
};

int run_verify(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<VerifyRow> rows;
  const std::vector<std::pair<int, int>> shapes = {{1, 0}, {1, 1}, {2, 0}, {2, 2}};

  {
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      auto [n, r] = shapes[c % shapes.size()];
      GroupElement g = random_group_element(n, r, rng);
      GroupElement h = random_group_element(n, r, rng);
      BallPoint z = random_ball_point(n, rng);
      cplx chain = cocycle(g * h, z) - cocycle(g, mobius(h, z)) * cocycle(h, z);
      worst = std::max(worst, std::abs(chain));
    }
    rows.push_back({"cocycle chain rule", worst, 1e-9});
    vlog(opt, "cocycle chain rule done");
  }

  {
    double worst = 0.0;
    const int k = 5;
    for (int c = 0; c < 20; ++c) {
      auto [n, r] = shapes[c % shapes.size()];
      SuperFunction f = polynomial_probe(n, r);
      GroupElement g = random_group_element(n, r, rng);
      GroupElement h = random_group_element(n, r, rng);
      BallPoint z = random_ball_point(n, rng);
      Multivector lhs = slash(slash(f, g, k), h, k).eval(z);
      Multivector rhs = slash(f, g * h, k).eval(z);
      worst = std::max(worst, mv_norm(lhs - rhs));
    }
    rows.push_back({"slash right action", worst, 1e-9});
    vlog(opt, "slash right action done");
  }

  {
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      auto [n, r] = shapes[c % shapes.size()];
      GroupElement g = random_group_element(n, r, rng);
      BallPoint z = random_ball_point(n, rng);
      BallPoint w = random_ball_point(n, rng);
      cplx law = jordan_delta(mobius(g, z).z, mobius(g, w).z) -
                 jordan_delta(z.z, w.z) * cocycle(g, z) * std::conj(cocycle(g, w));
      worst = std::max(worst, std::abs(law));
      BallPoint origin = make_ball_point(Vec::Zero(n));
      double norm_id = std::abs(std::abs(cocycle(g, origin)) -
                                std::sqrt(jordan_delta(mobius(g, origin).z, mobius(g, origin).z).real()));
      worst = std::max(worst, norm_id);
    }
    rows.push_back({"triple determinant law", worst, 1e-10});
    vlog(opt, "triple determinant law done");
  }

  {
    double worst = 0.0;
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int c = 0; c < 20; ++c) {
      int n = 2 + (c % 2);
      HeisenbergElement a, b;
      a.lambda = unif(rng);
      b.lambda = unif(rng);
      a.u = Vec::Zero(n - 1);
      b.u = Vec::Zero(n - 1);
      for (int d = 0; d < n - 1; ++d) {
        a.u(d) = cplx(unif(rng), unif(rng));
        b.u(d) = cplx(unif(rng), unif(rng));
      }
      HeisenbergElement ab = heisenberg_mul(a, b);
      worst = std::max(worst, (heisenberg_matrix(ab, n) -
                               heisenberg_matrix(a, n) * heisenberg_matrix(b, n))
                                  .norm());
      Vec w2 = Vec::Zero(n - 1), v2 = Vec::Zero(n - 1);
      for (int d = 0; d < n - 1; ++d) {
        w2(d) = 0.3 * cplx(unif(rng), unif(rng));
        v2(d) = 0.3 * cplx(unif(rng), unif(rng));
      }
      HalfSpacePoint p = make_half_space_point(0.5 * w2.squaredNorm() + 0.7 + 0.2 * kI * unif(rng), w2);
      HalfSpacePoint q = make_half_space_point(0.5 * v2.squaredNorm() + 0.4 + 0.2 * kI * unif(rng), v2);
      worst = std::max(worst, std::abs(delta_prime(heisenberg_act(a, p), heisenberg_act(a, q)) -
                                       delta_prime(p, q)));
    }
    rows.push_back({"Heisenberg group law", worst, 1e-12});
    vlog(opt, "Heisenberg group law done");
  }

  {
    double worst = 0.0;
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int c = 0; c < 5; ++c) {
      int n = 2;
      Vec w2(n - 1);
      w2(0) = 0.4 * cplx(unif(rng), unif(rng));
      HalfSpacePoint p = make_half_space_point(0.5 * w2.squaredNorm() + 0.6 + 0.3 * kI * unif(rng), w2);
      for (double t : {-1.0, -0.25, 0.5, 1.5}) {
        HalfSpacePoint pt = make_half_space_point(std::exp(2.0 * t) * p.w1, std::exp(t) * p.w2);
        double lhs = delta_prime(pt, pt).real();
        double rhs = std::exp(2.0 * t) * delta_prime(p, p).real();
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      }
      double y = unif(rng);
      Vec s(n - 1);
      s(0) = std::sqrt(std::max(0.0, 1.0 - y * y));
      GeodesicTwoPoint geo = make_geodesic(0.4 * unif(rng), y, s);
      double apex = delta_prime_profile(geo, 0.0);
      for (double t : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        double prof = delta_prime_profile(geo, t);
        worst = std::max(worst, std::abs(prof - delta_prime_profile(geo, -t)) / apex);
        if (prof > 4.0 * std::exp(-2.0 * std::abs(t)) * apex * (1.0 + 1e-10)) worst = 1.0;
        if (prof < std::exp(-2.0 * std::abs(t)) * apex * (1.0 - 1e-10)) worst = 1.0;
      }
    }
    rows.push_back({"geodesic height profile", worst, 1e-10});
    vlog(opt, "geodesic height profile done");
  }

  {
    double worst = 0.0;
    SplittingBasis b1 = splitting_basis(1, 0);
    if (!(b1.plus1.empty() && b1.minus1.empty() && !b1.plus2.empty())) worst = 1.0;
    SplittingBasis b2 = splitting_basis(2, 1);
    if (b2.plus1.empty() || b2.minus1.empty()) worst = 1.0;
    std::vector<std::pair<int, std::vector<LieAlgebraElement>>> graded;
    graded.push_back({0, b2.a});
    graded.push_back({0, b2.m});
    graded.push_back({1, b2.plus1});
    graded.push_back({-1, b2.minus1});
    graded.push_back({2, b2.plus2});
    graded.push_back({-2, b2.minus2});
    for (const auto& [ga, va] : graded) {
      for (const auto& [gb, vb] : graded) {
        for (const auto& xa : va) {
          for (const auto& xb : vb) {
            RootComponents comp = root_split(bracket(xa, xb));
            int target = ga + gb;
            double off = 0.0;
            auto mass = [&](int grade, const LieAlgebraElement& part) {
              if (grade != target) off += lie_norm(part);
            };
            mass(0, comp.a_part);
            mass(0, comp.m_part);
            mass(1, comp.plus1);
            mass(-1, comp.minus1);
            mass(2, comp.plus2);
            mass(-2, comp.minus2);
            worst = std::max(worst, off);
          }
        }
      }
    }
    rows.push_back({"root space grading", worst, 1e-10});
    vlog(opt, "root space grading done");
  }

  {
    GroupElement h = random_group_element(1, 0, rng, 0.3);
    GroupElement gamma = h * a_flow(1, 0, 2.0) * h.inverse();
    ClosingResult res = close_orbit(h, gamma, 2.0, anosov_constants());
    double residual = res.certified ? std::abs(res.t0 - 2.0)
                                    : std::numeric_limits<double>::infinity();
    rows.push_back({"orbit closing certificate", residual, 1e-9});
    vlog(opt, "orbit closing certificate done");
  }

  {
    GroupElement gamma = make_element(su11_from_sl2r(2, 1, 1, 1), Mat(0, 0));
    Classification cls = classify_element(gamma);
    double worst = std::numeric_limits<double>::infinity();
    if (cls.type == LoxType::RegularLoxodromic && cls.data) {
      PoincareKernel kern = make_poincare_kernel(*cls.data, SubsetIndex(), 0.0, 8);
      worst = 0.0;
      cplx ref = 0.0;
      for (int i = 0; i < 6; ++i) {
        BallPoint z = spiral_point(1, i, 6, 0.55);
        cplx ratio = q_closed(kern, z).at(SubsetIndex()) /
                     q_integral(kern, z).at(SubsetIndex());
        if (i == 0)
          ref = ratio;
        else
          worst = std::max(worst, std::abs(ratio - ref) / std::abs(ref));
      }
    }
    rows.push_back({"kernel quadrature ratio", worst, 1e-5});
    vlog(opt, "kernel quadrature ratio done");
  }

  {
    QuadratureSpec quad{opt.quad_radial, opt.quad_angular};
    SuperFunction one = constant_function(1, 0, Multivector::monomial(0, SubsetIndex(), 1.0));
    SuperFunction linear;
    linear.n = 1;
    linear.r = 0;
    linear.degree = 1;
    linear.eval = [](const BallPoint& p) {
      return Multivector::monomial(0, SubsetIndex(), p.z(0));
    };
    BallPoint origin = make_ball_point(Vec::Zero(1));
    Vec z3(1);
    z3(0) = 0.3;
    BallPoint w3 = make_ball_point(z3);
    cplx c0 = reproducing_check(origin, SubsetIndex(), 3, one, quad);
    cplx c1 = reproducing_check(w3, SubsetIndex(), 3, one, quad);
    cplx c2 = reproducing_check(w3, SubsetIndex(), 3, linear, quad);
    double worst = std::max(std::abs(c1 - c0), std::abs(c2 - c0)) / std::abs(c0);
    rows.push_back({"reproducing pairing", worst, 1e-3});
    vlog(opt, "reproducing pairing done");
  }

  std::ostringstream table;
  table << "check                          residual     allowed   status\n";
  bool all_ok = true;
  for (const auto& row : rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-28s %11.3e %11.3e   %s\n", row.name.c_str(),
                  row.residual, row.allowed, row.ok() ? "pass" : "FAIL");
    table << line;
    all_ok = all_ok && row.ok();
  }
  table << (all_ok ? "verification passed\n" : "verification FAILED\n");
  std::fputs(table.str().c_str(), stdout);
  if (!opt.out_path.empty()) write_text_file(opt.out_path, table.str());
  return all_ok ? 0 : 1;
}

const char* type_name(LoxType t) {
  switch (t) {
    case LoxType::RegularLoxodromic: return "regular-loxodromic";
    case LoxType::IrregularLoxodromic: return "irregular-loxodromic";
    default: return "not-loxodromic";
  }
}

int run_classify(const Options& opt) {
  json in = load_json_file(opt.in_path);
  std::vector<json> elements;
  if (in.contains("elements"))
    for (const auto& e : in.at("elements")) elements.push_back(e);
  else
    elements.push_back(in);
  vlog(opt, "classifying " + std::to_string(elements.size()) + " elements");

  json results = json::array();
  std::ostringstream csv;
  csv << "index,type,undecidable,max_log_modulus,t0,chi\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    GroupElement g = element_from_json(elements[i]);
    Classification cls = classify_element(g);
    json row{{"index", i},
             {"type", type_name(cls.type)},
             {"boundary_undecidable", cls.boundary_undecidable},
             {"max_log_modulus", cls.max_log_modulus}};
    csv << i << ',' << type_name(cls.type) << ',' << (cls.boundary_undecidable ? 1 : 0)
        << ',' << format_full(cls.max_log_modulus);
    if (cls.type == LoxType::RegularLoxodromic && cls.data) {
      row["lox"] = lox_to_json(*cls.data);
      row["t0"] = cls.data->t0;
      row["chi"] = cls.data->phases.chi;
      csv << ',' << format_full(cls.data->t0) << ',' << format_full(cls.data->phases.chi);
    } else {
      csv << ",,";
    }
    csv << '\n';
    results.push_back(std::move(row));
  }
  if (wants_csv(opt))
    emit(opt, csv.str());
  else
    emit_json(opt, json{{"results", results}});
  return 0;
}

int run_close(const Options& opt) {
  json in = load_json_file(opt.in_path);
  AnosovConstants ac = anosov_constants(in.value("T1", 1.0), in.value("delta", 0.1));
  std::vector<json> experiments;
  if (in.contains("experiments"))
    for (const auto& e : in.at("experiments")) experiments.push_back(e);
  else
    experiments.push_back(in);
  vlog(opt, "running " + std::to_string(experiments.size()) + " closing experiments");

  std::vector<json> rows(experiments.size());
  std::vector<char> certified(experiments.size(), 0);
  parallel_for(opt, static_cast<int>(experiments.size()), [&](int i) {
    const json& e = experiments[i];
    GroupElement gamma = element_from_json(e.at("gamma"));
    GroupElement x = element_from_json(e.at("x"));
    double T = e.at("T").get<double>();
    double tol = e.value("tol", opt.tol);
    ClosingResult res = close_orbit(x, gamma, T, ac, tol);
    rows[i] = closing_to_json(res);
    certified[i] = res.certified ? 1 : 0;
    vlog(opt, "experiment " + std::to_string(i) + (res.certified ? " certified" : " uncertified"));
  });

  bool all_certified = std::all_of(certified.begin(), certified.end(), [](char c) { return c; });
  json out{{"T1", ac.T1}, {"delta", ac.delta}, {"C1", ac.C1}, {"eps1", ac.eps1},
           {"results", rows}};
  if (wants_csv(opt)) {
    std::ostringstream csv;
    csv << "index,certified,degenerate,converged,epsilon,t0,residual,iterations\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const json& r = rows[i];
      double eps = r["epsilon"].is_number() ? r["epsilon"].get<double>()
                                            : std::numeric_limits<double>::infinity();
      csv << i << ',' << (r["certified"].get<bool>() ? 1 : 0) << ','
          << (r["degenerate"].get<bool>() ? 1 : 0) << ','
          << (r["converged"].get<bool>() ? 1 : 0) << ',' << format_full(eps) << ','
          << format_full(r["t0"].get<double>()) << ','
          << format_full(r["residual"].get<double>()) << ','
          << r["iterations"].get<int>() << '\n';
    }
    emit(opt, csv.str());
  } else {
    emit_json(opt, out);
  }
  return all_certified ? 0 : 2;
}

int run_qeval(const Options& opt) {
  json in = load_json_file(opt.in_path);
  PoincareKernel kern = kernel_from_json(in.at("kernel"));
  int n = kern.lox.g.n;
  std::vector<BallPoint> points;
  if (in.contains("points")) {
    for (const auto& p : in.at("points")) points.push_back(make_ball_point(cvector_from_json(p)));
  } else {
    int count = in.value("count", 12);
    double radius = in.value("radius", 0.6);
    for (int i = 0; i < count; ++i) points.push_back(spiral_point(n, i, count, radius));
  }
  double tmax = in.value("tmax", 20.0);
  int quad_points = in.value("quad_points", 800);
  double tail_tol = opt.tol_given ? opt.tol : 1e-8;
  vlog(opt, "evaluating kernel at " + std::to_string(points.size()) + " points");

  std::vector<json> rows(points.size());
  std::vector<std::string> csv_rows(points.size());
  parallel_for(opt, static_cast<int>(points.size()), [&](int i) {
    Multivector closed = q_closed(kern, points[i]);
    double tail = 0.0;
    Multivector integral = q_integral(kern, points[i], tmax, quad_points, &tail, tail_tol);
    rows[i] = json{{"z", cvector_to_json(points[i].z)},
                   {"closed", multivector_to_json(closed)},
                   {"integral", multivector_to_json(integral)},
                   {"tail", tail}};
    std::ostringstream line;
    for (const auto& [bits, c] : closed.coeff) {
      cplx ic = integral.at(SubsetIndex(bits));
      line << i << ",\"" << SubsetIndex(bits).to_string() << "\","
           << format_full(c.real()) << ',' << format_full(c.imag()) << ','
           << format_full(ic.real()) << ',' << format_full(ic.imag()) << '\n';
    }
    csv_rows[i] = line.str();
  });

  if (wants_csv(opt)) {
    std::string csv = "point,I,closed_re,closed_im,integral_re,integral_im\n";
    for (const auto& r : csv_rows) csv += r;
    emit(opt, csv);
  } else {
    emit_json(opt, json{{"results", rows}});
  }
  return 0;
}

int run_poincare(const Options& opt) {
  json in = load_json_file(opt.in_path);
  PoincareKernel kern = kernel_from_json(in.at("kernel"));
  std::vector<GroupElement> generators;
  for (const auto& e : in.at("generators")) generators.push_back(element_from_json(e));
  int radius = in.value("radius", 3);
  BallPoint z = make_ball_point(cvector_from_json(in.at("z")));

  std::vector<CosetRep> cosets = coset_enumerate(generators, kern.lox, radius);
  vlog(opt, "summing over " + std::to_string(cosets.size()) + " cosets");
  PoincareValue pv = poincare_series(kern, cosets, z);

  if (wants_csv(opt)) {
    std::ostringstream csv;
    csv << "I,m,re,im\n";
    for (const auto& [bits, c] : pv.value.coeff)
      csv << '"' << SubsetIndex(bits).to_string() << "\"," << format_full(kern.m) << ','
          << format_full(c.real()) << ',' << format_full(c.imag()) << '\n';
    emit(opt, csv.str());
  } else {
    emit_json(opt, json{{"value", multivector_to_json(pv.value)},
                        {"shell_tails", pv.shell_tails},
                        {"tails_decreasing", pv.tails_decreasing},
                        {"cosets", cosets.size()}});
  }
  return pv.tails_decreasing ? 0 : 2;
}

int run_fourier(const Options& opt) {
  json in = load_json_file(opt.in_path);
  PoincareKernel kern = kernel_from_json(in.at("kernel"));
  double C = in.value("C", std::abs(kern.m) + 2.0);
  int quad_points = in.value("quad_points", 0);
  std::vector<SubsetIndex> components;
  if (in.contains("components"))
    for (const auto& c : in.at("components"))
      components.push_back(SubsetIndex::from_list(c.get<std::vector<int>>()));
  else
    components.push_back(kern.I);

  SuperFunction qf = q_function(kern);
  ScreenEvaluator h = [&qf, &kern](double t, const GroupElement& w) {
    return screen_h(qf, kern.k, kern.lox, t, w);
  };
  vlog(opt, "extracting spectrum in window (-" + std::to_string(C) + ", " + std::to_string(C) + ")");
  FourierSpectrum spec = fourier_coefficients(h, kern.lox, components, kern.k, C, quad_points);

  if (wants_csv(opt))
    emit(opt, spectrum_to_csv(spec));
  else
    emit_json(opt, spectrum_to_json(spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Geometry, dynamics and spanning-kernel toolkit for the super unit ball"};
  app.add_option("--cmd", opt.cmd, "Command: verify, classify, close, qeval, poincare, fourier")
      ->required()
      ->check(CLI::IsMember({"verify", "classify", "close", "qeval", "poincare", "fourier"}));
  app.add_option("--in", opt.in_path, "Input JSON file");
  app.add_option("--out", opt.out_path, "Output file (.csv selects CSV, otherwise JSON)");
  auto* tol_opt = app.add_option("--tol", opt.tol, "Closing-solver tolerance; overrides the qeval tail tolerance when given")
      ->check(CLI::PositiveNumber);
  app.add_option("--quad-radial", opt.quad_radial, "Radial quadrature points (verify)")
      ->check(CLI::PositiveNumber);
  app.add_option("--quad-angular", opt.quad_angular, "Angular quadrature points (verify)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", opt.jobs, "Worker threads for close/qeval batches")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Random seed for verify");
  CLI11_PARSE(app, argc, argv);
  opt.tol_given = tol_opt->count() > 0;

  const char* log_env = std::getenv("SUPCUSP_LOG");
  opt.verbose = log_env != nullptr && log_env[0] != '\0' && std::string(log_env) != "0";

  try {
    if (opt.cmd == "verify") return run_verify(opt);
    if (opt.in_path.empty()) throw std::invalid_argument("--in is required for " + opt.cmd);
    if (opt.cmd == "classify") return run_classify(opt);
    if (opt.cmd == "close") return run_close(opt);
    if (opt.cmd == "qeval") return run_qeval(opt);
    if (opt.cmd == "poincare") return run_poincare(opt);
    if (opt.cmd == "fourier") return run_fourier(opt);
    throw std::invalid_argument("unknown command " + opt.cmd);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
