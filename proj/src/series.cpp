#include "supcusp/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace supcusp {

namespace {

// Exact integer power by binary exponentiation; negative exponents go
// through the reciprocal.
cplx ipow(cplx base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  cplx acc = 1.0, b = base;
  for (int k = e; k > 0; k >>= 1) {
    if (k & 1) acc *= b;
    b *= b;
  }
  return acc;
}

// Compensated accumulator for multivector sums, so the result does not
// depend on the order contributions arrive in beyond roundoff.
struct MvKahan {
  int r = 0;
  std::map<std::uint32_t, std::pair<cplx, cplx>> acc;  // sum, compensation

  void add(const Multivector& v) {
    for (const auto& [bits, c] : v.coeff) {
      auto& [sum, comp] = acc[bits];
      cplx y = c - comp;
      cplx s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
  }

  Multivector value() const {
    Multivector out(r);
    for (const auto& [bits, sc] : acc) out.add(SubsetIndex(bits), sc.first);
    return out;
  }
};

double fractional(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

double lattice_offset(const LoxodromicData& lox, SubsetIndex I, int k) {
  return fractional((k + I.size()) * lox.phases.chi + subset_trace(lox.phases, I));
}

std::vector<double> frequency_lattice(const LoxodromicData& lox, SubsetIndex I,
                                      int k, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("frequency_lattice: window must be positive");
  if (!(lox.t0 > 0.0)) throw std::invalid_argument("frequency_lattice: period must be positive");
  double nu = lattice_offset(lox, I, k);
  std::vector<double> out;
  long jlo = static_cast<long>(std::floor(nu - C * lox.t0));
  long jhi = static_cast<long>(std::ceil(nu + C * lox.t0));
  for (long j = jlo; j <= jhi; ++j) {
    double m = (static_cast<double>(j) - nu) / lox.t0;
    if (m > -C && m < C) out.push_back(m);
  }
  return out;
}

bool in_flow_centralizer(const GroupElement& w, double tol) {
  GroupElement a = a_flow(w.n, w.r, 1.0);
  if ((w * a).frobenius_distance(a * w) > tol * (1.0 + w.gprime.norm())) return false;
  BallPoint origin = make_ball_point(Vec::Zero(w.n));
  return mobius(w, origin).z.norm() <= tol;
}

Multivector screen_h(const SuperFunction& f, int k, const LoxodromicData& lox,
                     double t, const GroupElement& w) {
  if (w.n != lox.g.n || w.r != lox.g.r)
    throw std::invalid_argument("screen_h: twist has the wrong block sizes");
  if (!in_flow_centralizer(w))
    throw std::invalid_argument("screen_h: twist does not centralize the flow at the origin");
  return lift(f, lox.g * a_flow(lox.g.n, lox.g.r, t) * w, k);
}

double FourierSpectrum::lattice_residual() const {
  double worst = 0.0;
  for (const auto& md : modes) {
    auto it = offsets.find(md.I.bits);
    double nu = it == offsets.end() ? 0.0 : it->second;
    double raw = md.m * t0 + nu;
    worst = std::max(worst, std::abs(raw - std::round(raw)));
  }
  return worst;
}

FourierSpectrum fourier_coefficients(const ScreenEvaluator& h,
                                     const LoxodromicData& lox,
                                     const std::vector<SubsetIndex>& components,
                                     int k, double C, int quad_points) {
  if (!(C > 0.0)) throw std::invalid_argument("fourier_coefficients: window must be positive");
  if (!(lox.t0 > 0.0)) throw std::invalid_argument("fourier_coefficients: period must be positive");
  const double t0 = lox.t0;
  GroupElement id = GroupElement::identity(lox.g.n, lox.g.r);
  GroupElement w0inv = lox.w0.inverse();
  for (double s : {0.13, 0.41, 0.77}) {
    Multivector lhs = h(s * t0 + t0, id);
    Multivector rhs = h(s * t0, w0inv);
    if (mv_norm(lhs - rhs) > 1e-6 * (1.0 + mv_norm(lhs)))
      throw std::invalid_argument(
          "fourier_coefficients: evaluator is not covariant along the closed flow line");
  }

  int N = std::max(quad_points, static_cast<int>(std::ceil(16.0 * (C * t0 + 1.0))));
  std::vector<Multivector> samples(N);
  for (int j = 0; j < N; ++j) samples[j] = h(t0 * j / N, id);

  std::vector<SubsetIndex> comps = components;
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());

  FourierSpectrum out;
  out.t0 = t0;
  for (SubsetIndex I : comps) {
    out.offsets[I.bits] = lattice_offset(lox, I, k);
    for (double m : frequency_lattice(lox, I, k, C)) {
      cplx sum = 0.0, comp = 0.0;
      for (int j = 0; j < N; ++j) {
        double t = t0 * j / N;
        cplx term = samples[j].at(I) * std::exp(cplx(0.0, -2.0 * M_PI * m * t));
        cplx y = term - comp;
        cplx s = sum + y;
        comp = (s - sum) - y;
        sum = s;
      }
      out.modes.push_back({I, m, sum / static_cast<double>(N)});
    }
  }
  return out;
}

FourierSpectrum reverse_bernstein(const FourierSpectrum& spec, double C,
                                  double* sup_ratio) {
  if (!(C > 0.0)) throw std::invalid_argument("reverse_bernstein: window must be positive");
  FourierSpectrum out;
  out.t0 = spec.t0;
  out.offsets = spec.offsets;
  for (const auto& md : spec.modes) {
    if (std::abs(md.m) < C * (1.0 - 1e-12))
      throw std::invalid_argument("reverse_bernstein: a frequency lies inside the excluded window");
    out.modes.push_back({md.I, md.m, md.b / cplx(0.0, 2.0 * M_PI * md.m)});
  }
  if (sup_ratio) {
    std::set<std::uint32_t> comps;
    for (const auto& md : spec.modes) comps.insert(md.I.bits);
    double ratio = 0.0;
    for (std::uint32_t bits : comps) {
      double sup_s = 0.0, sup_a = 0.0;
      for (int i = 0; i < 512; ++i) {
        double t = spec.t0 * i / 512.0;
        cplx s = 0.0, a = 0.0;
        for (size_t j = 0; j < spec.modes.size(); ++j) {
          if (spec.modes[j].I.bits != bits) continue;
          cplx phase = std::exp(cplx(0.0, 2.0 * M_PI * spec.modes[j].m * t));
          s += spec.modes[j].b * phase;
          a += out.modes[j].b * phase;
        }
        sup_s = std::max(sup_s, std::abs(s));
        sup_a = std::max(sup_a, std::abs(a));
      }
      if (sup_s > 0.0) ratio = std::max(ratio, sup_a / sup_s);
    }
    *sup_ratio = ratio;
  }
  return out;
}

PoincareKernel make_poincare_kernel(const LoxodromicData& lox, SubsetIndex I,
                                    double m, int k) {
  if (!(lox.t0 > 0.0)) throw std::invalid_argument("poincare kernel: period must be positive");
  if (k < 2 * lox.g.n + 1 - I.size())
    throw std::invalid_argument("poincare kernel: weight too small for absolute convergence");
  double raw = m * lox.t0 + lattice_offset(lox, I, k);
  if (std::abs(raw - std::round(raw)) > 1e-9 * (1.0 + std::abs(m * lox.t0)))
    throw std::invalid_argument("poincare kernel: frequency is off the admissible lattice");
  return PoincareKernel{lox, I, m, k};
}

Multivector q_closed(const PoincareKernel& kern, const BallPoint& z) {
  const LoxodromicData& lox = kern.lox;
  const int kappa = kern.k + kern.I.size();
  BallPoint v = mobius(lox.g.inverse(), z);
  cplx dp = jordan_delta(z.z, lox.x_plus);
  cplx dm = jordan_delta(z.z, lox.x_minus);
  cplx expo = -0.5 * static_cast<double>(kappa) * (std::log(dp) + std::log(dm)) +
              cplx(0.0, M_PI * kern.m) * std::log((1.0 + v.z(0)) / (1.0 - v.z(0)));
  cplx scal = std::exp(expo);
  if (!std::isfinite(scal.real()) || !std::isfinite(scal.imag()))
    throw std::overflow_error("q_closed: scalar factor leaves double range");
  Multivector odd = minor_action(lox.g.inverse().E.transpose(), kern.I);
  return odd * scal;
}

Multivector q_integral(const PoincareKernel& kern, const BallPoint& z,
                       double tmax, int quad_points, double* tail_estimate,
                       double tail_tol) {
  const LoxodromicData& lox = kern.lox;
  const int n = lox.g.n, r = lox.g.r;
  const int kappa = kern.k + kern.I.size();
  BallPoint origin = make_ball_point(Vec::Zero(n));
  auto scalar = [&](double t) -> cplx {
    GroupElement gat = lox.g * a_flow(n, r, t);
    BallPoint c = mobius(gat, origin);
    cplx del = jordan_delta(z.z, c.z);
    cplx jj = cocycle(gat, origin);
    return std::exp(cplx(0.0, 2.0 * M_PI * kern.m * t)) * ipow(del, -kappa) *
           ipow(std::conj(jj), kappa);
  };
  int panels = std::max(1, static_cast<int>(std::ceil(2.0 * tmax)));
  int per_panel = std::clamp(quad_points / panels, 4, 64);
  cplx val = line_integrate(-tmax, tmax, per_panel, scalar);
  Multivector odd = minor_action(lox.g.inverse().E.transpose(), kern.I);
  Multivector result = odd * val;
  double tail = (std::abs(scalar(tmax)) + std::abs(scalar(-tmax))) / kappa *
                mv_norm(odd);
  if (tail_estimate) *tail_estimate = tail;
  if (tail > tail_tol * (1.0 + mv_norm(result)))
    throw std::runtime_error("q_integral: truncation tail exceeds tolerance, increase tmax");
  return result;
}

SuperFunction q_function(const PoincareKernel& kern) {
  SuperFunction f;
  f.n = kern.lox.g.n;
  f.r = kern.lox.g.r;
  f.degree = kern.I.size();
  f.weight_hint = kern.k;
  f.eval = [kern](const BallPoint& z) { return q_closed(kern, z); };
  return f;
}

std::vector<CosetRep> coset_enumerate(const std::vector<GroupElement>& generators,
                                      const LoxodromicData& lox, int L,
                                      int j_max, double tol) {
  if (generators.empty())
    throw std::invalid_argument("coset_enumerate: need at least one generator");
  const int n = lox.g.n, r = lox.g.r;
  GroupElement id = GroupElement::identity(n, r);
  GroupElement gamma0 = loxodromic_reconstruct(lox);

  std::vector<GroupElement> powers;
  powers.reserve(2 * j_max + 1);
  {
    std::vector<GroupElement> side(j_max + 1, id);
    GroupElement gi = gamma0.inverse();
    for (int j = 1; j <= j_max; ++j) side[j] = side[j - 1] * gi;
    for (int j = j_max; j >= 1; --j) powers.push_back(side[j]);
    side.assign(j_max + 1, id);
    for (int j = 1; j <= j_max; ++j) side[j] = side[j - 1] * gamma0;
    for (int j = 0; j <= j_max; ++j) powers.push_back(side[j]);
  }
  std::vector<double> pnorm(powers.size());
  for (size_t i = 0; i < powers.size(); ++i) pnorm[i] = powers[i].gprime.norm();

  auto same_coset = [&](const GroupElement& cand, const GroupElement& rep) {
    GroupElement d = cand * rep.inverse();
    double dn = d.gprime.norm();
    int matches = 0;
    for (size_t i = 0; i < powers.size(); ++i) {
      double bound = tol * (1.0 + pnorm[i]);
      if (std::abs(dn - pnorm[i]) > bound) continue;
      if (d.frobenius_distance(powers[i]) <= bound && ++matches == 2)
        throw std::logic_error(
            "coset_enumerate: word difference matches two distinct powers; "
            "dedup tolerance misconfigured");
    }
    return matches == 1;
  };

  std::vector<GroupElement> letters = generators;
  for (const auto& g : generators) letters.push_back(g.inverse());

  std::vector<CosetRep> reps;
  reps.push_back({{}, id});
  size_t shell_begin = 0;
  for (int depth = 1; depth <= L; ++depth) {
    size_t shell_end = reps.size();
    for (size_t i = shell_begin; i < shell_end; ++i) {
      for (size_t ell = 0; ell < letters.size(); ++ell) {
        CosetRep cand;
        cand.word = reps[i].word;
        cand.word.push_back(static_cast<int>(ell));
        cand.matrix = reps[i].matrix * letters[ell];
        bool dup = false;
        for (size_t j = 0; j < reps.size() && !dup; ++j)
          dup = same_coset(cand.matrix, reps[j].matrix);
        if (!dup) reps.push_back(std::move(cand));
      }
    }
    if (shell_end == reps.size()) break;
    shell_begin = shell_end;
  }
  return reps;
}

PoincareValue poincare_series(const PoincareKernel& kern,
                              const std::vector<CosetRep>& cosets,
                              const BallPoint& z) {
  if (cosets.empty()) throw std::invalid_argument("poincare_series: empty coset list");
  SuperFunction qf = q_function(kern);
  size_t maxlen = 0;
  for (const auto& rep : cosets) maxlen = std::max(maxlen, rep.word.size());

  MvKahan total{kern.lox.g.r, {}};
  std::vector<double> tails;
  for (size_t len = 0; len <= maxlen; ++len) {
    Multivector shell(kern.lox.g.r);
    for (const auto& rep : cosets) {
      if (rep.word.size() != len) continue;
      Multivector contrib = slash(qf, rep.matrix, kern.k).eval(z);
      shell += contrib;
      total.add(contrib);
    }
    tails.push_back(mv_norm(shell));
  }

  PoincareValue out{total.value(), tails, true};
  size_t s = tails.size();
  if (s >= 3 && tails[s - 1] >= tails[s - 2] && tails[s - 2] >= tails[s - 3]) {
    out.tails_decreasing = false;
    std::fprintf(stderr,
                 "poincare_series: shell norms are not decaying over the last "
                 "three shells; the truncation is unreliable\n");
  }
  return out;
}

cplx reproducing_check(const BallPoint& w, SubsetIndex I, int k,
                       const SuperFunction& f, const QuadratureSpec& quad) {
  const int n = f.n, r = f.r;
  const int kappa = k + I.size();
  if (k < 2 * n + 1 - I.size())
    throw std::invalid_argument("reproducing_check: weight below the kernel's convergence bound");
  cplx fw = f.eval(w).at(I);
  if (std::abs(fw) < 1e-12)
    throw std::invalid_argument("reproducing_check: f_I(w) is numerically zero, choose another w");
  Vec wz = w.z;
  SuperFunction kernel;
  kernel.n = n;
  kernel.r = r;
  kernel.degree = I.size();
  kernel.weight_hint = k;
  kernel.eval = [wz, I, kappa, r](const BallPoint& z) {
    return Multivector::monomial(r, I, ipow(jordan_delta(z.z, wz), -kappa));
  };
  return petersson_pair(kernel, f, k, quad) / fw;
}

}  // namespace supcusp
