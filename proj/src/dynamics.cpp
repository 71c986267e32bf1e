#include "supcusp/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace supcusp {

GroupElement flow(const GroupElement& g, double t) {
  return g * a_flow(g.n, g.r, t);
}

namespace {

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

LieAlgebraElement blockwise_log(const GroupElement& d) {
  LieAlgebraElement xi;
  xi.n = d.n;
  xi.r = d.r;
  xi.gblock = d.gprime.log();
  xi.eblock = d.r > 0 ? Mat(d.E.log()) : Mat(0, 0);
  return xi;
}

LieAlgebraElement chart_log(const GroupElement& g, const GroupElement& h) {
  GroupElement d = g.inverse() * h;
  Mat dg = d.gprime - Mat::Identity(d.n + 1, d.n + 1);
  Mat de = d.r > 0 ? Mat(d.E - Mat::Identity(d.r, d.r)) : Mat(0, 0);
  if (operator_norm(dg) > 0.5 || operator_norm(de) > 0.5)
    throw std::domain_error("local_distance: points are out of the chart");
  return blockwise_log(d);
}

}  // namespace

double local_distance(const GroupElement& g, const GroupElement& h) {
  return lie_norm(chart_log(g, h));
}

double expansion_rate(const GroupElement& g, const LieAlgebraElement& nu, double t) {
  GroupElement moved = g * lie_exp(nu);
  double base = local_distance(moved, g);
  if (base == 0.0)
    throw std::invalid_argument("expansion_rate: displacement vanishes");
  return local_distance(flow(moved, t), flow(g, t)) / base;
}

AnosovConstants anosov_constants(double T1, double delta) {
  if (T1 <= 0.0 || delta <= 0.0)
    throw std::invalid_argument("anosov_constants: T1 and delta must be positive");
  AnosovConstants ac;
  ac.T1 = T1;
  ac.delta = delta;
  const double shrink = 1.0 - std::exp(-T1 / 2.0);
  ac.C1 = std::max(std::exp(1.5 * T1) / shrink, std::exp(2.0 * T1));
  ac.eps1 = std::min(delta * shrink / (std::exp(T1) + 1.0), T1 / ac.C1);
  return ac;
}

namespace {

struct SolveState {
  Eigen::VectorXd p;
  double rnorm = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// Damped Gauss-Newton on the flattened group residual
// z^{-1} gamma z a_{-t0} w^{-1} - 1 with z = x exp(nu), w = exp(mu) w_seed.
SolveState gauss_newton(const GroupElement& gamma, const GroupElement& x, double t_seed,
                        const GroupElement& w_seed, const SplittingBasis& basis,
                        double tol, int max_iter) {
  const int n = gamma.n, r = gamma.r;
  const auto contract = basis.contracting();
  const auto expand = basis.expanding();
  const int np = static_cast<int>(contract.size());
  const int nm = static_cast<int>(expand.size());
  const int nM = static_cast<int>(basis.m.size());
  const int nvar = np + nm + 1 + nM;
  const int ng = (n + 1) * (n + 1), ne = r * r;

  auto residual_vec = [&](const Eigen::VectorXd& q) {
    LieAlgebraElement nu = LieAlgebraElement::zero(n, r);
    for (int i = 0; i < np; ++i) nu = nu + contract[i] * q(i);
    for (int i = 0; i < nm; ++i) nu = nu + expand[i] * q(np + i);
    GroupElement z = x * lie_exp(nu);
    double t0 = q(np + nm);
    LieAlgebraElement mu = LieAlgebraElement::zero(n, r);
    for (int i = 0; i < nM; ++i) mu = mu + basis.m[i] * q(np + nm + 1 + i);
    GroupElement w = lie_exp(mu) * w_seed;
    GroupElement res = z.inverse() * gamma * z * a_flow(n, r, -t0) * w.inverse();
    Eigen::VectorXd v(2 * (ng + ne));
    int k = 0;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        cplx e = res.gprime(i, j) - (i == j ? cplx(1.0) : cplx(0.0));
        v(k++) = e.real();
        v(k++) = e.imag();
      }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        cplx e = res.E(i, j) - (i == j ? cplx(1.0) : cplx(0.0));
        v(k++) = e.real();
        v(k++) = e.imag();
      }
    return v;
  };

  SolveState st;
  st.p = Eigen::VectorXd::Zero(nvar);
  st.p(np + nm) = t_seed;
  Eigen::VectorXd res = residual_vec(st.p);
  st.rnorm = res.norm();

  const double fd = 1e-7;
  for (; st.iterations < max_iter && st.rnorm > tol; ++st.iterations) {
    Eigen::MatrixXd jac(res.size(), nvar);
    for (int c = 0; c < nvar; ++c) {
      Eigen::VectorXd pp = st.p, pm = st.p;
      pp(c) += fd;
      pm(c) -= fd;
      jac.col(c) = (residual_vec(pp) - residual_vec(pm)) / (2.0 * fd);
    }
    Eigen::VectorXd step =
        jac.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(res);
    bool improved = false;
    double damp = 1.0;
    for (int bt = 0; bt < 10; ++bt) {
      Eigen::VectorXd cand = st.p - damp * step;
      Eigen::VectorXd cres = residual_vec(cand);
      if (cres.norm() < st.rnorm) {
        st.p = cand;
        res = cres;
        st.rnorm = cres.norm();
        improved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!improved) break;
  }
  return st;
}

}  // namespace

ClosingResult close_orbit(const GroupElement& x, const GroupElement& gamma, double T,
                          const AnosovConstants& ac, double tol, int max_iter) {
  const int n = gamma.n, r = gamma.r;
  const GroupElement id = GroupElement::identity(n, r);

  ClosingResult out;
  out.z = x;
  out.w = id;
  out.t0 = T;

  try {
    out.epsilon = local_distance(gamma * x, flow(x, T));
  } catch (const std::domain_error&) {
    out.epsilon = std::numeric_limits<double>::infinity();
  }

  if (gamma.frobenius_distance(id) <= 1e-8 * (1.0 + id.gprime.norm())) {
    out.degenerate = true;
    out.t0 = 0.0;
    out.certified = std::isfinite(out.epsilon) && T <= out.epsilon + 1e-9;
    return out;
  }

  SplittingBasis basis = splitting_basis(n, r);
  SolveState st = gauss_newton(gamma, x, T, id, basis, tol, max_iter);
  GroupElement w_seed = id;

  if (st.rnorm > tol) {
    // The identity seed cannot reach centralizer components away from
    // the identity; reseed from the spectral axis data.
    try {
      Classification cls = classify_element(gamma);
      if (cls.type == LoxType::RegularLoxodromic) {
        SolveState retry = gauss_newton(gamma, x, cls.data->t0, cls.data->w0, basis,
                                        tol, max_iter);
        if (retry.rnorm < st.rnorm) {
          retry.iterations += st.iterations;
          st = retry;
          w_seed = cls.data->w0;
        }
      }
    } catch (const std::exception&) {
    }
  }

  const auto contract = basis.contracting();
  const auto expand = basis.expanding();
  const int np = static_cast<int>(contract.size());
  const int nm = static_cast<int>(expand.size());
  const int nM = static_cast<int>(basis.m.size());
  LieAlgebraElement nu = LieAlgebraElement::zero(n, r);
  for (int i = 0; i < np; ++i) nu = nu + contract[i] * st.p(i);
  for (int i = 0; i < nm; ++i) nu = nu + expand[i] * st.p(np + i);
  LieAlgebraElement mu = LieAlgebraElement::zero(n, r);
  for (int i = 0; i < nM; ++i) mu = mu + basis.m[i] * st.p(np + nm + 1 + i);

  out.z = x * lie_exp(nu);
  out.t0 = st.p(np + nm);
  out.w = lie_exp(mu) * w_seed;
  out.iterations = st.iterations;
  out.residual = st.rnorm;
  out.converged = st.rnorm <= tol;
  out.certified = out.converged && std::isfinite(out.epsilon) &&
                  out.epsilon <= ac.eps1 && T >= ac.T1 && out.t0 > 0.0;

  if (std::isfinite(out.epsilon) && out.epsilon > 0.0) {
    const double allowed = ac.C1 * out.epsilon;
    try {
      double dw = local_distance(id, out.w);
      out.bound_ratios["Anosov-i-t0w"] = std::hypot(out.t0 - T, dw) / allowed;
    } catch (const std::domain_error&) {
      // w is far from the identity component; the displacement bound
      // does not apply in this chart.
    }
    const char* names[5] = {"Anosov-i-shadow-0", "Anosov-i-shadow-T/4",
                            "Anosov-i-shadow-T/2", "Anosov-i-shadow-3T/4",
                            "Anosov-i-shadow-T"};
    const double fracs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i < 5; ++i) {
      double tau = fracs[i] * T;
      try {
        double d = local_distance(flow(x, tau), flow(out.z, tau));
        double bound = allowed * (std::exp(-tau) + std::exp(-(T - tau)));
        out.bound_ratios[names[i]] = d / bound;
      } catch (const std::domain_error&) {
      }
    }
  }
  return out;
}

LoxodromicData axis_oracle(const GroupElement& gamma) {
  Classification cls = classify_element(gamma);
  if (cls.type != LoxType::RegularLoxodromic)
    throw std::invalid_argument("axis_oracle: element is not regular loxodromic");
  return *cls.data;
}

double conjugator_defect(const GroupElement& gamma, const GroupElement& z) {
  LoxodromicData lox = axis_oracle(gamma);
  GroupElement d = lox.g.inverse() * z;
  RootComponents rc = root_split(blockwise_log(d));
  double p1 = lie_norm(rc.plus1), m1 = lie_norm(rc.minus1);
  double p2 = lie_norm(rc.plus2), m2 = lie_norm(rc.minus2);
  return std::sqrt(p1 * p1 + m1 * m1 + p2 * p2 + m2 * m2);
}

}  // namespace supcusp
