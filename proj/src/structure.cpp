#include "supcusp/structure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "supcusp/cayley.hpp"

namespace supcusp {

namespace {
constexpr cplx kI(0.0, 1.0);

double frac(double x) {
  double f = x - std::floor(x);
  return (f >= 1.0) ? 0.0 : f;
}
}  // namespace

GroupElement a_flow(int n, int r, double t) {
  GroupElement g = GroupElement::identity(n, r);
  g.gprime(0, 0) = std::cosh(t);
  g.gprime(0, n) = std::sinh(t);
  g.gprime(n, 0) = std::sinh(t);
  g.gprime(n, n) = std::cosh(t);
  return g;
}

GroupElement rho_embed(const Eigen::Matrix2cd& m, int n, int r) {
  Eigen::Matrix2cd J2 = Eigen::Matrix2cd::Identity();
  J2(1, 1) = -1.0;
  double res = (m.adjoint() * J2 * m - J2).norm() + std::abs(m.determinant() - cplx(1.0));
  if (res > 1e-10)
    throw std::invalid_argument("rho_embed: input is not in SU(1,1)");
  GroupElement g = GroupElement::identity(n, r);
  g.gprime(0, 0) = m(0, 0);
  g.gprime(0, n) = m(0, 1);
  g.gprime(n, 0) = m(1, 0);
  g.gprime(n, n) = m(1, 1);
  return g;
}

LieAlgebraElement LieAlgebraElement::zero(int n, int r) {
  return LieAlgebraElement{n, r, Mat::Zero(n + 1, n + 1), Mat::Zero(r, r)};
}

LieAlgebraElement LieAlgebraElement::operator+(const LieAlgebraElement& o) const {
  return LieAlgebraElement{n, r, gblock + o.gblock, eblock + o.eblock};
}

LieAlgebraElement LieAlgebraElement::operator-(const LieAlgebraElement& o) const {
  return LieAlgebraElement{n, r, gblock - o.gblock, eblock - o.eblock};
}

LieAlgebraElement LieAlgebraElement::operator*(double s) const {
  return LieAlgebraElement{n, r, gblock * s, eblock * s};
}

double algebra_residual(const LieAlgebraElement& xi) {
  Mat J = signature_form(xi.n);
  double res = (xi.gblock.adjoint() * J + J * xi.gblock).norm();
  if (xi.r > 0) res += (xi.eblock.adjoint() + xi.eblock).norm();
  res += std::abs(xi.gblock.trace() - xi.eblock.trace());
  return res;
}

LieAlgebraElement bracket(const LieAlgebraElement& a, const LieAlgebraElement& b) {
  if (a.n != b.n || a.r != b.r)
    throw std::invalid_argument("bracket: size mismatch");
  return LieAlgebraElement{a.n, a.r, a.gblock * b.gblock - b.gblock * a.gblock,
                           a.eblock * b.eblock - b.eblock * a.eblock};
}

LieAlgebraElement ad_conjugate(const GroupElement& g, const LieAlgebraElement& xi) {
  if (g.n != xi.n || g.r != xi.r)
    throw std::invalid_argument("ad_conjugate: size mismatch");
  GroupElement gi = g.inverse();
  return LieAlgebraElement{xi.n, xi.r, g.gprime * xi.gblock * gi.gprime,
                           xi.r > 0 ? Mat(g.E * xi.eblock * gi.E) : Mat(0, 0)};
}

double lie_inner(const LieAlgebraElement& a, const LieAlgebraElement& b) {
  cplx t = (a.gblock.adjoint() * b.gblock).trace();
  if (a.r > 0) t += (a.eblock.adjoint() * b.eblock).trace();
  return 0.5 * t.real();
}

double lie_norm(const LieAlgebraElement& a) { return std::sqrt(lie_inner(a, a)); }

GroupElement lie_exp(const LieAlgebraElement& xi) {
  GroupElement g;
  g.n = xi.n;
  g.r = xi.r;
  g.gprime = xi.gblock.exp();
  g.E = xi.r > 0 ? Mat(xi.eblock.exp()) : Mat(0, 0);
  return g;
}

LieAlgebraElement flow_generator(int n, int r) {
  LieAlgebraElement xi = LieAlgebraElement::zero(n, r);
  xi.gblock(0, n) = 1.0;
  xi.gblock(n, 0) = 1.0;
  return xi;
}

RootComponents root_split(const LieAlgebraElement& xi) {
  const int n = xi.n, r = xi.r;
  Mat R = cayley_matrix(n);
  Mat eta = R * xi.gblock * R.transpose();
  auto back = [&](const Mat& m) { return Mat(R.transpose() * m * R); };
  Mat zero = Mat::Zero(n + 1, n + 1);

  Mat p2 = zero, m2 = zero, p1 = zero, m1 = zero;
  p2(0, n) = eta(0, n);
  m2(n, 0) = eta(n, 0);
  if (n >= 2) {
    p1.block(0, 1, 1, n - 1) = eta.block(0, 1, 1, n - 1);
    p1.block(1, n, n - 1, 1) = eta.block(1, n, n - 1, 1);
    m1.block(1, 0, n - 1, 1) = eta.block(1, 0, n - 1, 1);
    m1.block(n, 1, 1, n - 1) = eta.block(n, 1, 1, n - 1);
  }
  Mat zero_root = eta - p2 - m2 - p1 - m1;
  cplx ca = 0.5 * (eta(0, 0) - eta(n, n));
  Mat apat = zero;
  apat(0, 0) = ca;
  apat(n, n) = -ca;
  Mat mpat = zero_root - apat;

  RootComponents rc;
  rc.a_part = LieAlgebraElement{n, r, back(apat), Mat::Zero(r, r)};
  rc.m_part = LieAlgebraElement{n, r, back(mpat), xi.eblock};
  rc.plus2 = LieAlgebraElement{n, r, back(p2), Mat::Zero(r, r)};
  rc.minus2 = LieAlgebraElement{n, r, back(m2), Mat::Zero(r, r)};
  rc.plus1 = LieAlgebraElement{n, r, back(p1), Mat::Zero(r, r)};
  rc.minus1 = LieAlgebraElement{n, r, back(m1), Mat::Zero(r, r)};
  return rc;
}

std::vector<LieAlgebraElement> SplittingBasis::contracting() const {
  std::vector<LieAlgebraElement> out = plus1;
  out.insert(out.end(), plus2.begin(), plus2.end());
  return out;
}

std::vector<LieAlgebraElement> SplittingBasis::expanding() const {
  std::vector<LieAlgebraElement> out = minus1;
  out.insert(out.end(), minus2.begin(), minus2.end());
  return out;
}

namespace {

// Modified Gram-Schmidt; drops vectors whose residual norm falls
// below tol.
std::vector<LieAlgebraElement> orthonormalize(std::vector<LieAlgebraElement> vs,
                                              double tol = 1e-10) {
  std::vector<LieAlgebraElement> out;
  for (auto& v : vs) {
    for (const auto& u : out) v = v - u * lie_inner(u, v);
    double nrm = lie_norm(v);
    if (nrm > tol) out.push_back(v * (1.0 / nrm));
  }
  return out;
}

}  // namespace

SplittingBasis splitting_basis(int n, int r) {
  std::vector<LieAlgebraElement> raw;
  auto body = [&](const Mat& X) {
    raw.push_back(LieAlgebraElement{n, r, X, Mat::Zero(r, r)});
  };

  // Traceless imaginary diagonals.
  for (int j = 0; j < n; ++j) {
    Mat X = Mat::Zero(n + 1, n + 1);
    X(j, j) = kI;
    X(j + 1, j + 1) = -kI;
    body(X);
  }
  // Skew pairs inside the compact n x n block.
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat X = Mat::Zero(n + 1, n + 1);
      X(j, k) = 1.0;
      X(k, j) = -1.0;
      body(X);
      X.setZero();
      X(j, k) = kI;
      X(k, j) = kI;
      body(X);
    }
  // The mixed column q and its conjugate row.
  for (int j = 0; j < n; ++j) {
    Mat X = Mat::Zero(n + 1, n + 1);
    X(j, n) = 1.0;
    X(n, j) = 1.0;
    body(X);
    X.setZero();
    X(j, n) = kI;
    X(n, j) = -kI;
    body(X);
  }
  // Traceless part of the odd block.
  for (int j = 0; j + 1 < r; ++j) {
    Mat F = Mat::Zero(r, r);
    F(j, j) = kI;
    F(j + 1, j + 1) = -kI;
    raw.push_back(LieAlgebraElement{n, r, Mat::Zero(n + 1, n + 1), F});
  }
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k) {
      Mat F = Mat::Zero(r, r);
      F(j, k) = 1.0;
      F(k, j) = -1.0;
      raw.push_back(LieAlgebraElement{n, r, Mat::Zero(n + 1, n + 1), F});
      F.setZero();
      F(j, k) = kI;
      F(k, j) = kI;
      raw.push_back(LieAlgebraElement{n, r, Mat::Zero(n + 1, n + 1), F});
    }
  // The linked traceful direction.
  if (r > 0) {
    raw.push_back(LieAlgebraElement{
        n, r, Mat(kI / double(n + 1) * Mat::Identity(n + 1, n + 1)),
        Mat(kI / double(r) * Mat::Identity(r, r))});
  }

  raw = orthonormalize(std::move(raw));

  SplittingBasis basis;
  std::vector<LieAlgebraElement> a, m, p1, m1v, p2, m2v;
  for (const auto& xi : raw) {
    RootComponents rc = root_split(xi);
    a.push_back(rc.a_part);
    m.push_back(rc.m_part);
    p1.push_back(rc.plus1);
    m1v.push_back(rc.minus1);
    p2.push_back(rc.plus2);
    m2v.push_back(rc.minus2);
  }
  basis.a = orthonormalize(std::move(a));
  basis.m = orthonormalize(std::move(m));
  basis.plus1 = orthonormalize(std::move(p1));
  basis.minus1 = orthonormalize(std::move(m1v));
  basis.plus2 = orthonormalize(std::move(p2));
  basis.minus2 = orthonormalize(std::move(m2v));
  return basis;
}

IwasawaTriple iwasawa_decompose(const GroupElement& g) {
  const int n = g.n, r = g.r;
  BallPoint origin{Vec::Zero(n), false};
  BallPoint z = mobius(g, origin);
  HalfSpacePoint w = cayley_to_H(z);
  HeisenbergElement h{w.w1.imag(), w.w2};
  double height = w.w1.real() - 0.5 * w.w2.squaredNorm();
  if (height <= 0.0)
    throw std::logic_error("iwasawa_decompose: image of the origin left the domain");
  double t = 0.5 * std::log(height);

  Mat R = cayley_matrix(n);
  IwasawaTriple tri;
  tri.n_part = GroupElement{n, r, Mat(R.transpose() * heisenberg_matrix(h, n) * R),
                            Mat::Identity(r, r)};
  tri.t = t;
  tri.k_part = (tri.n_part * a_flow(n, r, t)).inverse() * g;

  double fix = mobius(tri.k_part, origin).z.norm();
  if (fix > 1e-9)
    throw std::logic_error("iwasawa_decompose: residual factor does not fix the origin");
  return tri;
}

namespace {

// J-orthonormal basis of the complement of span(vp, vm), where the
// form is positive definite.
Mat j_complement(const Vec& vp, const Vec& vm, const Mat& J) {
  const int N = static_cast<int>(vp.size());
  Mat C(2, N);
  C.row(0) = (J * vp).adjoint();
  C.row(1) = (J * vm).adjoint();
  Eigen::FullPivLU<Mat> lu(C);
  lu.setThreshold(1e-12);
  if (lu.dimensionOfKernel() == 0) return Mat(N, 0);
  Mat ker = lu.kernel();
  // Gram-Schmidt in the J-form.
  Mat W(N, ker.cols());
  int cols = 0;
  for (int i = 0; i < ker.cols(); ++i) {
    Vec u = ker.col(i);
    for (int j = 0; j < cols; ++j) {
      cplx proj = (W.col(j).adjoint() * J * u)(0);
      u -= proj * W.col(j);
    }
    double nn = ((u.adjoint() * J * u)(0)).real();
    if (nn <= 0.0)
      throw std::logic_error("classify_element: complement is not J-positive");
    W.col(cols++) = u / std::sqrt(nn);
  }
  return W.leftCols(cols);
}

std::optional<Classification> classify_regular(const GroupElement& gamma,
                                               const Eigen::ComplexEigenSolver<Mat>& es) {
  const int n = gamma.n, r = gamma.r;
  const auto& ev = es.eigenvalues();
  int imax = 0, imin = 0;
  for (int i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > std::abs(ev(imax))) imax = i;
    if (std::abs(ev(i)) < std::abs(ev(imin))) imin = i;
  }
  const double t0 = 0.5 * (std::log(std::abs(ev(imax))) - std::log(std::abs(ev(imin))));

  Mat J = signature_form(n);
  Vec vp = es.eigenvectors().col(imax).normalized();
  Vec vm = es.eigenvectors().col(imin).normalized();
  cplx pairing = (vp.adjoint() * J * vm)(0);
  // A near-parabolic element perturbs into nearly parallel isotropic
  // eigenvectors; the frame is then meaningless and the caller falls
  // back to the unit-circle analysis.
  if (std::abs(pairing) < 1e-10) return std::nullopt;
  vm /= -pairing;  // now vp* J vm = -1

  Mat W = j_complement(vp, vm, J);
  Mat axis(n + 1, n + 1);
  axis.col(0) = vp;
  if (W.cols() > 0) axis.middleCols(1, W.cols()) = W;
  axis.col(n) = vm;
  Mat g0 = axis * cayley_matrix(n);

  // Odd block: unitary Schur diagonalization, absorbed into the
  // conjugator; the determinant link is restored with a central phase
  // (epsilon^{n+1} = det E).
  Mat Eg(0, 0);
  cplx detE = 1.0;
  if (r > 0) {
    Eigen::ComplexSchur<Mat> schur(gamma.E);
    Eg = schur.matrixU();
    detE = Eg.determinant();
  }
  cplx mu = std::exp(std::log(detE / g0.determinant()) / double(n + 1));
  GroupElement g{n, r, Mat(mu * g0), Eg};

  GroupElement w0 = a_flow(n, r, -t0) * g.inverse() * gamma * g;

  LoxodromicData data;
  data.g = g;
  data.t0 = t0;
  data.w0 = w0;
  data.phases.d.resize(r);
  for (int j = 0; j < r; ++j)
    data.phases.d[j] = frac(std::arg(w0.E(j, j)) / (2.0 * std::numbers::pi));
  cplx jw0 = 1.0 / w0.gprime(n, n);
  data.phases.chi = frac(std::arg(jw0) / (2.0 * std::numbers::pi));

  Vec e1 = Vec::Zero(n);
  e1(0) = 1.0;
  data.x_plus = mobius(g, BallPoint{e1, true}).z;
  data.x_minus = mobius(g, BallPoint{-e1, true}).z;

  // Internal consistency: the reconstruction must reproduce gamma and
  // the torus part must centralize the flow.
  double scale = 1.0 + gamma.gprime.norm();
  GroupElement recon = loxodromic_reconstruct(data);
  if (recon.frobenius_distance(gamma) > 1e-8 * scale)
    throw std::logic_error("classify_element: reconstruction residual too large");
  double mres = std::abs(w0.gprime(0, n)) + std::abs(w0.gprime(n, 0)) +
                std::abs(w0.gprime(0, 0) - w0.gprime(n, n));
  if (n >= 2)
    mres += w0.gprime.block(0, 1, 1, n - 1).norm() +
            w0.gprime.block(1, 0, n - 1, 1).norm() +
            w0.gprime.block(1, n, n - 1, 1).norm() +
            w0.gprime.block(n, 1, 1, n - 1).norm();
  if (mres > 1e-8 * scale)
    throw std::logic_error("classify_element: torus part left the centralizer");

  Classification cls;
  cls.type = LoxType::RegularLoxodromic;
  cls.max_log_modulus = t0;
  cls.data = std::move(data);
  return cls;
}

}  // namespace

Classification classify_element(const GroupElement& gamma, double eigen_tol) {
  Eigen::ComplexEigenSolver<Mat> es(gamma.gprime, true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("classify_element: eigenvalue computation failed");
  const auto& ev = es.eigenvalues();
  double tmax = 0.0;
  for (int i = 0; i < ev.size(); ++i)
    tmax = std::max(tmax, std::abs(std::log(std::abs(ev(i)))));

  bool frame_degenerate = false;
  if (tmax > eigen_tol) {
    if (auto regular = classify_regular(gamma, es)) return *regular;
    frame_degenerate = true;
  }

  Classification cls;
  cls.max_log_modulus = tmax;
  cls.boundary_undecidable = frame_degenerate || tmax > 0.01 * eigen_tol;

  // Unit-circle spectrum. Semisimple elements sit in a conjugate of
  // the origin stabilizer; they centralize a flow conjugate exactly
  // when the eigenvalue cluster carrying the J-negative direction has
  // dimension at least two.
  Mat V = es.eigenvectors();
  Eigen::JacobiSVD<Mat> svd(V);
  double cond = svd.singularValues()(0) /
                svd.singularValues()(svd.singularValues().size() - 1);
  if (!std::isfinite(cond) || cond > 1e10) {
    cls.type = LoxType::NotLoxodromic;  // defective (parabolic-like)
    return cls;
  }

  const int N = static_cast<int>(ev.size());
  std::vector<bool> used(N, false);
  Mat J = signature_form(gamma.n);
  for (int i = 0; i < N; ++i) {
    if (used[i]) continue;
    std::vector<int> cluster{i};
    used[i] = true;
    for (int j = i + 1; j < N; ++j)
      if (!used[j] && std::abs(ev(j) - ev(i)) < 1e-6) {
        used[j] = true;
        cluster.push_back(j);
      }
    Mat Vc(N, cluster.size());
    for (size_t c = 0; c < cluster.size(); ++c) Vc.col(c) = V.col(cluster[c]);
    Mat G = Vc.adjoint() * J * Vc;
    Eigen::SelfAdjointEigenSolver<Mat> sa((G + G.adjoint()) / 2.0);
    double lo = sa.eigenvalues().minCoeff();
    // Near-defective spectra produce nearly isotropic eigenvectors
    // whose Gram entries are tiny but nonzero; only an order-one
    // negative direction identifies the cluster.
    if (lo < -1e-6) {
      cls.type = cluster.size() >= 2 ? LoxType::IrregularLoxodromic
                                     : LoxType::NotLoxodromic;
      return cls;
    }
  }
  cls.type = LoxType::NotLoxodromic;
  return cls;
}

GroupElement loxodromic_reconstruct(const LoxodromicData& lox) {
  return lox.g * a_flow(lox.g.n, lox.g.r, lox.t0) * lox.w0 * lox.g.inverse();
}

GroupElement weyl_flip(int n, int r) {
  GroupElement s = GroupElement::identity(n, r);
  s.gprime(0, 0) = -1.0;
  if (r > 0) {
    s.E(0, 0) = -1.0;
  } else {
    s.gprime *= std::exp(kI * std::numbers::pi / double(n + 1));
  }
  return s;
}

PrimitiveRoot primitive_root(const GroupElement& gamma, const LatticeContext& ctx,
                             int max_power) {
  Classification cls = classify_element(gamma);
  if (cls.type != LoxType::RegularLoxodromic)
    throw std::invalid_argument("primitive_root: element is not regular loxodromic");
  const double tg = cls.data->t0;
  const double scale = 1.0 + gamma.gprime.norm();

  std::vector<GroupElement> letters;
  for (const auto& g : ctx.generators) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::vector<GroupElement> ball{GroupElement::identity(gamma.n, gamma.r)};
  size_t frontier_begin = 0;
  for (int depth = 0; depth < ctx.word_ball; ++depth) {
    size_t frontier_end = ball.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i)
      for (const auto& letter : letters) {
        GroupElement cand = ball[i] * letter;
        bool seen = false;
        for (const auto& b : ball)
          if (b.frobenius_distance(cand) < 1e-9 * scale) {
            seen = true;
            break;
          }
        if (!seen) ball.push_back(cand);
      }
    frontier_begin = frontier_end;
  }

  PrimitiveRoot best;
  best.root = gamma;
  best.power = 1;
  best.not_proven_primitive = true;
  double best_t = tg;

  for (size_t i = 1; i < ball.size(); ++i) {
    const GroupElement& delta = ball[i];
    Classification dc;
    try {
      dc = classify_element(delta);
    } catch (const std::exception&) {
      continue;
    }
    if (dc.type != LoxType::RegularLoxodromic) continue;
    double td = dc.data->t0;
    int nu = static_cast<int>(std::lround(tg / td));
    if (nu < 2 || nu > max_power) continue;
    if (std::abs(td * nu - tg) > 1e-8 * std::max(1.0, tg)) continue;
    GroupElement pw = GroupElement::identity(gamma.n, gamma.r);
    for (int p = 0; p < nu; ++p) pw = pw * delta;
    if (pw.frobenius_distance(gamma) > 1e-8 * scale) continue;
    if (td < best_t - 1e-12) {
      best.root = delta;
      best.power = nu;
      best.not_proven_primitive = false;
      best_t = td;
    }
  }
  return best;
}

}  // namespace supcusp
