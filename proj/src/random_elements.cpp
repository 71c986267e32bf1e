#include "supcusp/random_elements.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace supcusp {

Mat random_unitary(int m, std::mt19937_64& rng) {
  if (m == 0) return Mat(0, 0);
  std::normal_distribution<double> g;
  Mat A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(A);
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < m; ++j) Q.col(j) *= R(j, j) / std::abs(R(j, j));
  return Q;
}

GroupElement random_group_element(int n, int r, std::mt19937_64& rng, double spread) {
  std::normal_distribution<double> g;
  auto gauss = [&] { return spread * g(rng); };

  // Body block of the algebra: [[P, q], [q*, i theta]] with P
  // skew-Hermitian.
  Mat X = Mat::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    X(i, i) = cplx(0.0, gauss());
    for (int j = i + 1; j < n; ++j) {
      cplx v(gauss(), gauss());
      X(i, j) = v;
      X(j, i) = -std::conj(v);
    }
  }
  for (int i = 0; i < n; ++i) {
    cplx q(gauss(), gauss());
    X(i, n) = q;
    X(n, i) = std::conj(q);
  }
  X(n, n) = cplx(0.0, gauss());

  // Odd block: skew-Hermitian, then shift the trace so it matches the
  // body block (both traces are purely imaginary).
  Mat F = Mat::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    F(i, i) = cplx(0.0, gauss());
    for (int j = i + 1; j < r; ++j) {
      cplx v(gauss(), gauss());
      F(i, j) = v;
      F(j, i) = -std::conj(v);
    }
  }
  if (r > 0) {
    cplx gap = X.trace() - F.trace();
    F += (gap / double(r)) * Mat::Identity(r, r);
  } else {
    // No odd block to absorb the trace: force the body trace to zero.
    X(n, n) -= X.trace();
  }

  GroupElement out;
  out.n = n;
  out.r = r;
  out.gprime = X.exp();
  out.E = r > 0 ? Mat(F.exp()) : Mat(0, 0);
  return out;
}

BallPoint random_ball_point(int n, std::mt19937_64& rng, double rho_max) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(g(rng), g(rng));
  double norm = z.norm();
  if (norm == 0.0) norm = 1.0;
  // Radius with density proportional to the Lebesgue measure of the ball.
  double rho = rho_max * std::pow(u(rng), 1.0 / (2.0 * n));
  z *= rho / norm;
  return BallPoint{z, false};
}

}  // namespace supcusp
