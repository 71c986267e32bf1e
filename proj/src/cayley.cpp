#include "supcusp/cayley.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace supcusp {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

Mat cayley_matrix(int n) {
  Mat R = Mat::Identity(n + 1, n + 1);
  const double c = 1.0 / kSqrt2;
  R(0, 0) = c;
  R(0, n) = c;
  R(n, 0) = -c;
  R(n, n) = c;
  return R;
}

double HalfSpacePoint::height() const {
  return w1.real() - 0.5 * w2.squaredNorm();
}

HalfSpacePoint make_half_space_point(const cplx& w1, const Vec& w2) {
  HalfSpacePoint p{w1, w2, false};
  double tol = 1e-12 * (1.0 + std::abs(w1));
  double h = p.height();
  if (h > tol) return p;
  if (h >= -tol) {
    p.boundary = true;
    return p;
  }
  throw std::invalid_argument("make_half_space_point: below the boundary");
}

HalfSpacePoint cayley_to_H(const BallPoint& p) {
  const int n = p.n();
  cplx denom = cplx(1.0) - p.z(0);
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("cayley_to_H: the pole (1, 0, ...) has no image");
  HalfSpacePoint q;
  q.w1 = (cplx(1.0) + p.z(0)) / denom;
  q.w2 = kSqrt2 * p.z.tail(n - 1) / denom;
  q.boundary = p.boundary;
  return q;
}

BallPoint cayley_to_B(const HalfSpacePoint& p) {
  const int n = p.n();
  cplx denom = p.w1 + cplx(1.0);
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("cayley_to_B: denominator 1 + w1 vanished");
  BallPoint q;
  q.z = Vec(n);
  q.z(0) = (p.w1 - cplx(1.0)) / denom;
  q.z.tail(n - 1) = kSqrt2 * p.w2 / denom;
  q.boundary = p.boundary;
  return q;
}

cplx cayley_cocycle(const BallPoint& p) {
  cplx denom = cplx(1.0) - p.z(0);
  if (std::abs(denom) < 1e-14) throw std::domain_error("cayley_cocycle: at the pole");
  return kSqrt2 / denom;
}

cplx cayley_inverse_cocycle(const HalfSpacePoint& p) {
  cplx denom = p.w1 + cplx(1.0);
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("cayley_inverse_cocycle: denominator vanished");
  return kSqrt2 / denom;
}

cplx delta_prime(const HalfSpacePoint& p, const HalfSpacePoint& q) {
  if (p.n() != q.n()) throw std::invalid_argument("delta_prime: dimension mismatch");
  return p.w1 + std::conj(q.w1) - (q.w2.adjoint() * p.w2)(0);
}

HeisenbergElement heisenberg_mul(const HeisenbergElement& a, const HeisenbergElement& b) {
  if (a.u.size() != b.u.size())
    throw std::invalid_argument("heisenberg_mul: dimension mismatch");
  HeisenbergElement c;
  c.lambda = a.lambda + b.lambda + ((a.u.adjoint() * b.u)(0)).imag();
  c.u = a.u + b.u;
  return c;
}

HeisenbergElement heisenberg_inverse(const HeisenbergElement& a) {
  return HeisenbergElement{-a.lambda, -a.u};
}

Mat heisenberg_matrix(const HeisenbergElement& a, int n) {
  if (a.u.size() != n - 1)
    throw std::invalid_argument("heisenberg_matrix: translation size must be n-1");
  Mat m = Mat::Identity(n + 1, n + 1);
  m.block(0, 1, 1, n - 1) = a.u.adjoint();
  m(0, n) = cplx(0.0, a.lambda) + 0.5 * a.u.squaredNorm();
  m.block(1, n, n - 1, 1) = a.u;
  return m;
}

HalfSpacePoint heisenberg_act(const HeisenbergElement& a, const HalfSpacePoint& p) {
  if (a.u.size() + 1 != p.n())
    throw std::invalid_argument("heisenberg_act: dimension mismatch");
  HalfSpacePoint q;
  q.w1 = p.w1 + (a.u.adjoint() * p.w2)(0) + cplx(0.0, a.lambda) + 0.5 * a.u.squaredNorm();
  q.w2 = p.w2 + a.u;
  q.boundary = p.boundary;
  return q;
}

Mat a_prime(int n, double t) {
  Mat m = Mat::Identity(n + 1, n + 1);
  m(0, 0) = std::exp(t);
  m(n, n) = std::exp(-t);
  return m;
}

GeodesicTwoPoint make_geodesic(double u, double y, const Vec& s, double tol) {
  double residual = std::abs(y * y + s.squaredNorm() - 1.0);
  if (residual > tol)
    throw std::invalid_argument("make_geodesic: direction not normalized, y^2 + s*s != 1");
  return GeodesicTwoPoint{u, y, s};
}

HalfSpacePoint geodesic_point(const GeodesicTwoPoint& geo, double t) {
  const double tau = std::tanh(t);
  const double denom = 1.0 + geo.y * geo.y * tau * tau;
  const double eu = std::exp(geo.u);
  HalfSpacePoint p;
  p.w1 = eu * eu * cplx(1.0 - geo.y * geo.y * tau * tau, 2.0 * geo.y * tau) / denom;
  p.w2 = (eu * kSqrt2 * tau / denom) * (cplx(1.0, geo.y * tau) * geo.s);
  return p;
}

double delta_prime_profile(const GeodesicTwoPoint& geo, double t) {
  const double tau = std::tanh(t);
  const double e2u = std::exp(2.0 * geo.u);
  const double form1 = 2.0 * e2u * (1.0 - tau * tau) / (1.0 + geo.y * geo.y * tau * tau);
  const double ss = geo.s.squaredNorm();
  const double form2 = 8.0 * e2u /
      ((1.0 + geo.y * geo.y) * (std::exp(2.0 * t) + std::exp(-2.0 * t)) + 2.0 * ss);
  if (std::abs(form1 - form2) > 1e-12 * (1.0 + std::abs(form1)))
    throw std::logic_error("delta_prime_profile: closed forms disagree");
  return form1;
}

namespace {

// Height of the transported geodesic g a_t 0 in the half-space.
double geodesic_height(const GroupElement& g, double t) {
  Vec axis = Vec::Zero(g.n);
  axis(0) = std::tanh(t);
  BallPoint p = mobius(g, BallPoint{axis, false});
  HalfSpacePoint w = cayley_to_H(p);
  return delta_prime(w, w).real();
}

}  // namespace

EscapeResult escape_classification(const GroupElement& g, double apex_tol) {
  const int n = g.n;
  EscapeResult res;
  Vec e1 = Vec::Zero(n);
  e1(0) = 1.0;
  res.endpoint_forward = mobius(g, BallPoint{e1, true}).z;
  res.endpoint_backward = mobius(g, BallPoint{-e1, true}).z;

  const double pole_tol = 1e-8;
  if ((res.endpoint_forward - e1).norm() < pole_tol) {
    res.kind = EscapeResult::ToInfinityForward;
    return res;
  }
  if ((res.endpoint_backward - e1).norm() < pole_tol) {
    res.kind = EscapeResult::ToInfinityBackward;
    return res;
  }

  res.kind = EscapeResult::TwoBoundaryPoints;
  // Bracket the apex of the unimodal height profile, then refine by
  // golden-section search.
  auto h = [&](double t) { return geodesic_height(g, t); };
  double a = 0.0, b = 0.0;
  double h0 = h(0.0);
  double step = 1.0;
  if (h(step) > h0 || h(-step) > h0) {
    double dir = h(step) > h(-step) ? 1.0 : -1.0;
    double prev = h0, cur = h(dir * step);
    double t = dir * step;
    while (cur > prev && std::abs(t) < 80.0) {
      prev = cur;
      t += dir * step;
      cur = h(t);
    }
    a = std::min(t, t - 2 * dir * step);
    b = std::max(t, t - 2 * dir * step);
  } else {
    a = -step;
    b = step;
  }
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  while (b - a > apex_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = h(x1);
    }
  }
  res.apex_t = 0.5 * (a + b);
  res.apex_value = h(res.apex_t);
  return res;
}

}  // namespace supcusp
