#include "supcusp/domain.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace supcusp {

Mat signature_form(int n) {
  Mat J = Mat::Identity(n + 1, n + 1);
  J(n, n) = -1.0;
  return J;
}

namespace {

cplx det_or_one(const Mat& E) { return E.size() == 0 ? cplx(1.0) : E.determinant(); }

}  // namespace

BallPoint make_ball_point(const Vec& z, double boundary_tol) {
  double zz = z.squaredNorm();
  BallPoint p{z, false};
  if (zz < 1.0 - boundary_tol) return p;
  if (zz <= 1.0 + boundary_tol) {
    p.boundary = true;
    return p;
  }
  throw std::invalid_argument("make_ball_point: point outside the closed unit ball");
}

GroupElement GroupElement::identity(int n, int r) {
  GroupElement g;
  g.n = n;
  g.r = r;
  g.gprime = Mat::Identity(n + 1, n + 1);
  g.E = Mat::Identity(r, r);
  return g;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (n != o.n || r != o.r)
    throw std::invalid_argument("GroupElement: size mismatch in product");
  GroupElement g;
  g.n = n;
  g.r = r;
  g.gprime = gprime * o.gprime;
  g.E = E * o.E;
  return g;
}

GroupElement GroupElement::inverse() const {
  GroupElement g;
  g.n = n;
  g.r = r;
  Mat J = signature_form(n);
  g.gprime = J * gprime.adjoint() * J;
  g.E = E.adjoint();
  return g;
}

double GroupElement::frobenius_distance(const GroupElement& o) const {
  double s = (gprime - o.gprime).squaredNorm();
  if (r > 0) s += (E - o.E).squaredNorm();
  return std::sqrt(s);
}

MembershipReport check_membership(const Mat& gprime, const Mat& E, double tol) {
  MembershipReport rep;
  if (gprime.rows() != gprime.cols() || gprime.rows() < 2) {
    rep.message = "body block must be square of size n+1 >= 2";
    return rep;
  }
  if (E.rows() != E.cols()) {
    rep.message = "odd block must be square";
    return rep;
  }
  const int n = static_cast<int>(gprime.rows()) - 1;
  Mat J = signature_form(n);
  rep.form_residual = (gprime.adjoint() * J * gprime - J).norm();
  rep.unitarity_residual =
      E.size() == 0 ? 0.0 : (E.adjoint() * E - Mat::Identity(E.rows(), E.cols())).norm();
  rep.det_residual = std::abs(gprime.determinant() - det_or_one(E));
  rep.ok = rep.form_residual <= tol && rep.unitarity_residual <= tol &&
           rep.det_residual <= tol;
  if (!rep.ok) {
    std::ostringstream os;
    os << "membership violated: form residual " << rep.form_residual
       << ", unitarity residual " << rep.unitarity_residual << ", det residual "
       << rep.det_residual << " (tol " << tol << ")";
    rep.message = os.str();
  }
  return rep;
}

GroupElement make_element(const Mat& gprime, const Mat& E, double tol) {
  MembershipReport rep = check_membership(gprime, E, tol);
  if (!rep.ok) throw std::invalid_argument("make_element: " + rep.message);
  GroupElement g;
  g.n = static_cast<int>(gprime.rows()) - 1;
  g.r = static_cast<int>(E.rows());
  g.gprime = gprime;
  g.E = E;
  return g;
}

BallPoint mobius(const GroupElement& g, const BallPoint& p) {
  if (p.n() != g.n) throw std::invalid_argument("mobius: dimension mismatch");
  cplx denom = (g.c_block() * p.z)(0) + g.d_block();
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("mobius: denominator vanished (point outside the closed ball?)");
  BallPoint q;
  q.z = (g.a_block() * p.z + g.b_block()) / denom;
  q.boundary = p.boundary;
  return q;
}

cplx cocycle(const GroupElement& g, const BallPoint& p) {
  if (p.n() != g.n) throw std::invalid_argument("cocycle: dimension mismatch");
  cplx denom = (g.c_block() * p.z)(0) + g.d_block();
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("cocycle: denominator vanished");
  return 1.0 / denom;
}

cplx jordan_delta(const Vec& z, const Vec& w) {
  if (z.size() != w.size())
    throw std::invalid_argument("jordan_delta: dimension mismatch");
  return cplx(1.0) - (w.adjoint() * z)(0);
}

double invariant_volume_density(const BallPoint& p) {
  double d = 1.0 - p.z.squaredNorm();
  if (d <= 0.0)
    throw std::domain_error("invariant_volume_density: boundary point");
  return std::pow(d, -(p.n() + 1));
}

SuperFunction constant_function(int n, int r, const Multivector& value) {
  if (value.r != r)
    throw std::invalid_argument("constant_function: generator count mismatch");
  SuperFunction f;
  f.n = n;
  f.r = r;
  f.eval = [value](const BallPoint&) { return value; };
  return f;
}

namespace {

// Shared implementation of the slash twist at a single point:
// given the value of f at g z and the cocycle value, assemble
// sum_I f_I(gz) (E zeta)^I j^{k+|I|}.
Multivector slash_value(const Multivector& fval, const Mat& E, cplx j, int k, int r) {
  Multivector out(r);
  const Mat Et = E.transpose();
  for (const auto& [bits, c] : fval.coeff) {
    if (c == cplx(0.0)) continue;
    SubsetIndex I(bits);
    Multivector part = minor_action(Et, I);
    part *= c * std::pow(j, k + I.size());
    out += part;
  }
  return out;
}

}  // namespace

SuperFunction slash(const SuperFunction& f, const GroupElement& g, int k) {
  if (f.n != g.n || f.r != g.r)
    throw std::invalid_argument("slash: function and group element sizes differ");
  SuperFunction out;
  out.n = f.n;
  out.r = f.r;
  out.degree = f.degree;
  out.weight_hint = k;
  auto feval = f.eval;
  Mat E = g.E;
  GroupElement gc = g;
  int r = f.r;
  out.eval = [feval, gc, E, k, r](const BallPoint& p) {
    BallPoint q = mobius(gc, p);
    cplx j = cocycle(gc, p);
    return slash_value(feval(q), E, j, k, r);
  };
  return out;
}

Multivector lift(const SuperFunction& f, const GroupElement& x, int k) {
  if (f.n != x.n || f.r != x.r)
    throw std::invalid_argument("lift: function and group element sizes differ");
  BallPoint origin{Vec::Zero(x.n), false};
  BallPoint q = mobius(x, origin);
  cplx j = cocycle(x, origin);
  return slash_value(f.eval(q), x.E, j, k, f.r);
}

cplx petersson_pair(const SuperFunction& f, const SuperFunction& h, int k,
                    const QuadratureSpec& spec) {
  if (f.n != h.n || f.r != h.r)
    throw std::invalid_argument("petersson_pair: size mismatch");
  const int n = f.n;
  auto integrand = [&](const Vec& zv) -> cplx {
    BallPoint p{zv, false};
    double delta = 1.0 - zv.squaredNorm();
    Multivector fv = f.eval(p);
    Multivector hv = h.eval(p);
    cplx acc = 0.0;
    for (const auto& [bits, hc] : hv.coeff) {
      cplx fc = fv.at(SubsetIndex(bits));
      if (fc == cplx(0.0) && hc == cplx(0.0)) continue;
      int exponent = k + SubsetIndex(bits).size() - (n + 1);
      if (exponent <= -1)
        throw std::domain_error(
            "petersson_pair: weight too small, integral diverges for component " +
            SubsetIndex(bits).to_string());
      acc += std::conj(fc) * hc * std::pow(delta, exponent);
    }
    return acc;
  };
  return ball_integrate(n, spec, integrand);
}

}  // namespace supcusp
