#ifndef SUPCUSP_DOMAIN_HPP
#define SUPCUSP_DOMAIN_HPP

// The bounded domain picture: points of the complex unit ball with
// Grassmann directions, the supersymmetric unitary group acting on it,
// automorphy cocycles, the slash action, lifts to the group, and the
// weighted pairing of equivariant functions.

#include <functional>
#include <optional>

#include "supcusp/quadrature.hpp"
#include "supcusp/superalg.hpp"

namespace supcusp {

// Interior point of the unit ball in C^n (or a boundary point when the
// flag is set; boundary points only support the fractional-linear
// action and the triple determinant, not integration).
struct BallPoint {
  Vec z;
  bool boundary = false;

  int n() const { return static_cast<int>(z.size()); }
};

BallPoint make_ball_point(const Vec& z, double boundary_tol = 1e-12);

// The signature (n,1) form J = diag(1_n, -1).
Mat signature_form(int n);

// Element of the group sS(U(n,1) x U(r)): a block pair (gprime, E)
// with gprime preserving the signature (n,1) form J = diag(1_n, -1),
// E unitary, and det gprime = det E (for r = 0 this reads det = 1).
struct GroupElement {
  int n = 1;
  int r = 0;
  Mat gprime;  // (n+1) x (n+1)
  Mat E;       // r x r

  static GroupElement identity(int n, int r);

  GroupElement operator*(const GroupElement& o) const;
  // Exact group inverse: J gprime* J for the body block, E* for the
  // unitary block. Stays on the group to machine precision.
  GroupElement inverse() const;

  Mat a_block() const { return gprime.topLeftCorner(n, n); }
  Vec b_block() const { return gprime.topRightCorner(n, 1); }
  Eigen::RowVectorXcd c_block() const { return gprime.bottomLeftCorner(1, n); }
  cplx d_block() const { return gprime(n, n); }

  double frobenius_distance(const GroupElement& o) const;
};

struct MembershipReport {
  bool ok = false;
  double form_residual = 0.0;      // || gprime* J gprime - J ||_F
  double unitarity_residual = 0.0; // || E* E - 1 ||_F
  double det_residual = 0.0;       // | det gprime - det E |
  std::string message;
};

MembershipReport check_membership(const Mat& gprime, const Mat& E, double tol = 1e-10);

// Builds a validated element; throws std::invalid_argument with the
// report message when a membership residual exceeds tol.
GroupElement make_element(const Mat& gprime, const Mat& E, double tol = 1e-10);

// Fractional-linear action on the ball: z -> (A z + b) / (c z + d).
// Defined on the closed ball; the denominator cannot vanish there.
BallPoint mobius(const GroupElement& g, const BallPoint& p);

// Automorphy cocycle j(g, z) = 1 / (c z + d).
cplx cocycle(const GroupElement& g, const BallPoint& p);

// Jordan triple determinant Delta(z, w) = 1 - w* z.
cplx jordan_delta(const Vec& z, const Vec& w);

// Density of the invariant volume against Lebesgue measure:
// Delta(z, z)^{-(n+1)}.
double invariant_volume_density(const BallPoint& p);

// Grassmann-valued function on the ball, represented extensionally by
// its evaluator. degree, when set, promises that every value is
// concentrated in monomials of that size (used to pick cocycle
// weights without probing); weight_hint records the intended slash
// weight k for diagnostics.
struct SuperFunction {
  int n = 1;
  int r = 0;
  std::function<Multivector(const BallPoint&)> eval;
  std::optional<int> degree;
  std::optional<int> weight_hint;
};

SuperFunction constant_function(int n, int r, const Multivector& value);

// Weight-k slash action (a right action): for f with components f_I,
//   (f|_g)(z) = sum_I f_I(g z) (E zeta)^I j(g, z)^{k + |I|},
// where (E zeta)^I expands through the minors of E with rows I (that
// is, minor_action of E transposed).
SuperFunction slash(const SuperFunction& f, const GroupElement& g, int k);

// Value of f|_x at the origin: the lift of f to the group.
Multivector lift(const SuperFunction& f, const GroupElement& x, int k);

// Weighted pairing sum_I integral conj(f_I) h_I Delta(z,z)^{k+|I|-(n+1)} dV,
// conjugate-linear in f. Throws std::domain_error when a contributing
// component has exponent <= -1 (the weight makes the integral diverge).
cplx petersson_pair(const SuperFunction& f, const SuperFunction& h, int k,
                    const QuadratureSpec& spec);

}  // namespace supcusp

#endif
