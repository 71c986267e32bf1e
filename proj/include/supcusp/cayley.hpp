#ifndef SUPCUSP_CAYLEY_HPP
#define SUPCUSP_CAYLEY_HPP

// The unbounded model: the Cayley transform onto the Siegel half-space
// H = { Re w_1 > (1/2) w_2* w_2 }, the transported triple determinant,
// Heisenberg translations, explicit geodesics, and the classification
// of geodesic escape behaviour.

#include "supcusp/domain.hpp"

namespace supcusp {

// The Cayley matrix: unit determinant, real orthogonal, exchanging the
// ball and half-space models. Not an element of the group.
Mat cayley_matrix(int n);

// Point of the half-space (w_1; w_2) with w_2 of size n-1.
struct HalfSpacePoint {
  cplx w1;
  Vec w2;
  bool boundary = false;

  int n() const { return static_cast<int>(w2.size()) + 1; }
  // Height above the boundary: Re w1 - (1/2) w2* w2.
  double height() const;
};

HalfSpacePoint make_half_space_point(const cplx& w1, const Vec& w2);

// Ball -> half-space. The boundary point (1, 0, ..., 0) is the pole
// and is rejected.
HalfSpacePoint cayley_to_H(const BallPoint& p);
// Half-space -> ball (total on the closed half-space).
BallPoint cayley_to_B(const HalfSpacePoint& p);

// Cocycles of the transform and its inverse:
//   sqrt2 / (1 - z_1)   and   sqrt2 / (1 + w_1).
cplx cayley_cocycle(const BallPoint& p);
cplx cayley_inverse_cocycle(const HalfSpacePoint& p);

// Transported triple determinant
//   Delta'(p, q) = p.w1 + conj(q.w1) - q.w2* p.w2.
cplx delta_prime(const HalfSpacePoint& p, const HalfSpacePoint& q);

// Heisenberg translation n_{lambda, u}: w -> (w1 + u* w2 + i lambda
// + (1/2) u* u, w2 + u). Acts on the half-space preserving Delta'.
struct HeisenbergElement {
  double lambda = 0.0;
  Vec u;  // size n-1
};

HeisenbergElement heisenberg_mul(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement heisenberg_inverse(const HeisenbergElement& a);
// Upper-triangular matrix model (blocks 1 | n-1 | 1), acting on H by
// fractional-linear maps; the group law above matches this model.
Mat heisenberg_matrix(const HeisenbergElement& a, int n);
HalfSpacePoint heisenberg_act(const HeisenbergElement& a, const HalfSpacePoint& p);

// Diagonal flow in the half-space model: diag(e^t, 1_{n-1}, e^{-t}),
// the Cayley conjugate of the ball-model flow matrix.
Mat a_prime(int n, double t);

// Geodesic with both endpoints on the finite boundary, normalized so
// the apex sits at t = 0 over the base height e^{2u}:
// parameters (u, y, s) with y^2 + s* s = 1.
struct GeodesicTwoPoint {
  double u = 0.0;
  double y = 0.0;
  Vec s;  // size n-1
};

GeodesicTwoPoint make_geodesic(double u, double y, const Vec& s, double tol = 1e-12);
HalfSpacePoint geodesic_point(const GeodesicTwoPoint& geo, double t);
// Height profile Delta'(w_t, w_t); evaluates both closed forms and
// cross-checks them to 1e-12.
double delta_prime_profile(const GeodesicTwoPoint& geo, double t);

// Behaviour of t -> Delta'(w_t, w_t) along the geodesic g a_t 0 mapped
// to the half-space.
struct EscapeResult {
  enum Kind { ToInfinityForward, ToInfinityBackward, TwoBoundaryPoints } kind;
  // Two-boundary case: apex location and value of the height profile.
  double apex_t = 0.0;
  double apex_value = 0.0;
  // Ball-model endpoints g(e1) and g(-e1).
  Vec endpoint_forward;
  Vec endpoint_backward;
};

EscapeResult escape_classification(const GroupElement& g, double apex_tol = 1e-10);

}  // namespace supcusp

#endif
