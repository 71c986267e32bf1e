#ifndef SUPCUSP_DYNAMICS_HPP
#define SUPCUSP_DYNAMICS_HPP

// The frame flow, the invariant local metric, hyperbolicity constants
// of the time-T1 map, and the orbit-closing procedure with certified
// error bounds.

#include <map>
#include <string>

#include "supcusp/structure.hpp"

namespace supcusp {

// Right translation by the flow: g -> g a_t.
GroupElement flow(const GroupElement& g, double t);

// Distance in the exponential chart: ||log(g^{-1} h)|| in the
// invariant inner product, blockwise principal logarithms. Throws
// std::domain_error when the offset leaves the chart (operator-norm
// radius 1/2 around the identity).
double local_distance(const GroupElement& g, const GroupElement& h);

// Ratio local_distance(g exp(nu) a_t, g a_t) / local_distance(g exp(nu), g);
// equals e^{-alpha t} when nu lies in the alpha root space.
double expansion_rate(const GroupElement& g, const LieAlgebraElement& nu, double t);

// Contraction constants of the time-T1 map on a delta-neighbourhood:
// C1 bounds the distortion of the closing map, eps1 is the largest
// orbit error the certificate accepts.
struct AnosovConstants {
  double T1 = 1.0;
  double delta = 0.1;
  double C1 = 0.0;
  double eps1 = 0.0;
};

AnosovConstants anosov_constants(double T1 = 1.0, double delta = 0.1);

struct ClosingResult {
  bool certified = false;
  // The element is within noise of the identity; the orbit closes
  // trivially exactly when T <= epsilon.
  bool degenerate = false;
  bool converged = false;
  double epsilon = 0.0;  // local_distance(gamma x, x a_T)
  double t0 = 0.0;       // period of the closed orbit
  GroupElement z;        // corrected base point
  GroupElement w;        // centralizer part: z^{-1} gamma z = a_{t0} w
  double residual = 0.0;
  int iterations = 0;
  // Certified inequalities as ratios (achieved / allowed); every entry
  // is <= 1 when the closing bounds hold.
  std::map<std::string, double> bound_ratios;
};

// Closing procedure: given gamma x close to x a_T, find z = x exp(nu)
// with nu in the contracting/expanding directions, and (t0, w) with
// z^{-1} gamma z = a_{t0} w and w in the flow centralizer. Seeded at
// (nu, t0, w) = (0, T, 1); when that stalls, reseeded from the
// spectral axis data of gamma. The certificate consists of
// epsilon <= eps1, T >= T1, and the final residual at tol.
ClosingResult close_orbit(const GroupElement& x, const GroupElement& gamma, double T,
                          const AnosovConstants& ac, double tol = 1e-11,
                          int max_iter = 100);

// Exact axis data of a regular loxodromic element, computed by
// eigendecomposition independent of the closing solver. Throws for
// other element types.
LoxodromicData axis_oracle(const GroupElement& gamma);

// Norm of the root components of log(g^{-1} z) outside the flow line
// and its centralizer, where g is the axis frame of the regular
// loxodromic element gamma: measures how far z is from the coset
// g A M. Assumes the offset is within the principal branch of the
// logarithm.
double conjugator_defect(const GroupElement& gamma, const GroupElement& z);

}  // namespace supcusp

#endif
