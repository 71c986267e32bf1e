#ifndef SUPCUSP_QUADRATURE_HPP
#define SUPCUSP_QUADRATURE_HPP

// Gauss-Legendre and tensor polar quadrature over the complex unit
// ball, plus composite panel integration on an interval.

#include <functional>
#include <vector>

#include "supcusp/superalg.hpp"

namespace supcusp {

struct QuadratureSpec {
  int radial = 64;
  int angular = 64;
};

// Nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Integral of f over the ball { z in C^n : z* z < rho_max^2 } with
// respect to Lebesgue measure, by a tensor polar grid: Gauss-Legendre
// in each radius (the admissible radius shrinks with the coordinates
// already placed), trapezoid in each angle.
cplx ball_integrate(int n, const QuadratureSpec& spec,
                    const std::function<cplx(const Vec&)>& f,
                    double rho_max = 1.0);

// Composite Gauss-Legendre over [a, b] split into panels of length at
// most one, with the given number of points per panel.
cplx line_integrate(double a, double b, int points_per_panel,
                    const std::function<cplx(double)>& f);

}  // namespace supcusp

#endif
