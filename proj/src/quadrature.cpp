#include "supcusp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace supcusp {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

struct PolarGrid {
  std::vector<double> rad_nodes, rad_weights;
  int angular;
};

// Recursive tensor polar integration: place coordinate `level` on a
// polar grid whose radius is limited by the mass already used, then
// recurse on the remaining coordinates.
cplx polar_recurse(const PolarGrid& grid, int level, int n, double radius2,
                   Vec& z, const std::function<cplx(const Vec&)>& f) {
  if (level == n) return f(z);
  const double rmax = std::sqrt(radius2);
  const double dtheta = 2.0 * std::numbers::pi / grid.angular;
  cplx total = 0.0;
  cplx comp = 0.0;  // Kahan compensation
  for (size_t i = 0; i < grid.rad_nodes.size(); ++i) {
    const double rho = 0.5 * (grid.rad_nodes[i] + 1.0) * rmax;
    const double wrho = grid.rad_weights[i] * 0.5 * rmax * rho;
    for (int a = 0; a < grid.angular; ++a) {
      const double theta = dtheta * a;
      z[level] = cplx(rho * std::cos(theta), rho * std::sin(theta));
      cplx inner = polar_recurse(grid, level + 1, n, radius2 - rho * rho, z, f);
      cplx term = inner * (wrho * dtheta);
      cplx y = term - comp;
      cplx t = total + y;
      comp = (t - total) - y;
      total = t;
    }
  }
  z[level] = 0.0;
  return total;
}

}  // namespace

cplx ball_integrate(int n, const QuadratureSpec& spec,
                    const std::function<cplx(const Vec&)>& f, double rho_max) {
  if (n < 1) throw std::invalid_argument("ball_integrate: dimension must be positive");
  if (spec.radial < 1 || spec.angular < 1)
    throw std::invalid_argument("ball_integrate: quadrature sizes must be positive");
  PolarGrid grid;
  gauss_legendre(spec.radial, grid.rad_nodes, grid.rad_weights);
  grid.angular = spec.angular;
  Vec z = Vec::Zero(n);
  return polar_recurse(grid, 0, n, rho_max * rho_max, z, f);
}

cplx line_integrate(double a, double b, int points_per_panel,
                    const std::function<cplx(double)>& f) {
  if (!(b > a)) throw std::invalid_argument("line_integrate: empty interval");
  if (points_per_panel < 1)
    throw std::invalid_argument("line_integrate: need at least one point per panel");
  const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
  std::vector<double> x, w;
  gauss_legendre(points_per_panel, x, w);
  cplx total = 0.0;
  cplx comp = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < points_per_panel; ++i) {
      const double t = lo + 0.5 * (x[i] + 1.0) * h;
      cplx term = f(t) * (0.5 * h * w[i]);
      cplx y = term - comp;
      cplx s = total + y;
      comp = (s - total) - y;
      total = s;
    }
  }
  return total;
}

}  // namespace supcusp
