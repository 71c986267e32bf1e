#ifndef SUPCUSP_RANDOM_ELEMENTS_HPP
#define SUPCUSP_RANDOM_ELEMENTS_HPP

// Seeded random generators for test material: Haar-like unitaries,
// group elements built by exponentiating random algebra elements, and
// interior points of the ball.

#include <random>

#include "supcusp/domain.hpp"

namespace supcusp {

Mat random_unitary(int m, std::mt19937_64& rng);

// Exponential of a random element of the Lie algebra (body block in
// u(n,1), odd block in u(r), traces linked), scaled by spread.
GroupElement random_group_element(int n, int r, std::mt19937_64& rng,
                                  double spread = 0.7);

BallPoint random_ball_point(int n, std::mt19937_64& rng, double rho_max = 0.85);

}  // namespace supcusp

#endif
