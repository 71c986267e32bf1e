#include "supcusp/series.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "supcusp/random_elements.hpp"
#include "testing.hpp"

using namespace supcusp;

namespace {

constexpr cplx kI(0.0, 1.0);

Eigen::Matrix2cd su11_from_sl2r(double a, double b, double c, double d) {
  Eigen::Matrix2cd C, Cinv, M;
  C << kI, kI, -1.0, 1.0;
  Cinv << 1.0, -kI, 1.0, kI;
  Cinv /= 2.0 * kI;
  M << a, b, c, d;
  return Cinv * M * C;
}

GroupElement desk_gamma_a() {
  return make_element(su11_from_sl2r(2, 1, 1, 1), Mat(0, 0));
}

GroupElement desk_gamma_b() {
  return make_element(su11_from_sl2r(1, 1, 1, 2), Mat(0, 0));
}

LoxodromicData lox_of(const GroupElement& gamma) {
  Classification cls = classify_element(gamma);
  REQUIRE(cls.type == LoxType::RegularLoxodromic, "test element is regular loxodromic");
  return *cls.data;
}

LoxodromicData synthetic_lox(int n, int r, double t0, double chi,
                             std::vector<double> d) {
  LoxodromicData lox;
  lox.g = GroupElement::identity(n, r);
  lox.t0 = t0;
  lox.w0 = GroupElement::identity(n, r);
  lox.phases.chi = chi;
  lox.phases.d = std::move(d);
  lox.x_plus = Vec::Zero(n);
  lox.x_plus(0) = 1.0;
  lox.x_minus = -lox.x_plus;
  return lox;
}

BallPoint grid_point(int n, int i, int count, double radius) {
  Vec z = Vec::Zero(n);
  double u = radius * (i + 1.0) / (count + 1.0);
  double a = 2.4 * i + 0.3;
  if (n == 1) {
    z(0) = u * std::exp(kI * a);
  } else {
    z(0) = u * std::cos(a) * std::exp(kI * (0.3 * a));
    z(1) = u * std::sin(a) * std::exp(kI * (0.7 * a));
  }
  return make_ball_point(z);
}

double closest_lattice(const std::vector<double>& lattice, double target) {
  double best = lattice.front();
  for (double m : lattice)
    if (std::abs(m - target) < std::abs(best - target)) best = m;
  return best;
}

void test_frequency_lattice() {
  LoxodromicData plain = synthetic_lox(1, 0, 1.0, 0.0, {});
  std::vector<double> lat = frequency_lattice(plain, SubsetIndex(), 4, 2.5);
  REQUIRE(lat.size() == 5, "unit period integer lattice in (-2.5, 2.5)");
  for (int j = -2; j <= 2; ++j)
    REQUIRE(std::abs(lat[j + 2] - j) < 1e-15, "lattice point is the integer");

  LoxodromicData quarter = synthetic_lox(1, 0, 1.0, 0.25, {});
  std::vector<double> lat4 = frequency_lattice(quarter, SubsetIndex(), 4, 2.5);
  REQUIRE(lat4.size() == 5, "integer offset leaves the integer lattice");
  for (int j = -2; j <= 2; ++j)
    REQUIRE(std::abs(lat4[j + 2] - j) < 1e-12, "weight times phase lands on an integer");

  LoxodromicData fast = synthetic_lox(1, 0, 0.5, 0.0, {});
  std::vector<double> latf = frequency_lattice(fast, SubsetIndex(), 4, 2.5);
  REQUIRE(latf.size() == 3, "shorter period spreads the lattice");
  REQUIRE(std::abs(latf[0] + 2.0) < 1e-15 && std::abs(latf[2] - 2.0) < 1e-15,
          "spacing is the reciprocal period");
  LoxodromicData slow = synthetic_lox(1, 0, 2.0, 0.0, {});
  REQUIRE(frequency_lattice(slow, SubsetIndex(), 4, 2.5).size() == 9,
          "longer period densifies the lattice");

  LoxodromicData shifted = synthetic_lox(1, 1, 1.0, 0.1, {0.25});
  SubsetIndex one = SubsetIndex::from_list({1});
  double nu = lattice_offset(shifted, one, 3);
  REQUIRE_CLOSE(nu, 0.65, 1e-12, "offset combines weight phase and subset trace");
  std::vector<double> lats = frequency_lattice(shifted, one, 3, 1.35);
  REQUIRE(lats.size() == 2, "window boundary excluded");
  REQUIRE_CLOSE(lats[0], -0.65, 1e-12, "first shifted point");
  REQUIRE_CLOSE(lats[1], 0.35, 1e-12, "second shifted point");
  for (double m : lats)
    REQUIRE(std::abs(m + nu - std::round(m + nu)) < 1e-12, "points sit on the shifted lattice");

  REQUIRE_THROWS(frequency_lattice(plain, SubsetIndex(), 4, -1.0),
                 "window must be positive");
}

void test_screening() {
  LoxodromicData lox = lox_of(desk_gamma_a());
  REQUIRE(std::abs(lox.phases.chi) < 1e-10, "untwisted element has no automorphy phase");
  const int k = 8;
  std::vector<double> lat = frequency_lattice(lox, SubsetIndex(), k, 2.0);
  double m0 = closest_lattice(lat, 1.0);
  REQUIRE(std::abs(m0 * lox.t0 - 1.0) < 1e-10, "first harmonic of the closed line");
  PoincareKernel kern = make_poincare_kernel(lox, SubsetIndex(), m0, k);
  SuperFunction qf = q_function(kern);

  GroupElement id = GroupElement::identity(1, 0);
  cplx h0 = screen_h(qf, k, lox, 0.0, id).at(SubsetIndex());
  REQUIRE(std::abs(h0) > 1e-12, "screened kernel does not vanish");
  for (double t : {0.3, 0.7, 1.9}) {
    cplx ht = screen_h(qf, k, lox, t, id).at(SubsetIndex());
    cplx want = h0 * std::exp(cplx(0.0, 2.0 * M_PI * m0 * t));
    REQUIRE(std::abs(ht - want) < 1e-9 * std::abs(h0),
            "kernel screens to a single harmonic along its own line");
  }

  Mat minus = -Mat::Identity(2, 2);
  GroupElement win = make_element(minus, Mat(0, 0));
  REQUIRE(in_flow_centralizer(win), "central element lies in the centralizer");
  for (double t : {0.2, 1.1}) {
    Multivector lhs = screen_h(qf, k, lox, t + lox.t0, win);
    Multivector rhs = screen_h(qf, k, lox, t, lox.w0.inverse() * win);
    REQUIRE(mv_norm(lhs - rhs) < 1e-8 * (1.0 + mv_norm(lhs)),
            "screening is covariant along the closed line");
  }

  REQUIRE_THROWS(screen_h(qf, k, lox, 0.1, a_flow(1, 0, 0.3)),
                 "flow elements do not fix the origin");
  Mat rot(2, 2);
  rot.setZero();
  rot(0, 0) = std::exp(kI * (M_PI / 4.0));
  rot(1, 1) = std::exp(-kI * (M_PI / 4.0));
  REQUIRE_THROWS(screen_h(qf, k, lox, 0.1, make_element(rot, Mat(0, 0))),
                 "origin stabilizer that moves the flow is rejected");

  double C = std::abs(m0) + 2.0;
  auto eval = [&](double t, const GroupElement& w) {
    return screen_h(qf, k, lox, t, w);
  };
  FourierSpectrum spec = fourier_coefficients(eval, lox, {SubsetIndex()}, k, C);
  REQUIRE(spec.lattice_residual() < 1e-12, "spectrum sits on its lattice");
  double total = 0.0, at_m0 = 0.0;
  cplx b0;
  for (const auto& md : spec.modes) {
    total += std::norm(md.b);
    if (std::abs(md.m - m0) < 1e-9) {
      at_m0 += std::norm(md.b);
      b0 = md.b;
    }
  }
  REQUIRE(total > 0.0 && at_m0 / total > 0.9999, "spectral mass concentrates at the harmonic");
  REQUIRE(std::abs(b0 - h0) < 1e-6 * std::abs(h0), "coefficient recovers the screened value");

  auto pure = [&](double t, const GroupElement&) {
    return Multivector::monomial(0, SubsetIndex(), std::exp(cplx(0.0, 2.0 * M_PI * m0 * t)));
  };
  FourierSpectrum ps = fourier_coefficients(pure, lox, {SubsetIndex()}, k, C);
  for (const auto& md : ps.modes) {
    if (std::abs(md.m - m0) < 1e-9)
      REQUIRE(std::abs(md.b - 1.0) < 1e-10, "pure mode has unit coefficient");
    else
      REQUIRE(std::abs(md.b) < 1e-10, "pure mode has no other coefficients");
  }

  auto zero = [&](double, const GroupElement&) { return Multivector(0); };
  FourierSpectrum zs = fourier_coefficients(zero, lox, {SubsetIndex()}, k, C);
  for (const auto& md : zs.modes)
    REQUIRE(std::abs(md.b) < 1e-14, "zero function has zero spectrum");

  auto off = [&](double t, const GroupElement&) {
    return Multivector::monomial(0, SubsetIndex(), std::exp(cplx(0.0, 2.0 * M_PI * 0.37 * t)));
  };
  REQUIRE_THROWS(fourier_coefficients(off, lox, {SubsetIndex()}, k, C),
                 "off lattice evaluator fails the covariance check");
}

GroupElement twisted_desk() {
  Mat gp = su11_from_sl2r(2, 1, 1, 1);
  gp *= std::exp(kI * (M_PI * 0.15));
  Mat E(1, 1);
  E(0, 0) = std::exp(2.0 * M_PI * kI * 0.15);
  return make_element(gp, E);
}

void check_ratio_constancy(const PoincareKernel& kern, int n, const char* label,
                           double* constant_out = nullptr) {
  SubsetIndex ref = kern.I;
  cplx first;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    BallPoint z = grid_point(n, i, 20, 0.65);
    cplx num = q_closed(kern, z).at(ref);
    cplx den = q_integral(kern, z).at(ref);
    cplx ratio = num / den;
    if (i == 0)
      first = ratio;
    else
      worst = std::max(worst, std::abs(ratio - first) / std::abs(first));
  }
  REQUIRE(worst < 1e-6, label);
  if (constant_out) *constant_out = std::abs(first);
}

void check_invariance(const PoincareKernel& kern, const GroupElement& gamma0,
                      int n, double tol, const char* label) {
  SuperFunction qf = q_function(kern);
  SuperFunction moved = slash(qf, gamma0, kern.k);
  for (int i = 0; i < 5; ++i) {
    BallPoint z = grid_point(n, 3 * i + 1, 16, 0.55);
    Multivector a = qf.eval(z);
    Multivector b = moved.eval(z);
    REQUIRE(mv_norm(a - b) < tol * (1.0 + mv_norm(a)), label);
  }
}

void test_q_forms() {
  // Untwisted closed line, scalar monomial, zero frequency.
  LoxodromicData lox_a = lox_of(desk_gamma_a());
  PoincareKernel ka = make_poincare_kernel(lox_a, SubsetIndex(), 0.0, 8);
  check_ratio_constancy(ka, 1, "closed form matches the integral (scalar case)");
  check_invariance(ka, loxodromic_reconstruct(lox_a), 1, 1e-10,
                   "kernel is invariant under its own element (scalar case)");
  check_invariance(ka, desk_gamma_a(), 1, 1e-7,
                   "kernel is invariant under the original element");

  // Value is real and positive along the real axis at zero frequency.
  for (int i = 0; i < 10; ++i) {
    double s = -0.8 + 1.6 * i / 9.0;
    Vec vz(1);
    vz(0) = s;
    BallPoint z = mobius(lox_a.g, make_ball_point(vz));
    cplx val = q_closed(ka, z).at(SubsetIndex());
    BallPoint back = mobius(lox_a.g.inverse(), z);
    REQUIRE(std::abs(back.z(0).imag()) < 1e-9, "axis parametrization is real");
    REQUIRE(std::abs(val.imag()) < 1e-10 * std::abs(val) && val.real() > 0.0,
            "zero frequency kernel is positive on the axis");
  }

  // Twisted closed line with an odd monomial and a fractional frequency.
  LoxodromicData lox_b = lox_of(twisted_desk());
  SubsetIndex one = SubsetIndex::from_list({1});
  std::vector<double> lat_b = frequency_lattice(lox_b, one, 8, 2.0);
  double mb = closest_lattice(lat_b, 0.5);
  REQUIRE(std::abs(mb * lox_b.t0 + lattice_offset(lox_b, one, 8) -
                   std::round(mb * lox_b.t0 + lattice_offset(lox_b, one, 8))) < 1e-12,
          "chosen frequency is admissible");
  PoincareKernel kb = make_poincare_kernel(lox_b, one, mb, 8);
  check_ratio_constancy(kb, 1, "closed form matches the integral (twisted case)");
  check_invariance(kb, loxodromic_reconstruct(lox_b), 1, 1e-10,
                   "kernel is invariant under its own element (twisted case)");
  REQUIRE_THROWS(make_poincare_kernel(lox_b, one, mb + 0.01, 8),
                 "off lattice frequency rejected");
  REQUIRE_THROWS(make_poincare_kernel(lox_b, one, mb, 1),
                 "weight below the convergence bound rejected");

  // Branch continuity along the axis chart of the twisted kernel.
  {
    std::vector<double> mags;
    std::vector<cplx> vals;
    for (int i = 0; i < 37; ++i) {
      double s = -0.9 + 1.8 * i / 36.0;
      Vec vz(1);
      vz(0) = s;
      vals.push_back(q_closed(kb, mobius(lox_b.g, make_ball_point(vz))).at(one));
    }
    for (size_t i = 1; i < vals.size(); ++i) mags.push_back(std::abs(vals[i] - vals[i - 1]));
    for (size_t i = 1; i + 1 < mags.size(); ++i)
      REQUIRE(mags[i] <= 10.0 * (mags[i - 1] + mags[i + 1]) + 1e-10 * std::abs(vals[i]),
              "no branch jumps along the axis");
  }

  // Higher rank body, planted frame.
  std::mt19937_64 rng(41);
  GroupElement h2 = random_group_element(2, 0, rng, 0.4);
  LoxodromicData lox_c = lox_of(h2 * a_flow(2, 0, 1.2) * h2.inverse());
  PoincareKernel kc = make_poincare_kernel(lox_c, SubsetIndex(), 0.0, 9);
  check_ratio_constancy(kc, 2, "closed form matches the integral (rank two body)");
  check_invariance(kc, loxodromic_reconstruct(lox_c), 2, 1e-10,
                   "kernel is invariant under its own element (rank two body)");

  // Frequency reflection: the proportionality constant is even in m.
  {
    double m1 = closest_lattice(frequency_lattice(lox_a, SubsetIndex(), 8, 2.0), 1.0);
    PoincareKernel kp = make_poincare_kernel(lox_a, SubsetIndex(), m1, 8);
    PoincareKernel km = make_poincare_kernel(lox_a, SubsetIndex(), -m1, 8);
    double cp = 0.0, cm = 0.0;
    check_ratio_constancy(kp, 1, "positive frequency ratio constant", &cp);
    check_ratio_constancy(km, 1, "negative frequency ratio constant", &cm);
    REQUIRE(std::abs(cp - cm) < 1e-7 * cp, "constant is even in the frequency");
  }

  // Two odd generators with a non-diagonal unitary frame: exercises the
  // minor orientation of the odd factor.
  {
    GroupElement h = random_group_element(1, 2, rng, 0.4);
    Mat wg = Mat::Identity(2, 2) * std::exp(kI * (M_PI * 0.52));
    Mat we(2, 2);
    we.setZero();
    we(0, 0) = std::exp(2.0 * M_PI * kI * 0.15);
    we(1, 1) = std::exp(2.0 * M_PI * kI * 0.37);
    GroupElement w0 = make_element(wg, we);
    GroupElement gamma = h * a_flow(1, 2, 1.1) * w0 * h.inverse();
    LoxodromicData lox = lox_of(gamma);
    for (const auto& I : {SubsetIndex::from_list({1}), SubsetIndex::from_list({1, 2})}) {
      double m = closest_lattice(frequency_lattice(lox, I, 8, 2.0), 0.0);
      PoincareKernel kd = make_poincare_kernel(lox, I, m, 8);
      check_invariance(kd, loxodromic_reconstruct(lox), 1, 1e-9,
                       "kernel is invariant with mixing odd frame");
    }
  }

  // Overflow flag and quadrature tail guard.
  {
    PoincareKernel huge = make_poincare_kernel(lox_a, SubsetIndex(), 0.0, 5001);
    Vec near(1);
    near(0) = 0.995 * lox_a.x_plus(0);
    REQUIRE_THROWS(q_closed(huge, make_ball_point(near)),
                   "extreme weight overflows and is flagged");
    REQUIRE_THROWS(q_integral(ka, grid_point(1, 0, 20, 0.65), 0.5),
                   "short truncation trips the tail guard");
    double tail = 1.0;
    q_integral(ka, grid_point(1, 0, 20, 0.65), 20.0, 800, &tail);
    REQUIRE(tail < 1e-12, "default truncation tail is negligible");
  }

  // The integrand decays at the advertised exponential rate.
  {
    BallPoint z = grid_point(1, 4, 20, 0.65);
    const int kappa = 8;
    auto probe = [&](double t) {
      GroupElement gat = lox_a.g * a_flow(1, 0, t);
      BallPoint c = mobius(gat, make_ball_point(Vec::Zero(1)));
      cplx del = jordan_delta(z.z, c.z);
      cplx jj = cocycle(gat, make_ball_point(Vec::Zero(1)));
      return std::pow(std::abs(del), -kappa) * std::pow(std::abs(jj), kappa);
    };
    double slope = std::log(probe(14.0) / probe(12.0)) / 2.0;
    REQUIRE(std::abs(slope + kappa) < 0.05 * kappa, "tail decays like the weight exponent");
  }
}

void test_reverse_bernstein() {
  FourierSpectrum single;
  single.t0 = 1.0;
  single.offsets[0] = 0.0;
  single.modes.push_back({SubsetIndex(), 2.0, cplx(1.0, 0.5)});
  double ratio = -1.0;
  FourierSpectrum anti = reverse_bernstein(single, 1.0, &ratio);
  REQUIRE(std::abs(anti.modes[0].b - cplx(1.0, 0.5) / (4.0 * M_PI * kI)) < 1e-15,
          "single mode divided by its frequency");
  REQUIRE_CLOSE(ratio, 1.0 / (4.0 * M_PI), 1e-12, "single mode ratio is exact");

  FourierSpectrum empty;
  FourierSpectrum ea = reverse_bernstein(empty, 1.0, &ratio);
  REQUIRE(ea.modes.empty() && ratio == 0.0, "empty spectrum passes through");

  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double C = 1.5;
  FourierSpectrum rand10;
  rand10.t0 = 0.9;
  for (int i = 0; i < 10; ++i) {
    double m = (i % 2 ? 1.0 : -1.0) * (C + 0.37 * i);
    rand10.modes.push_back({SubsetIndex(), m, cplx(gauss(rng), gauss(rng))});
  }
  reverse_bernstein(rand10, C, &ratio);
  REQUIRE(ratio <= 6.0 / (M_PI * C), "sup norm bound holds for a random series");

  FourierSpectrum bad = rand10;
  bad.modes.push_back({SubsetIndex(), 0.5, cplx(1.0, 0.0)});
  REQUIRE_THROWS(reverse_bernstein(bad, C), "frequency inside the window rejected");
}

void test_cosets() {
  LoxodromicData lox = lox_of(desk_gamma_a());
  std::vector<GroupElement> pair = {desk_gamma_a(), desk_gamma_b()};

  std::vector<CosetRep> zero = coset_enumerate(pair, lox, 0);
  REQUIRE(zero.size() == 1 && zero[0].word.empty(), "radius zero is the identity coset");

  std::vector<CosetRep> cyclic = coset_enumerate({desk_gamma_a()}, lox, 3);
  REQUIRE(cyclic.size() == 1, "the closed line's own group is one coset");

  std::vector<CosetRep> ball = coset_enumerate(pair, lox, 4);
  std::vector<int> shell_count(5, 0);
  std::vector<GroupElement> letters = pair;
  for (const auto& g : pair) letters.push_back(g.inverse());
  for (const auto& rep : ball) {
    shell_count[rep.word.size()]++;
    GroupElement acc = GroupElement::identity(1, 0);
    for (int ell : rep.word) acc = acc * letters[ell];
    REQUIRE(acc.frobenius_distance(rep.matrix) < 1e-10, "stored matrix matches its word");
  }
  for (int s = 0; s + 1 <= 4; ++s)
    REQUIRE(shell_count[s] < shell_count[s + 1], "coset shells grow strictly");

  LoxodromicData tiny = synthetic_lox(1, 0, 1e-9, 0.0, {});
  REQUIRE_THROWS(coset_enumerate({a_flow(1, 0, 0.5)}, tiny, 2),
                 "near identity powers make the dedup ambiguous");
}

void test_poincare() {
  LoxodromicData lox = lox_of(desk_gamma_a());
  GroupElement gamma0 = loxodromic_reconstruct(lox);
  PoincareKernel kern = make_poincare_kernel(lox, SubsetIndex(), 0.0, 8);
  std::vector<GroupElement> pair = {desk_gamma_a(), desk_gamma_b()};
  std::vector<CosetRep> cosets = coset_enumerate(pair, lox, 3);

  Vec zv(1);
  zv(0) = cplx(0.2, 0.1);
  BallPoint z = make_ball_point(zv);

  PoincareValue lone = poincare_series(kern, {cosets[0]}, z);
  REQUIRE(mv_norm(lone.value - q_closed(kern, z)) < 1e-14, "single coset sum is the kernel");

  PoincareValue full = poincare_series(kern, cosets, z);
  REQUIRE(full.shell_tails.size() == 4, "one tail per shell");
  for (size_t s = 1; s + 1 < full.shell_tails.size(); ++s)
    REQUIRE(full.shell_tails[s + 1] < full.shell_tails[s], "shell norms decay");
  REQUIRE(full.tails_decreasing, "decay flag set");

  // Truncation invariance: slashing by the closed line's element moves
  // the sum by at most the outermost shells.
  PoincareValue moved = poincare_series(kern, cosets, mobius(gamma0, z));
  cplx lhs = moved.value.at(SubsetIndex()) *
             std::pow(cocycle(gamma0, z), cplx(8.0, 0.0));
  cplx rhs = full.value.at(SubsetIndex());
  double slack = 20.0 * full.shell_tails.back() + 1e-9 * std::abs(rhs);
  REQUIRE(std::abs(lhs - rhs) <= slack, "truncated sum is invariant up to the tail");

  std::vector<CosetRep> fake;
  for (int len = 0; len < 3; ++len) {
    CosetRep rep;
    rep.word.assign(len, 0);
    rep.matrix = GroupElement::identity(1, 0);
    fake.push_back(rep);
  }
  PoincareValue stuck = poincare_series(kern, fake, z);
  REQUIRE(!stuck.tails_decreasing, "constant shells trip the divergence warning");
}

void test_reproducing() {
  QuadratureSpec quad{96, 96};
  SubsetIndex none;

  SuperFunction onef = constant_function(1, 0, Multivector::monomial(0, none, 1.0));
  SuperFunction zf;
  zf.n = 1;
  zf.r = 0;
  zf.degree = 0;
  zf.eval = [](const BallPoint& z) { return Multivector::monomial(0, SubsetIndex(), z.z(0)); };
  SuperFunction z2f = zf;
  z2f.eval = [](const BallPoint& z) {
    return Multivector::monomial(0, SubsetIndex(), z.z(0) * z.z(0));
  };

  Vec w0 = Vec::Zero(1);
  Vec w3 = Vec::Zero(1);
  w3(0) = 0.3;
  Vec wi = Vec::Zero(1);
  wi(0) = cplx(0.0, 0.5);

  cplx c = reproducing_check(make_ball_point(w0), none, 3, onef, quad);
  REQUIRE_CLOSE(c, cplx(M_PI / 2.0, 0.0), 1e-9, "point kernel constant for the disc");

  for (const auto& [f, w] : std::vector<std::pair<SuperFunction, Vec>>{
           {onef, w3}, {onef, wi}, {zf, w3}, {zf, wi}, {z2f, w3}, {z2f, wi}}) {
    cplx ci = reproducing_check(make_ball_point(w), none, 3, f, quad);
    REQUIRE(std::abs(ci - c) < 1e-8 * std::abs(c),
            "constant is independent of the function and the point");
  }

  SubsetIndex one = SubsetIndex::from_list({1});
  SuperFunction zeta = constant_function(1, 1, Multivector::monomial(1, one, 1.0));
  cplx c1 = reproducing_check(make_ball_point(w0), one, 3, zeta, quad);
  REQUIRE_CLOSE(c1, cplx(M_PI / 3.0, 0.0), 1e-9, "point kernel constant for one odd direction");
  SuperFunction zzeta = zeta;
  zzeta.degree = 1;
  zzeta.eval = [one](const BallPoint& z) {
    return Multivector::monomial(1, one, cplx(0.4, 0.0) + z.z(0));
  };
  cplx c1b = reproducing_check(make_ball_point(w3), one, 3, zzeta, quad);
  REQUIRE(std::abs(c1b - c1) < 1e-8 * std::abs(c1), "odd constant matches on a moving function");

  REQUIRE_THROWS(reproducing_check(make_ball_point(w0), none, 3, zf, quad),
                 "vanishing evaluation point rejected");
  REQUIRE_THROWS(reproducing_check(make_ball_point(w3), none, 2, onef, quad),
                 "weight below the kernel bound rejected");

  // Degree orthogonality: the pairing itself vanishes when the kernel
  // cannot reproduce the function at the chosen point.
  SuperFunction kernel0;
  kernel0.n = 1;
  kernel0.r = 0;
  kernel0.degree = 0;
  kernel0.eval = [](const BallPoint& z) {
    cplx d = 1.0;
    cplx delta = jordan_delta(z.z, Vec::Zero(1));
    return Multivector::monomial(0, SubsetIndex(), d / (delta * delta * delta));
  };
  cplx orth = petersson_pair(kernel0, zf, 3, quad);
  REQUIRE(std::abs(orth) < 1e-12, "mismatched degree pairs to zero");
}

}  // namespace

int main() {
  test_frequency_lattice();
  test_screening();
  test_q_forms();
  test_reverse_bernstein();
  test_cosets();
  test_poincare();
  test_reproducing();
  test_summary("series");
  return 0;
}
