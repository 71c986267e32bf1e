#ifndef SUPCUSP_SERIES_HPP
#define SUPCUSP_SERIES_HPP

// Fourier analysis along closed flow lines, the inverse derivative on
// high-frequency trigonometric series, the spanning kernel q in closed
// and integral form, coset-truncated Poincare series relative to the
// cyclic group of one loxodromic element, and the reproducing-kernel
// ratio check.

#include <cstdint>
#include <map>
#include <vector>

#include "supcusp/structure.hpp"

namespace supcusp {

// Fractional offset nu_I of the admissible frequencies for monomial I
// at weight k: the frequencies along a closed flow line of period t0
// are m = (j - nu_I)/t0 with j integer, where
// nu_I = (k+|I|) chi + sum_{i in I} d_i mod 1.
double lattice_offset(const LoxodromicData& lox, SubsetIndex I, int k);

// All admissible frequencies in the open window (-C, C), sorted.
std::vector<double> frequency_lattice(const LoxodromicData& lox, SubsetIndex I,
                                      int k, double C);

// True when w fixes the origin and commutes with the diagonal flow,
// i.e. w lies in the compact centralizer M.
bool in_flow_centralizer(const GroupElement& w, double tol = 1e-10);

// Screened values of f along the flow line of lox, twisted by w in M:
// the lift of f evaluated at g a_t w. Throws std::invalid_argument
// when w is not in the centralizer.
Multivector screen_h(const SuperFunction& f, int k, const LoxodromicData& lox,
                     double t, const GroupElement& w);

// Trigonometric series along a closed flow line: for each monomial I
// the frequencies lie on the shifted lattice (j - nu_I)/t0.
struct FourierSpectrum {
  struct Mode {
    SubsetIndex I;
    double m = 0.0;
    cplx b;
  };

  double t0 = 1.0;
  std::map<std::uint32_t, double> offsets;  // I -> nu_I in [0, 1)
  std::vector<Mode> modes;                  // sorted by (I, m)

  // Largest |m t0 + nu_I - round(...)| over the stored modes; zero for
  // a spectrum that sits exactly on its lattice.
  double lattice_residual() const;
};

// Evaluator of the screened function: (t, w) -> multivector value.
using ScreenEvaluator =
    std::function<Multivector(double, const GroupElement&)>;

// Extracts the coefficients b_{I,m} = (1/t0) integral_0^{t0}
// h_I(t, 1) e^{-2 pi i m t} dt for every lattice frequency in the open
// window (-C, C), using the periodic trapezoid rule with at least
// 16 (C t0 + 1) samples. The evaluator must satisfy the closed-line
// covariance h(t + t0, 1) = h(t, w0^{-1}); this is checked at three
// sample times and std::invalid_argument is thrown on failure.
FourierSpectrum fourier_coefficients(const ScreenEvaluator& h,
                                     const LoxodromicData& lox,
                                     const std::vector<SubsetIndex>& components,
                                     int k, double C, int quad_points = 0);

// Termwise antiderivative b -> b/(2 pi i m) of a series whose
// frequencies all satisfy |m| >= C (std::invalid_argument otherwise).
// When sup_ratio is given it receives the ratio of grid sup-norms of
// the antiderivative and the input, estimated on 512 points per
// component; the ratio is bounded by 6/(pi C).
FourierSpectrum reverse_bernstein(const FourierSpectrum& spec, double C,
                                  double* sup_ratio = nullptr);

// Parameters of one spanning kernel: the closed flow line, the wedge
// monomial, an admissible frequency on its lattice, and the weight.
struct PoincareKernel {
  LoxodromicData lox;
  SubsetIndex I;
  double m = 0.0;
  int k = 0;
};

// Validates lattice membership of m and the weight bound
// k >= 2n + 1 - |I| required for absolute convergence.
PoincareKernel make_poincare_kernel(const LoxodromicData& lox, SubsetIndex I,
                                    double m, int k);

// Closed form of the kernel:
//   (Delta(z, X+) Delta(z, X-))^{-(k+|I|)/2}
//   ((1 + v1)/(1 - v1))^{pi i m} (E_g^{-1} zeta)^I,    v = g^{-1} z,
// with principal branches throughout; both bases have positive real
// part on the ball, so the branches are globally continuous. Throws
// std::overflow_error when the scalar factor leaves double range.
Multivector q_closed(const PoincareKernel& kern, const BallPoint& z);

// Quadrature form of the same kernel up to one global constant:
//   integral e^{2 pi i m t} Delta(z, g a_t 0)^{-k-|I|}
//            conj(j(g a_t, 0))^{k+|I|} dt (E_g^{-1} zeta)^I
// truncated to [-tmax, tmax] with composite Gauss-Legendre panels.
// The neglected tail decays like e^{-(k+|I|)|t|}; its estimate is
// written to tail_estimate when given, and std::runtime_error is
// thrown when it exceeds tail_tol relative to the computed value.
Multivector q_integral(const PoincareKernel& kern, const BallPoint& z,
                       double tmax = 20.0, int quad_points = 800,
                       double* tail_estimate = nullptr,
                       double tail_tol = 1e-8);

// The closed form packaged as a function on the ball, for slashing and
// pairing.
SuperFunction q_function(const PoincareKernel& kern);

// One coset of the cyclic group of the loxodromic element inside the
// group generated by `generators`: a representative word over the
// doubled letter list (index ell < G is generators[ell], ell >= G is
// generators[ell - G].inverse()) and its evaluated matrix.
struct CosetRep {
  std::vector<int> word;
  GroupElement matrix;
};

// Word ball of radius L over the generators and their inverses,
// deduplicated modulo left multiplication by powers gamma0^j with
// |j| <= j_max: two words land in the same coset when their difference
// matches a power to within tol (relative). A difference matching two
// distinct powers means the tolerance is misconfigured and raises
// std::logic_error.
std::vector<CosetRep> coset_enumerate(const std::vector<GroupElement>& generators,
                                      const LoxodromicData& lox, int L,
                                      int j_max = 64, double tol = 1e-8);

struct PoincareValue {
  Multivector value;
  // Norm of the summed contribution of each word-length shell.
  std::vector<double> shell_tails;
  // False when the last three shells fail to decay (the truncation is
  // then meaningless; a warning is printed).
  bool tails_decreasing = true;
};

// Truncated coset sum of the slashed kernel at z, with per-shell
// partial norms as an empirical convergence diagnostic.
PoincareValue poincare_series(const PoincareKernel& kern,
                              const std::vector<CosetRep>& cosets,
                              const BallPoint& z);

// Pairs the point-evaluation kernel Delta(., w)^{-k-|I|} zeta^I against
// f and divides by f_I(w). The result should be one constant c(k,I,n)
// independent of f and w; deviations expose quadrature or weight
// errors. Throws std::invalid_argument when f_I(w) is too small or the
// weight is below the kernel's convergence bound.
cplx reproducing_check(const BallPoint& w, SubsetIndex I, int k,
                       const SuperFunction& f, const QuadratureSpec& quad);

}  // namespace supcusp

#endif
