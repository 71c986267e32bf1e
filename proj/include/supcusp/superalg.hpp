#ifndef SUPCUSP_SUPERALG_HPP
#define SUPCUSP_SUPERALG_HPP

// Finite-dimensional exterior (Grassmann) algebra layer: subsets of
// generator indices, multivectors with complex coefficients, and the
// action of a matrix on wedge monomials through its minors.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace supcusp {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// A subset of {1, ..., r} stored as a bitmask, r <= 16.  Bit j-1 set
// means index j is present.  Encodes a wedge monomial zeta^I.
struct SubsetIndex {
  static constexpr int max_generators = 16;

  std::uint32_t bits = 0;

  SubsetIndex() = default;
  explicit SubsetIndex(std::uint32_t b) : bits(b) {}
  static SubsetIndex from_list(const std::vector<int>& indices);

  int size() const;                 // |I|
  bool contains(int j) const;       // 1-based
  std::vector<int> to_list() const; // sorted, 1-based
  std::string to_string() const;    // "[1,3]", "[]" for the empty set

  bool operator==(const SubsetIndex& o) const { return bits == o.bits; }
  bool operator<(const SubsetIndex& o) const { return bits < o.bits; }
};

// Sign of zeta^I wedge zeta^J relative to zeta^(I union J), or 0 when
// the subsets overlap.
int wedge_sign(SubsetIndex I, SubsetIndex J);

// Element of the exterior algebra on r generators: a complex linear
// combination of wedge monomials.  Coefficients are kept in a sorted
// map so iteration order (and therefore every accumulated sum) is
// deterministic.
struct Multivector {
  int r = 0;
  std::map<std::uint32_t, cplx> coeff;

  Multivector() = default;
  explicit Multivector(int r_) : r(r_) {}
  static Multivector monomial(int r, SubsetIndex I, cplx c = 1.0);

  cplx at(SubsetIndex I) const;
  void add(SubsetIndex I, cplx c);

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(cplx s);
  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator*(cplx s) const;

  // Drop coefficients with |c| <= tol (absolute).
  void prune(double tol = 0.0);
};

// Euclidean norm of the coefficient vector.
double mv_norm(const Multivector& v);

// Image of the wedge monomial zeta^I under the substitution
// zeta -> E zeta, expanded over same-size monomials:
//   minor_action(E, I) = sum_J det(E[J, I]) zeta^J
// where E[J, I] is the minor of E with rows J and columns I.  This is
// a left action: minor_action(E1 E2, I) expands through minor_action
// of E1 applied to minor_action(E2, I) (Cauchy-Binet).  The literal
// component-wise expansion of (E eta)^I uses rows I and columns J,
// i.e. equals minor_action(E^T, I); the slash machinery relies on
// that orientation.
Multivector minor_action(const Mat& E, SubsetIndex I);

// Logarithmic data of a diagonal torus element: exp(2 pi i d_j) are
// the diagonal unitary eigenvalues and exp(2 pi i chi) the associated
// automorphy phase.  All entries are canonical representatives in
// [0, 1).
struct DiagonalPhase {
  std::vector<double> d;
  double chi = 0.0;
};

// Sum of the phase exponents over a subset: sum_{j in I} d_j.
double subset_trace(const DiagonalPhase& phase, SubsetIndex I);

}  // namespace supcusp

#endif
