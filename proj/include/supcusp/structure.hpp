#ifndef SUPCUSP_STRUCTURE_HPP
#define SUPCUSP_STRUCTURE_HPP

// Structure theory of the group: the diagonal flow subgroup, the
// SL(2) embedding, the restricted-root splitting of the Lie algebra,
// Iwasawa decomposition, and the classification of loxodromic
// elements with their torus data.

#include <optional>
#include <vector>

#include "supcusp/domain.hpp"

namespace supcusp {

// Flow subgroup element a_t: cosh/sinh in the (1, n+1) plane, identity
// elsewhere, identity odd block.
GroupElement a_flow(int n, int r, double t);

// Embedding of SU(1,1) into the corner (1, n+1) plane, identity middle
// block and identity odd block. Validates the input (J_2-unitary, unit
// determinant).
GroupElement rho_embed(const Eigen::Matrix2cd& m, int n, int r);

// Element of the Lie algebra: body block X with X* J + J X = 0, odd
// block F skew-Hermitian, tr X = tr F.
struct LieAlgebraElement {
  int n = 1;
  int r = 0;
  Mat gblock;  // (n+1) x (n+1)
  Mat eblock;  // r x r

  static LieAlgebraElement zero(int n, int r);
  LieAlgebraElement operator+(const LieAlgebraElement& o) const;
  LieAlgebraElement operator-(const LieAlgebraElement& o) const;
  LieAlgebraElement operator*(double s) const;
};

double algebra_residual(const LieAlgebraElement& xi);
LieAlgebraElement bracket(const LieAlgebraElement& a, const LieAlgebraElement& b);
// Ad_g xi = g xi g^{-1}, blockwise.
LieAlgebraElement ad_conjugate(const GroupElement& g, const LieAlgebraElement& xi);
// Invariant inner product (1/2) Re tr(xi* eta); the flow generator has
// norm one.
double lie_inner(const LieAlgebraElement& a, const LieAlgebraElement& b);
double lie_norm(const LieAlgebraElement& a);
// Group exponential, blockwise.
GroupElement lie_exp(const LieAlgebraElement& xi);
// d/dt a_t at t = 0.
LieAlgebraElement flow_generator(int n, int r);

// Components of xi under Ad of the flow: Ad_{a_t} acts by e^{alpha t}
// on the alpha component. Nonzero roots are {+-2} for n = 1 and
// {+-1, +-2} for n >= 2; the zero-root space splits into the flow line
// and its centralizer complement.
struct RootComponents {
  LieAlgebraElement a_part, m_part;
  LieAlgebraElement plus1, minus1, plus2, minus2;
};

RootComponents root_split(const LieAlgebraElement& xi);

// Orthonormal bases (for lie_inner) of the individual root spaces.
struct SplittingBasis {
  std::vector<LieAlgebraElement> a, m, plus1, minus1, plus2, minus2;

  // Contracting (positive-root) and expanding (negative-root)
  // directions of the forward flow.
  std::vector<LieAlgebraElement> contracting() const;
  std::vector<LieAlgebraElement> expanding() const;
};

SplittingBasis splitting_basis(int n, int r);

// g = n_part * a_t * k_part with n_part a Heisenberg translation
// conjugated into the ball model, and k_part fixing the origin.
struct IwasawaTriple {
  GroupElement n_part;
  double t = 0.0;
  GroupElement k_part;
};

IwasawaTriple iwasawa_decompose(const GroupElement& g);

// Data of a regular loxodromic element gamma = g a_{t0} w0 g^{-1}:
// the conjugator g, translation length t0 > 0, torus part w0 (in the
// centralizer of the flow inside the stabilizer of the origin, with
// diagonal odd block E0), phase data (d_j, chi) with
// exp(2 pi i d_j) the diagonal of E0 and exp(2 pi i chi) the
// automorphy phase of w0, and the fixed boundary points X+- = g(+-e1).
struct LoxodromicData {
  GroupElement g;
  double t0 = 0.0;
  GroupElement w0;
  DiagonalPhase phases;
  Vec x_plus;
  Vec x_minus;
};

enum class LoxType { NotLoxodromic, IrregularLoxodromic, RegularLoxodromic };

struct Classification {
  LoxType type = LoxType::NotLoxodromic;
  // Set when the spectrum sits inside the decision band around the
  // unit circle, so the type cannot be trusted.
  bool boundary_undecidable = false;
  double max_log_modulus = 0.0;
  std::optional<LoxodromicData> data;
};

Classification classify_element(const GroupElement& gamma, double eigen_tol = 1e-8);

// gamma = g a_{t0} w0 g^{-1} reassembled from the classification data.
GroupElement loxodromic_reconstruct(const LoxodromicData& lox);

// Representative of the nontrivial Weyl class: conjugation by it
// reverses the flow, and it normalizes the origin stabilizer.
GroupElement weyl_flip(int n, int r);

// Word-ball search for a root delta with delta^power = gamma.
struct LatticeContext {
  std::vector<GroupElement> generators;
  int word_ball = 3;
};

struct PrimitiveRoot {
  GroupElement root;
  int power = 1;
  // True when the search exhausted the word ball without certifying a
  // proper root; the returned element is gamma itself in that case.
  bool not_proven_primitive = false;
};

PrimitiveRoot primitive_root(const GroupElement& gamma, const LatticeContext& ctx,
                             int max_power = 8);

}  // namespace supcusp

#endif
