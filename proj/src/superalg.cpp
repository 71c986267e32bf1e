#include "supcusp/superalg.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace supcusp {

SubsetIndex SubsetIndex::from_list(const std::vector<int>& indices) {
  SubsetIndex I;
  for (int j : indices) {
    if (j < 1 || j > max_generators)
      throw std::invalid_argument("SubsetIndex: index out of range [1,16]");
    std::uint32_t bit = 1u << (j - 1);
    if (I.bits & bit)
      throw std::invalid_argument("SubsetIndex: repeated index");
    I.bits |= bit;
  }
  return I;
}

int SubsetIndex::size() const { return std::popcount(bits); }

bool SubsetIndex::contains(int j) const {
  return j >= 1 && j <= max_generators && (bits & (1u << (j - 1)));
}

std::vector<int> SubsetIndex::to_list() const {
  std::vector<int> out;
  for (int j = 1; j <= max_generators; ++j)
    if (contains(j)) out.push_back(j);
  return out;
}

std::string SubsetIndex::to_string() const {
  std::string s = "[";
  bool first = true;
  for (int j : to_list()) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "]";
}

int wedge_sign(SubsetIndex I, SubsetIndex J) {
  if (I.bits & J.bits) return 0;
  // Each element of J moves left past the elements of I above it.
  int inversions = 0;
  for (int j = 1; j <= SubsetIndex::max_generators; ++j) {
    if (!J.contains(j)) continue;
    std::uint32_t above = I.bits & ~((1u << j) - 1u);
    inversions += std::popcount(above);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

Multivector Multivector::monomial(int r, SubsetIndex I, cplx c) {
  Multivector v(r);
  v.add(I, c);
  return v;
}

cplx Multivector::at(SubsetIndex I) const {
  auto it = coeff.find(I.bits);
  return it == coeff.end() ? cplx(0.0) : it->second;
}

void Multivector::add(SubsetIndex I, cplx c) {
  if (r > 0 && (I.bits >> r) != 0)
    throw std::invalid_argument("Multivector: subset exceeds generator count");
  if (r == 0 && I.bits != 0)
    throw std::invalid_argument("Multivector: subset exceeds generator count");
  coeff[I.bits] += c;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (r != o.r) throw std::invalid_argument("Multivector: generator count mismatch");
  for (const auto& [bits, c] : o.coeff) coeff[bits] += c;
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  if (r != o.r) throw std::invalid_argument("Multivector: generator count mismatch");
  for (const auto& [bits, c] : o.coeff) coeff[bits] -= c;
  return *this;
}

Multivector& Multivector::operator*=(cplx s) {
  for (auto& [bits, c] : coeff) c *= s;
  return *this;
}

Multivector Multivector::operator+(const Multivector& o) const {
  Multivector v = *this;
  v += o;
  return v;
}

Multivector Multivector::operator-(const Multivector& o) const {
  Multivector v = *this;
  v -= o;
  return v;
}

Multivector Multivector::operator*(cplx s) const {
  Multivector v = *this;
  v *= s;
  return v;
}

void Multivector::prune(double tol) {
  for (auto it = coeff.begin(); it != coeff.end();)
    it = (std::abs(it->second) <= tol) ? coeff.erase(it) : std::next(it);
}

double mv_norm(const Multivector& v) {
  double s = 0.0;
  for (const auto& [bits, c] : v.coeff) s += std::norm(c);
  return std::sqrt(s);
}

Multivector minor_action(const Mat& E, SubsetIndex I) {
  const int r = static_cast<int>(E.rows());
  if (E.cols() != E.rows())
    throw std::invalid_argument("minor_action: matrix must be square");
  if (r > SubsetIndex::max_generators)
    throw std::invalid_argument("minor_action: more than 16 generators");
  if ((r == 0 && I.bits != 0) || (r > 0 && (I.bits >> r) != 0))
    throw std::invalid_argument("minor_action: subset exceeds matrix size");

  const std::vector<int> cols = I.to_list();
  const int s = static_cast<int>(cols.size());
  Multivector out(r);
  if (s == 0) {
    out.add(SubsetIndex(), 1.0);
    return out;
  }
  for (std::uint32_t jbits = 0; jbits < (1u << r); ++jbits) {
    SubsetIndex J(jbits);
    if (J.size() != s) continue;
    const std::vector<int> rows = J.to_list();
    Mat sub(s, s);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        sub(a, b) = E(rows[a] - 1, cols[b] - 1);
    out.add(J, sub.determinant());
  }
  return out;
}

double subset_trace(const DiagonalPhase& phase, SubsetIndex I) {
  double t = 0.0;
  for (int j : I.to_list()) {
    if (j > static_cast<int>(phase.d.size()))
      throw std::invalid_argument("subset_trace: index beyond phase vector");
    t += phase.d[j - 1];
  }
  return t;
}

}  // namespace supcusp
