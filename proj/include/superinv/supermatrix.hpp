#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "superinv/grassmann.hpp"
#include "superinv/linalg.hpp"

namespace superinv {

// Queer(n): n x n with no entry-parity constraint.
// Standard(p, q): (p+q) x (p+q) split into blocks X (p x p), Y, Z, T (q x q).
struct Shape {
  enum class Kind { Queer, Standard };

  Kind kind = Kind::Queer;
  std::size_t p = 0;  // n for Queer
  std::size_t q = 0;  // odd block size for Standard, 0 for Queer

  static Shape queer(std::size_t n) { return {Kind::Queer, n, 0}; }
  static Shape standard(std::size_t p, std::size_t q) { return {Kind::Standard, p, q}; }

  bool is_queer() const { return kind == Kind::Queer; }
  bool is_standard() const { return kind == Kind::Standard; }
  std::size_t dim() const { return p + q; }
  // Index i of a Standard shape is an even (first p) or odd basis vector.
  bool odd_index(std::size_t i) const { return is_standard() && i >= p; }

  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& s);

enum class ParityClass { Even, Odd, Any };

std::string to_string(ParityClass p);

// Matrix over the Grassmann algebra with a declared shape and parity class.
// The parity class is validated on construction: for Standard shapes an even
// matrix has even X, T blocks and odd Y, Z blocks, an odd matrix the
// reverse. Queer matrices carry ParityClass::Any.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(Shape shape, ParityClass parity, unsigned q);  // zero matrix
  SuperMatrix(Shape shape, ParityClass parity, unsigned q, std::vector<Grassmann> entries);

  static SuperMatrix identity(Shape shape, unsigned q);
  static SuperMatrix from_rational(Shape shape, ParityClass parity, unsigned q,
                                   const RationalMatrix& m);

  const Shape& shape() const { return shape_; }
  ParityClass parity() const { return parity_; }
  unsigned generators() const { return q_; }
  std::size_t dim() const { return shape_.dim(); }

  const Grassmann& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim() + j];
  }
  const std::vector<Grassmann>& entries() const { return entries_; }

  RationalMatrix body() const;
  bool is_zero() const;
  // Smallest monomial length over all entries (generators()+1 if zero).
  unsigned min_degree() const;
  // Submatrix on the given (sorted) index set; the result is Queer(k) for
  // queer input and Standard(k_even, k_odd) for standard input.
  SuperMatrix principal_submatrix(const std::vector<std::size_t>& idx) const;
  SuperMatrix with_parity(ParityClass parity) const;

  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator*(const Grassmann& c, const SuperMatrix& a);
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

 private:
  void validate() const;
  Shape shape_;
  ParityClass parity_ = ParityClass::Any;
  unsigned q_ = 0;
  std::vector<Grassmann> entries_;
};

std::string to_string(const SuperMatrix& m);

// Element of GQ(n) or GL(p|q): invertible body; even for standard shapes.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(SuperMatrix g);
  static GroupElement identity(Shape shape, unsigned q);

  const SuperMatrix& matrix() const { return g_; }
  const SuperMatrix& inverse() const { return inv_; }
  GroupElement inverted() const;
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  GroupElement(SuperMatrix g, SuperMatrix inv) : g_(std::move(g)), inv_(std::move(inv)) {}
  SuperMatrix g_;
  SuperMatrix inv_;
};

SuperMatrix mat_mul(const SuperMatrix& a, const SuperMatrix& b);
SuperMatrix mat_pow(const SuperMatrix& a, unsigned k);
// Body inverse followed by a finite geometric series in the nilpotent part.
// Throws SingularBodyError.
SuperMatrix mat_invert(const SuperMatrix& a);

// Even-entry and odd-entry parts of a queer matrix.
std::pair<SuperMatrix, SuperMatrix> queer_split(const SuperMatrix& a);

Grassmann trace(const SuperMatrix& a);
Grassmann supertrace(const SuperMatrix& a);
Grassmann qtr(const SuperMatrix& a);
Grassmann qet(const SuperMatrix& a);
// k^{-1} qtr A^k on Queer(n); (2k-1)^{-1} str A^{2k-1} on odd Standard(n, n).
Grassmann tau(const SuperMatrix& a, unsigned k);
std::vector<Grassmann> taus(const SuperMatrix& a, unsigned count);

// G^{-1} A G.
SuperMatrix conjugate(const SuperMatrix& a, const GroupElement& g);

// Whether tau is defined: Queer(n), or odd Standard(n, n).
bool has_tau_family(const SuperMatrix& a);
// n for Queer(n) and Standard(n, n).
std::size_t family_rank(const SuperMatrix& a);

}  // namespace superinv
