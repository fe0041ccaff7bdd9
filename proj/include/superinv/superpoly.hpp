#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "superinv/grassmann.hpp"
#include "superinv/rational.hpp"

namespace superinv {

// Polynomial in commuting even symbols and anticommuting odd symbols.
// Odd factors are stored in increasing index order; the coefficient carries
// the sign of that reordering.
class SuperPolynomial {
 public:
  struct Monomial {
    std::vector<unsigned> even;  // exponent per even symbol
    Mask odd = 0;                // bit i-1 set for odd symbol i

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
  };
  using TermMap = std::map<Monomial, Rational>;

  SuperPolynomial() = default;
  SuperPolynomial(std::size_t even_count, std::size_t odd_count);
  SuperPolynomial(std::size_t even_count, std::size_t odd_count, const Rational& c);

  static SuperPolynomial even_symbol(std::size_t even_count, std::size_t odd_count, std::size_t i);
  static SuperPolynomial odd_symbol(std::size_t even_count, std::size_t odd_count, std::size_t i);

  std::size_t even_count() const { return even_count_; }
  std::size_t odd_count() const { return odd_count_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_even_only() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  // Adds c times the monomial; exponent vector length must equal even_count.
  void add_term(Monomial m, const Rational& c);

  SuperPolynomial derivative_even(std::size_t i) const;  // 1-based
  // Simultaneous relabelling i -> perm[i-1] of even and odd symbols (needs
  // equal counts); odd factors are re-sorted with sign.
  SuperPolynomial permuted(const std::vector<std::size_t>& perm) const;
  // Homogeneous parts keyed by sum of weights; weight of even symbol i is
  // even_weight[i-1], of odd symbol i odd_weight[i-1].
  std::map<unsigned, SuperPolynomial> by_weight(const std::vector<unsigned>& even_weight,
                                                const std::vector<unsigned>& odd_weight) const;
  unsigned max_odd_symbol() const;  // largest odd index used, 0 if none

  SuperPolynomial operator-() const;
  SuperPolynomial& operator+=(const SuperPolynomial& y);
  SuperPolynomial& operator-=(const SuperPolynomial& y);
  SuperPolynomial& operator*=(const Rational& c);
  friend SuperPolynomial operator+(SuperPolynomial x, const SuperPolynomial& y) { return x += y; }
  friend SuperPolynomial operator-(SuperPolynomial x, const SuperPolynomial& y) { return x -= y; }
  friend SuperPolynomial operator*(const SuperPolynomial& x, const SuperPolynomial& y);
  friend SuperPolynomial operator*(SuperPolynomial x, const Rational& c) { return x *= c; }
  friend SuperPolynomial operator*(const Rational& c, SuperPolynomial x) { return x *= c; }
  friend bool operator==(const SuperPolynomial& x, const SuperPolynomial& y);

  SuperPolynomial pow(unsigned k) const;

 private:
  void check_same(const SuperPolynomial& y) const;
  std::size_t even_count_ = 0;
  std::size_t odd_count_ = 0;
  TermMap terms_;
};

// Expressions in the formal symbols u_k (even) and xi_k (odd) share the same
// representation.
using TTauExpression = SuperPolynomial;

// Variables print as a1.., al1.. for polynomials and u1.., xi1.. for
// expressions in (u, xi).
std::string to_string(const SuperPolynomial& p, const std::string& even_name = "a",
                      const std::string& odd_name = "al");

// Substitutes ring elements for the symbols. R needs +, * and construction
// of the coefficient from `one` by scaling with a Rational.
template <class R>
R substitute(const SuperPolynomial& p, const std::vector<R>& even_images,
             const std::vector<R>& odd_images, const R& one) {
  R zero = one * Rational(0);
  R sum = zero;
  std::vector<std::vector<R>> powers(even_images.size(), std::vector<R>{one});
  for (const auto& [m, c] : p.terms()) {
    R term = one * c;
    for (std::size_t i = 0; i < m.even.size(); ++i) {
      if (m.even[i] == 0) continue;
      auto& pw = powers.at(i);
      while (pw.size() <= m.even[i]) pw.push_back(pw.back() * even_images.at(i));
      term = term * pw[m.even[i]];
    }
    for (Mask b = m.odd, i = 0; b; b >>= 1, ++i) {
      if (b & 1u) term = term * odd_images.at(i);
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace superinv
