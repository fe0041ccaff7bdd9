#pragma once

#include <string>
#include <utility>
#include <vector>

#include "superinv/rational.hpp"

namespace superinv {

// Dense univariate polynomial over Q, coefficients lowest degree first,
// trailing zeros trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational operator()(const Rational& x) const;

  // Synthetic division by (x - r); returns quotient, drops the remainder.
  UPoly deflate(const Rational& r) const;

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

std::string to_string(const UPoly& p, const std::string& var = "x");

struct RationalRoots {
  std::vector<std::pair<Rational, unsigned>> roots;  // sorted, with multiplicity
  UPoly residual;                                    // no rational roots; constant if split
};

RationalRoots rational_roots(const UPoly& p);

}  // namespace superinv
