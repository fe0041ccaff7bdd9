#include "superinv/univariate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "superinv/error.hpp"

namespace superinv {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational UPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::deflate(const Rational& r) const {
  if (coeffs_.size() <= 1) return UPoly();
  std::vector<Rational> q(coeffs_.size() - 1);
  Rational carry = 0;
  for (std::size_t i = coeffs_.size() - 1; i >= 1; --i) {
    carry = coeffs_[i] + carry * r;
    q[i - 1] = carry;
  }
  return UPoly(std::move(q));
}

std::string to_string(const UPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

RationalRoots rational_roots(const UPoly& p) {
  if (p.is_zero()) throw Error(Errc::Parse, "roots of the zero polynomial");
  RationalRoots out;
  UPoly rest = p;
  unsigned zero_mult = 0;
  while (rest.degree() > 0 && sgn(rest.coeffs()[0]) == 0) {
    rest = rest.deflate(0);
    ++zero_mult;
  }
  std::vector<std::pair<Rational, unsigned>> roots;
  if (zero_mult) roots.emplace_back(Rational(0), zero_mult);

  if (rest.degree() > 0) {
    // Candidates p/q with p | a_0 and q | a_n after clearing denominators.
    Integer l = 1;
    for (const auto& c : rest.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    const auto& cs = rest.coeffs();
    const Integer a0 = Rational(cs.front() * l).get_num();
    const Integer an = Rational(cs.back() * l).get_num();
    const auto num_divs = positive_divisors(a0);
    const auto den_divs = positive_divisors(an);
    std::set<Rational> candidates;
    for (const auto& a : num_divs)
      for (const auto& b : den_divs) {
        Rational r(a, b);
        r.canonicalize();
        candidates.insert(r);
        candidates.insert(-r);
      }
    for (const auto& r : candidates) {
      unsigned mult = 0;
      while (rest.degree() > 0 && sgn(rest(r)) == 0) {
        rest = rest.deflate(r);
        ++mult;
      }
      if (mult) roots.emplace_back(r, mult);
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.roots = std::move(roots);
  out.residual = rest;
  return out;
}

}  // namespace superinv
