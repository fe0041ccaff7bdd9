#include "superinv/superpoly.hpp"

#include <algorithm>
#include <sstream>

#include "superinv/error.hpp"

namespace superinv {

SuperPolynomial::SuperPolynomial(std::size_t even_count, std::size_t odd_count)
    : even_count_(even_count), odd_count_(odd_count) {
  if (odd_count > kMaxGenerators) throw Error(Errc::GeneratorCap, "too many odd symbols");
}

SuperPolynomial::SuperPolynomial(std::size_t even_count, std::size_t odd_count, const Rational& c)
    : SuperPolynomial(even_count, odd_count) {
  if (sgn(c) != 0) terms_.emplace(Monomial{std::vector<unsigned>(even_count, 0), 0}, c);
}

SuperPolynomial SuperPolynomial::even_symbol(std::size_t even_count, std::size_t odd_count,
                                             std::size_t i) {
  if (i < 1 || i > even_count) throw Error(Errc::ShapeMismatch, "even symbol index out of range");
  SuperPolynomial p(even_count, odd_count);
  Monomial m{std::vector<unsigned>(even_count, 0), 0};
  m.even[i - 1] = 1;
  p.terms_.emplace(std::move(m), 1);
  return p;
}

SuperPolynomial SuperPolynomial::odd_symbol(std::size_t even_count, std::size_t odd_count,
                                            std::size_t i) {
  if (i < 1 || i > odd_count) throw Error(Errc::ShapeMismatch, "odd symbol index out of range");
  SuperPolynomial p(even_count, odd_count);
  p.terms_.emplace(Monomial{std::vector<unsigned>(even_count, 0), Mask{1} << (i - 1)}, 1);
  return p;
}

bool SuperPolynomial::is_even_only() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.odd == 0; });
}

Rational SuperPolynomial::constant_term() const {
  return coefficient(Monomial{std::vector<unsigned>(even_count_, 0), 0});
}

Rational SuperPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SuperPolynomial::add_term(Monomial m, const Rational& c) {
  if (m.even.size() != even_count_) throw Error(Errc::ShapeMismatch, "exponent vector length");
  if (odd_count_ < 32 && (m.odd >> odd_count_) != 0) {
    throw Error(Errc::ShapeMismatch, "odd symbol index out of range");
  }
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

SuperPolynomial SuperPolynomial::derivative_even(std::size_t i) const {
  if (i < 1 || i > even_count_) throw Error(Errc::ShapeMismatch, "even symbol index out of range");
  SuperPolynomial d(even_count_, odd_count_);
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.even[i - 1];
    if (e == 0) continue;
    Monomial dm = m;
    --dm.even[i - 1];
    d.add_term(std::move(dm), c * e);
  }
  return d;
}

SuperPolynomial SuperPolynomial::permuted(const std::vector<std::size_t>& perm) const {
  if (even_count_ != odd_count_ || perm.size() != even_count_) {
    throw Error(Errc::ShapeMismatch, "permutation needs matching symbol counts");
  }
  SuperPolynomial out(even_count_, odd_count_);
  for (const auto& [m, c] : terms_) {
    Monomial pm{std::vector<unsigned>(even_count_, 0), 0};
    for (std::size_t i = 0; i < even_count_; ++i) pm.even[perm[i] - 1] = m.even[i];
    // Product alpha_{perm(i1)} alpha_{perm(i2)} ... in the original order.
    int sign = 1;
    for (unsigned i : mask_to_indices(m.odd)) {
      const Mask bit = Mask{1} << (perm[i - 1] - 1);
      sign *= merge_sign(pm.odd, bit);
      pm.odd |= bit;
    }
    out.add_term(std::move(pm), sign > 0 ? c : Rational(-c));
  }
  return out;
}

std::map<unsigned, SuperPolynomial> SuperPolynomial::by_weight(
    const std::vector<unsigned>& even_weight, const std::vector<unsigned>& odd_weight) const {
  std::map<unsigned, SuperPolynomial> parts;
  for (const auto& [m, c] : terms_) {
    unsigned w = 0;
    for (std::size_t i = 0; i < m.even.size(); ++i) w += m.even[i] * even_weight.at(i);
    for (unsigned i : mask_to_indices(m.odd)) w += odd_weight.at(i - 1);
    parts.try_emplace(w, even_count_, odd_count_).first->second.add_term(m, c);
  }
  return parts;
}

unsigned SuperPolynomial::max_odd_symbol() const {
  unsigned top = 0;
  for (const auto& [m, c] : terms_) {
    for (unsigned i : mask_to_indices(m.odd)) top = std::max(top, i);
  }
  return top;
}

void SuperPolynomial::check_same(const SuperPolynomial& y) const {
  if (even_count_ != y.even_count_ || odd_count_ != y.odd_count_) {
    throw Error(Errc::ShapeMismatch, "polynomials over different symbol sets");
  }
}

SuperPolynomial SuperPolynomial::operator-() const {
  SuperPolynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& y) {
  check_same(y);
  for (const auto& [m, c] : y.terms_) add_term(m, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& y) {
  check_same(y);
  for (const auto& [m, c] : y.terms_) add_term(m, -c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

SuperPolynomial operator*(const SuperPolynomial& x, const SuperPolynomial& y) {
  x.check_same(y);
  SuperPolynomial r(x.even_count_, x.odd_count_);
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) {
      const int sign = merge_sign(mx.odd, my.odd);
      if (sign == 0) continue;
      SuperPolynomial::Monomial m{mx.even, mx.odd | my.odd};
      for (std::size_t i = 0; i < m.even.size(); ++i) m.even[i] += my.even[i];
      Rational c = cx * cy;
      if (sign < 0) c = -c;
      r.add_term(std::move(m), c);
    }
  }
  return r;
}

bool operator==(const SuperPolynomial& x, const SuperPolynomial& y) {
  return x.even_count_ == y.even_count_ && x.odd_count_ == y.odd_count_ && x.terms_ == y.terms_;
}

SuperPolynomial SuperPolynomial::pow(unsigned k) const {
  SuperPolynomial r(even_count_, odd_count_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string to_string(const SuperPolynomial& p, const std::string& even_name,
                      const std::string& odd_name) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c0] : p.terms()) {
    Rational c = c0;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.even.size(); ++i) {
      if (m.even[i] == 0) continue;
      std::string f = even_name + std::to_string(i + 1);
      if (m.even[i] > 1) f += "^" + std::to_string(m.even[i]);
      factors.push_back(f);
    }
    for (unsigned i : mask_to_indices(m.odd)) factors.push_back(odd_name + std::to_string(i));
    if (factors.empty()) {
      os << c.get_str();
      continue;
    }
    if (c == -1) {
      os << "-";
    } else if (c != 1) {
      os << c.get_str() << "*";
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

}  // namespace superinv
