#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "superinv/error.hpp"
#include "superinv/rational.hpp"

namespace superinv {

// Bit i-1 set <=> generator xi_i present. Monomials are stored in increasing
// generator order, so a mask identifies a monomial together with its sign.
using Mask = std::uint32_t;

constexpr unsigned kMaxGenerators = 32;

// Process-wide upper bound on the number of Grassmann generators (default 16).
unsigned generator_cap();
void set_generator_cap(unsigned cap);

// Sign of xi^a * xi^b once the product is re-sorted into increasing order;
// zero when the monomials share a generator.
int merge_sign(Mask a, Mask b);

inline unsigned mask_degree(Mask m) { return static_cast<unsigned>(__builtin_popcount(m)); }

std::vector<unsigned> mask_to_indices(Mask m);  // 1-based, increasing
Mask indices_to_mask(std::span<const unsigned> idx, unsigned q);

// Element of the Grassmann algebra on q generators over the rationals.
// Terms are kept sorted by mask with no zero coefficients, so equality is
// structural.
class Grassmann {
 public:
  struct Term {
    Mask mask;
    Rational coeff;
  };

  Grassmann() = default;
  explicit Grassmann(unsigned q);
  Grassmann(unsigned q, const Rational& c);

  static Grassmann generator(unsigned q, unsigned i);
  static Grassmann monomial(unsigned q, Mask m, const Rational& c = 1);
  // Terms may come in any order and may repeat; they are merged.
  static Grassmann from_terms(unsigned q, std::vector<Term> terms);

  unsigned generators() const { return q_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_even() const;  // every monomial has even length
  bool is_odd() const;   // every monomial has odd length
  Rational body() const;
  Rational coefficient(Mask m) const;
  // Smallest monomial length present; generators()+1 for zero.
  unsigned min_degree() const;

  std::pair<Grassmann, Grassmann> parity_split() const;
  Grassmann even_part() const { return parity_split().first; }
  Grassmann odd_part() const { return parity_split().second; }
  Grassmann soul() const;
  Grassmann component(unsigned degree) const;

  // Throws Errc::ZeroBody when the body vanishes.
  Grassmann inverse() const;
  Grassmann pow(unsigned k) const;

  Grassmann operator-() const;
  Grassmann& operator+=(const Grassmann& y);
  Grassmann& operator-=(const Grassmann& y);
  Grassmann& operator*=(const Rational& c);

  friend Grassmann operator+(Grassmann x, const Grassmann& y) { return x += y; }
  friend Grassmann operator-(Grassmann x, const Grassmann& y) { return x -= y; }
  friend Grassmann operator*(const Grassmann& x, const Grassmann& y);
  friend Grassmann operator*(Grassmann x, const Rational& c) { return x *= c; }
  friend Grassmann operator*(const Rational& c, Grassmann x) { return x *= c; }
  friend bool operator==(const Grassmann& x, const Grassmann& y);

 private:
  friend class GrassmannAccumulator;
  unsigned q_ = 0;
  std::vector<Term> terms_;
};

// Collects sums of products before a single sort-and-merge; used for matrix
// products and other inner loops.
class GrassmannAccumulator {
 public:
  explicit GrassmannAccumulator(unsigned q) : q_(q) {}
  void add(const Grassmann& x);
  void add_product(const Grassmann& x, const Grassmann& y);
  void sub_product(const Grassmann& x, const Grassmann& y);
  Grassmann finish();

 private:
  void check(const Grassmann& x) const;
  unsigned q_;
  std::vector<Grassmann::Term> pending_;
};

std::string to_string(const Grassmann& x);

}  // namespace superinv
