#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "superinv/supermatrix.hpp"

namespace superinv {

struct SampleOptions {
  long coefficient_bound = 3;
  unsigned max_soul_terms = 3;  // per parity component of each entry
  unsigned max_soul_degree = 0;  // 0 means no limit beyond q
};

// Seeded source of random scalars and matrices; owns its generator state.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, SampleOptions opts = {}) : rng_(seed), opts_(opts) {}

  std::mt19937_64& engine() { return rng_; }
  const SampleOptions& options() const { return opts_; }

  long integer(long lo, long hi);
  // Nonzero rational with numerator in [-bound, bound] and small denominator.
  Rational nonzero_rational();
  Rational rational();  // possibly zero

  // Random monomial mask of the given degree among q generators.
  Mask mask_of_degree(unsigned q, unsigned degree);
  // Random soul of the requested parity with at most max_soul_terms monomials.
  Grassmann soul(unsigned q, bool odd);
  Grassmann scalar(unsigned q, bool even_allowed, bool odd_allowed, bool with_body = true);
  Grassmann even_scalar(unsigned q) { return scalar(q, true, false); }
  Grassmann odd_scalar(unsigned q) { return scalar(q, false, true); }

  RationalMatrix rational_matrix(std::size_t rows, std::size_t cols);
  RationalMatrix invertible_rational(std::size_t n);
  // P D P^{-1} for a random integer-entry P.
  RationalMatrix with_spectrum(const std::vector<Rational>& eigenvalues);

  SuperMatrix matrix(Shape shape, ParityClass parity, unsigned q);
  // Random soul added to a prescribed body.
  SuperMatrix matrix_with_body(Shape shape, ParityClass parity, unsigned q,
                               const RationalMatrix& body);
  SuperMatrix soul_matrix(Shape shape, ParityClass parity, unsigned q);
  GroupElement group_element(Shape shape, unsigned q);

  // Random subset of distinct integers in [lo, hi].
  std::vector<Rational> distinct_integers(std::size_t count, long lo, long hi);
  std::uint64_t next_seed() { return rng_(); }

 private:
  std::mt19937_64 rng_;
  SampleOptions opts_;
};

SuperMatrix random_matrix(Shape shape, ParityClass parity, unsigned q, std::uint64_t seed,
                          long coefficient_bound);
GroupElement random_group_element(Shape shape, unsigned q, std::uint64_t seed,
                                  long coefficient_bound);

}  // namespace superinv
