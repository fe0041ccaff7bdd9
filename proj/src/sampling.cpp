#include "superinv/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace superinv {

namespace {
constexpr int kRetryCap = 1000;
}

long Sampler::integer(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng_);
}

Rational Sampler::nonzero_rational() {
  const long b = std::max(1L, opts_.coefficient_bound);
  long num = integer(1, b);
  if (integer(0, 1)) num = -num;
  // Mostly integers, occasionally a half or third.
  const long den = integer(0, 3) == 0 ? integer(2, 3) : 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational Sampler::rational() {
  if (integer(0, 2 * std::max(1L, opts_.coefficient_bound)) == 0) return 0;
  return nonzero_rational();
}

Mask Sampler::mask_of_degree(unsigned q, unsigned degree) {
  std::vector<unsigned> idx(q);
  std::iota(idx.begin(), idx.end(), 0u);
  std::shuffle(idx.begin(), idx.end(), rng_);
  Mask m = 0;
  for (unsigned i = 0; i < degree && i < q; ++i) m |= Mask{1} << idx[i];
  return m;
}

Grassmann Sampler::soul(unsigned q, bool odd) {
  unsigned top = q;
  if (opts_.max_soul_degree) top = std::min(top, opts_.max_soul_degree);
  std::vector<unsigned> degrees;
  for (unsigned d = odd ? 1 : 2; d <= top; d += 2) degrees.push_back(d);
  if (degrees.empty() || opts_.max_soul_terms == 0) return Grassmann(q);
  const long count = integer(0, opts_.max_soul_terms);
  std::vector<Grassmann::Term> terms;
  for (long k = 0; k < count; ++k) {
    const unsigned d = degrees[integer(0, static_cast<long>(degrees.size()) - 1)];
    terms.push_back({mask_of_degree(q, d), nonzero_rational()});
  }
  return Grassmann::from_terms(q, std::move(terms));
}

Grassmann Sampler::scalar(unsigned q, bool even_allowed, bool odd_allowed, bool with_body) {
  Grassmann x(q);
  if (even_allowed) {
    if (with_body) x += Grassmann(q, rational());
    x += soul(q, false);
  }
  if (odd_allowed) x += soul(q, true);
  return x;
}

RationalMatrix Sampler::rational_matrix(std::size_t rows, std::size_t cols) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational();
  return m;
}

RationalMatrix Sampler::invertible_rational(std::size_t n) {
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = integer(-2, 2);
    if (sgn(determinant(m)) != 0) return m;
  }
  return RationalMatrix::identity(n);
}

RationalMatrix Sampler::with_spectrum(const std::vector<Rational>& eigenvalues) {
  const RationalMatrix p = invertible_rational(eigenvalues.size());
  return p * RationalMatrix::diagonal(eigenvalues) * *inverse(p);
}

SuperMatrix Sampler::soul_matrix(Shape shape, ParityClass parity, unsigned q) {
  const std::size_t n = shape.dim();
  std::vector<Grassmann> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (parity == ParityClass::Any) {
        e.push_back(scalar(q, true, true, false));
        continue;
      }
      const bool diagonal_block = shape.odd_index(i) == shape.odd_index(j);
      const bool even = diagonal_block == (parity == ParityClass::Even);
      e.push_back(even ? soul(q, false) : soul(q, true));
    }
  }
  return SuperMatrix(shape, parity, q, std::move(e));
}

SuperMatrix Sampler::matrix(Shape shape, ParityClass parity, unsigned q) {
  RationalMatrix body(shape.dim(), shape.dim());
  for (std::size_t i = 0; i < shape.dim(); ++i)
    for (std::size_t j = 0; j < shape.dim(); ++j) {
      const bool diagonal_block = shape.odd_index(i) == shape.odd_index(j);
      const bool even =
          parity == ParityClass::Any || diagonal_block == (parity == ParityClass::Even);
      if (even) body(i, j) = rational();
    }
  return matrix_with_body(shape, parity, q, body);
}

SuperMatrix Sampler::matrix_with_body(Shape shape, ParityClass parity, unsigned q,
                                      const RationalMatrix& body) {
  return SuperMatrix::from_rational(shape, parity, q, body) + soul_matrix(shape, parity, q);
}

GroupElement Sampler::group_element(Shape shape, unsigned q) {
  const ParityClass parity = shape.is_queer() ? ParityClass::Any : ParityClass::Even;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    SuperMatrix g = matrix(shape, parity, q);
    if (sgn(determinant(g.body())) != 0) return GroupElement(std::move(g));
  }
  return GroupElement::identity(shape, q);
}

std::vector<Rational> Sampler::distinct_integers(std::size_t count, long lo, long hi) {
  std::vector<long> pool;
  for (long v = lo; v <= hi; ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng_);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count && i < pool.size(); ++i) out.emplace_back(pool[i]);
  return out;
}

SuperMatrix random_matrix(Shape shape, ParityClass parity, unsigned q, std::uint64_t seed,
                          long coefficient_bound) {
  Sampler s(seed, {coefficient_bound, 3, 0});
  return s.matrix(shape, parity, q);
}

GroupElement random_group_element(Shape shape, unsigned q, std::uint64_t seed,
                                  long coefficient_bound) {
  Sampler s(seed, {coefficient_bound, 3, 0});
  return s.group_element(shape, q);
}

}  // namespace superinv
