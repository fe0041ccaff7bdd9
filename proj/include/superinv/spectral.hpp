#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "superinv/supermatrix.hpp"
#include "superinv/univariate.hpp"

namespace superinv {

struct RationalSpectrum {
  // Distinct roots in increasing order with algebraic multiplicity.
  std::vector<std::pair<Rational, unsigned>> eigenvalues;

  unsigned multiplicity(const Rational& r) const;
  bool simple() const;
};

// Throws NonSplittingError with the unresolved factor when a root is irrational.
RationalSpectrum rational_spectrum(const RationalMatrix& b);

// Unique X with B X - X D = R; SharedEigenvalue if the spectra meet.
RationalMatrix solve_sylvester(const RationalMatrix& b, const RationalMatrix& d,
                               const RationalMatrix& r);

struct SpectralBlock {
  Rational eigenvalue;  // of the body (of the square, for odd input)
  SuperMatrix block;
};

struct SpectralDecomposition {
  Shape shape;
  ParityClass parity = ParityClass::Any;
  unsigned generators = 0;
  GroupElement conjugator;
  std::vector<SpectralBlock> blocks;
  std::vector<std::vector<std::size_t>> partition;  // 0-based index sets
  // Minimal monomial degree of the off-diagonal part after each soul iteration.
  std::vector<unsigned> filtration;

  // Blocks placed back at their partition indices, zero elsewhere.
  SuperMatrix assemble() const;
};

struct ReductionOptions {
  // Replace the canonical eigenspace bases by random ones; used to check
  // that block invariants do not depend on the choice.
  std::optional<std::uint64_t> basis_seed;
};

SpectralDecomposition block_diagonalize(const SuperMatrix& a, const ReductionOptions& opts = {});
SpectralDecomposition diagonalize(const SuperMatrix& a, const ReductionOptions& opts = {});
// G^{-1} A G = (R T; 1 0) with R, T diagonal, for odd Standard(n|n) input.
SpectralDecomposition reduce_odd(const SuperMatrix& a, const ReductionOptions& opts = {});
// G with G^{-1} A G = (0 Y'; 1 0), for odd A whose square is block diagonal.
GroupElement antidiagonalize(const SuperMatrix& a);

// Whether the off-diagonal part of `a` relative to `partition` vanishes.
bool is_block_diagonal(const SuperMatrix& a, const std::vector<std::vector<std::size_t>>& partition);

}  // namespace superinv
