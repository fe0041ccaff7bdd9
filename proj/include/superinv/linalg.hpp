#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "superinv/rational.hpp"

namespace superinv {

// Dense matrix over the rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix diagonal(const std::vector<Rational>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const;
  RationalMatrix transpose() const;
  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Rational trace() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& c, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref_in_place(RationalMatrix& m);
std::size_t rank(RationalMatrix m);

// Basis of {x : m x = 0}, one column per free variable (free entry set to 1).
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

// Fraction-free (Bareiss) determinant and inverse. inverse() returns nullopt
// for singular input.
Rational determinant(const RationalMatrix& m);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

// Unique solution of m x = b (b may have several columns); nullopt when m is
// singular or the system is inconsistent / underdetermined.
std::optional<RationalMatrix> solve(const RationalMatrix& m, const RationalMatrix& b);

// Coefficients c_0..c_n (lowest first) of det(x I - m), monic.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

RationalMatrix matrix_power(const RationalMatrix& m, unsigned k);

}  // namespace superinv
