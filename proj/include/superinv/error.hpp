#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superinv {

enum class Errc {
  // input / contract violations
  GeneratorMismatch,
  GeneratorCap,
  ShapeMismatch,
  WrongShape,
  WrongParity,
  ParityViolation,
  Parse,
  LengthMismatch,
  // mathematical preconditions
  ZeroBody,
  SingularBody,
  NonSplitting,
  SharedEigenvalue,
  MultipleEigenvalue,
  ZeroEigenvalue,
  NotBlockDiagonalSquare,
  SingularZ,
  ZeroDiscriminant,
  NotSymmetric,
  NotInvariant,
  NotInL,
  ZeroDenominator,
  Unbalanced,
  InadmissibleS,
};

std::string_view errc_name(Errc code);

// True for errors that report a violated mathematical precondition rather
// than malformed input.
bool is_precondition(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SingularBodyError : public Error {
 public:
  SingularBodyError(std::size_t rank, std::size_t dim)
      : Error(Errc::SingularBody, "body matrix has rank " +
                                      std::to_string(rank) + " < " +
                                      std::to_string(dim)),
        rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

class NonSplittingError : public Error {
 public:
  explicit NonSplittingError(std::string residual)
      : Error(Errc::NonSplitting,
              "characteristic polynomial has residual factor " + residual),
        residual_(std::move(residual)) {}
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

class NotInLError : public Error {
 public:
  explicit NotInLError(int index)
      : Error(Errc::NotInL, "tau_" + std::to_string(index) + " is nonzero"),
        index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class ParityViolationError : public Error {
 public:
  ParityViolationError(std::size_t row, std::size_t col, const std::string& why)
      : Error(Errc::ParityViolation, "cell (" + std::to_string(row) + "," +
                                         std::to_string(col) + "): " + why),
        row_(row),
        col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace superinv
