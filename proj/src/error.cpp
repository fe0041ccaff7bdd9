#include "superinv/error.hpp"

namespace superinv {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::GeneratorMismatch: return "GeneratorMismatch";
    case Errc::GeneratorCap: return "GeneratorCap";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::WrongShape: return "WrongShape";
    case Errc::WrongParity: return "WrongParity";
    case Errc::ParityViolation: return "ParityViolation";
    case Errc::Parse: return "Parse";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroBody: return "ZeroBody";
    case Errc::SingularBody: return "SingularBody";
    case Errc::NonSplitting: return "NonSplitting";
    case Errc::SharedEigenvalue: return "SharedEigenvalue";
    case Errc::MultipleEigenvalue: return "MultipleEigenvalue";
    case Errc::ZeroEigenvalue: return "ZeroEigenvalue";
    case Errc::NotBlockDiagonalSquare: return "NotBlockDiagonalSquare";
    case Errc::SingularZ: return "SingularZ";
    case Errc::ZeroDiscriminant: return "ZeroDiscriminant";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NotInL: return "NotInL";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::Unbalanced: return "Unbalanced";
    case Errc::InadmissibleS: return "InadmissibleS";
  }
  return "Unknown";
}

bool is_precondition(Errc code) {
  switch (code) {
    case Errc::GeneratorMismatch:
    case Errc::GeneratorCap:
    case Errc::ShapeMismatch:
    case Errc::WrongShape:
    case Errc::WrongParity:
    case Errc::ParityViolation:
    case Errc::Parse:
    case Errc::LengthMismatch:
      return false;
    default:
      return true;
  }
}

}  // namespace superinv
