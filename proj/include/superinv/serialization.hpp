#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "superinv/semi_invariants.hpp"
#include "superinv/spectral.hpp"
#include "superinv/superpoly.hpp"
#include "superinv/supermatrix.hpp"

namespace superinv {

using Json = nlohmann::ordered_json;

// All readers throw Error(Errc::Parse) with a JSON-path prefix on malformed
// documents; matrix readers also let ParityViolationError through.

Json scalar_to_json(const Grassmann& x);
Grassmann scalar_from_json(const Json& j);

Json shape_to_json(const Shape& s);
Shape shape_from_json(const Json& j);

Json matrix_to_json(const SuperMatrix& m);
SuperMatrix matrix_from_json(const Json& j);

// {"n", "terms"} when even and odd counts agree; TTau expressions whose odd
// range differs also carry "odd_range".
Json polynomial_to_json(const SuperPolynomial& p);
SuperPolynomial polynomial_from_json(const Json& j);

Json balanced_to_json(const BalancedExpression& f);
BalancedExpression balanced_from_json(const Json& j);

enum class ReduceMode { BlockDiag, Diagonalize, Odd, Antidiag };

std::string to_string(ReduceMode m);
ReduceMode reduce_mode_from_string(const std::string& s);

// The input matrix together with its decomposition. For Antidiag the single
// block is the reduced matrix and carries no eigenvalue.
struct DecompositionRecord {
  ReduceMode mode = ReduceMode::BlockDiag;
  SuperMatrix input;
  SpectralDecomposition decomposition;
};

DecompositionRecord run_reduction(const SuperMatrix& a, ReduceMode mode);

Json decomposition_to_json(const DecompositionRecord& r);
DecompositionRecord decomposition_from_json(const Json& j);

// Whether G^{-1} A G equals the assembled blocks and the partition covers
// every index exactly once.
bool verify_decomposition(const DecompositionRecord& r);

// Reads a whole file as JSON; Parse errors carry the path.
Json read_json_file(const std::string& path);

}  // namespace superinv
