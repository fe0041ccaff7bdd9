#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "superinv/spectral.hpp"
#include "superinv/symmetric.hpp"

namespace superinv {

// Diagonal data (a_i, alpha_i) of a queer matrix or of the canonical
// (alpha a; 1 0) form of an odd one, ordered by body eigenvalue.
struct EigenData {
  std::vector<std::pair<Grassmann, Grassmann>> pairs;
  Shape source_shape;

  std::vector<Grassmann> evens() const;
  std::vector<Grassmann> odds() const;
  // sum_i alpha_i a_i^{k-1} for k = 1..count.
  std::vector<Grassmann> moments(unsigned count) const;
};

EigenData eigendata(const SuperMatrix& a, const ReductionOptions& opts = {});

struct SemiInvariants {
  std::vector<Grassmann> s;
};

// s_j = (-1)^{j-1} e_j(a_1..a_n) over the eigendata; the recurrence against
// tau_1..tau_2n is checked before returning.
SemiInvariants compute_s(const SuperMatrix& a);
// Residuals of the n recurrence equations for the given s.
std::vector<Grassmann> s_residuals(const SuperMatrix& a, const std::vector<Grassmann>& s);

// Rational eigenvalues whose elementary functions give the bodies of s:
// body(A) for queer input, body(YZ) for odd input.
std::vector<Rational> body_eigenvalues(const SuperMatrix& a);

struct SignConventions {
  std::vector<Rational> recurrence;      // (-1)^{j-1} e_j
  std::vector<Rational> characteristic;  // coefficients of det(lambda - B): (-1)^j e_j
  bool recurrence_matches = false;       // against compute_s bodies
  bool characteristic_matches = false;
};

SignConventions s_body_conventions(const SuperMatrix& a);

// Two-by-two queer closed form; B has even entries, beta odd entries.
// s_1 = b11 + b22 + 2 ((beta22 - beta11)(b12 beta21 - b21 beta12)
//       + (b11 - b22) beta12 beta21) / ((b11 - b22)^2 + 4 b12 b21).
Grassmann q2_s1(const SuperMatrix& b, const SuperMatrix& beta);
// s_1 above and s_2 = (s_1(B^2 + beta^2, B beta + beta B) - s_1^2) / 2.
// ZeroDiscriminant unless the body eigenvalues of B differ and do not sum to 0.
SemiInvariants q2_closed_form(const SuperMatrix& b, const SuperMatrix& beta);
SemiInvariants q2_closed_form(const SuperMatrix& a);
// The opposite bracket sign in s_1 and s_2 = s_1(B + beta^2, B beta + beta B) / 2.
// Kept to show that these fail the recurrence.
SemiInvariants q2_closed_form_literal(const SuperMatrix& b, const SuperMatrix& beta);

// f evaluated at u_k = s_k, xi_k = tau_k; no balance or admissibility checks.
Grassmann evaluate_balanced(const BalancedExpression& f, const std::vector<Grassmann>& s,
                            const std::vector<Grassmann>& tau);
// Checks balance, then evaluates with the spectral s.
Grassmann evaluate_invariant(const SuperMatrix& a, const BalancedExpression& f);
// Evaluates with a caller-supplied s, which must satisfy the recurrence and
// have the correct bodies.
Grassmann evaluate_invariant(const SuperMatrix& a, const BalancedExpression& f,
                             const std::vector<Grassmann>& s);

bool indistinguishable(const SuperMatrix& a1, const SuperMatrix& a2);

// s_1..s_n on the locus tau_1 = .. = tau_n = 0; NotInL otherwise.
std::vector<Grassmann> l_invariants(const SuperMatrix& a);

// Coefficients of lambda^{-1}..lambda^{-J} of qet(lambda - A) (queer) or
// -str (lambda - A)^{-1} (odd), from eigendata.
std::vector<Grassmann> qet_generating_coefficients(const SuperMatrix& a, unsigned count);

// tau_0 = (xi_n - sum_{j<n} xi_{n-j} u_j) / u_n, the invariant sum alpha_i / a_i.
BalancedExpression inverse_moment_expression(std::size_t n);

// Balanced expressions in s-coordinates used by property checks: the xi_i,
// u-multiples of xi_1..xi_n, the inverse moment, random kernel elements and
// products. Deterministic in the seed; every member passes is_balanced_s.
std::vector<BalancedExpression> balanced_corpus(std::size_t n, std::uint64_t seed,
                                                std::size_t random_count = 4);
// Basis of balanced polynomials in s-coordinates of weighted degree <= max_weight.
std::vector<TTauExpression> balanced_polynomial_basis(std::size_t n, unsigned max_weight);

}  // namespace superinv
