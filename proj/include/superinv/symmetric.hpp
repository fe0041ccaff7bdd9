#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "superinv/error.hpp"
#include "superinv/superpoly.hpp"

namespace superinv {

// Polynomials here live in n even variables a_i and n odd variables alpha_i.
// Weighted degree: deg a_i = deg alpha_i = 1, deg u_k = deg xi_k = k.

struct InvarianceWitness {
  bool invariant = true;
  std::size_t index = 0;  // first i with alpha_i * df/da_i != 0 (1-based)
  SuperPolynomial residual;
};

InvarianceWitness check_diag_invariance(const SuperPolynomial& f);

struct SymmetryWitness {
  bool symmetric = true;
  std::size_t transposition = 0;  // i for the swap (i, i+1), 1-based
};

SymmetryWitness check_symmetry(const SuperPolynomial& f);

// f = f_0 + sum_k sum_{i_1<..<i_k} alpha_{i_1}..alpha_{i_k} f_k(a_{i_1},..,a_{i_k}).
struct InvariantDecomposition {
  Rational f0;
  std::vector<SuperPolynomial> components;  // components[k-1] = f_k over k even symbols
};

InvariantDecomposition invariant_decomposition(const SuperPolynomial& f);
SuperPolynomial reassemble(const InvariantDecomposition& d, std::size_t n);
// f(.., x_i, x_{i+1}, ..) = -f(.., x_{i+1}, x_i, ..) for every adjacent pair.
bool is_skew_symmetric(const SuperPolynomial& g);

struct VandermondePair {
  std::vector<std::vector<SuperPolynomial>> m;        // M_{kl} = a_l^{k-1}
  std::vector<std::vector<SuperPolynomial>> adjoint;  // row s: coefficients of prod_{i!=s}(x - a_i)
};

VandermondePair vandermonde_adjoint(std::size_t n);
std::vector<std::vector<SuperPolynomial>> poly_matmul(const std::vector<std::vector<SuperPolynomial>>& x,
                                                      const std::vector<std::vector<SuperPolynomial>>& y);

struct PowerSums {
  std::vector<SuperPolynomial> t;    // t[k-1] = sum a_i^k
  std::vector<SuperPolynomial> tau;  // tau[k-1] = sum alpha_i a_i^{k-1}
};

PowerSums power_sums(std::size_t n, std::size_t count);
// Elementary-sign coordinates s_j = (-1)^{j-1} e_j(a) as polynomials.
std::vector<SuperPolynomial> s_coordinates(std::size_t n);
// Pullback of an expression in (u, xi) under u_k -> t_k, xi_k -> tau_k.
SuperPolynomial expand_t_tau(const TTauExpression& h, std::size_t n);
// Pullback under u_k -> s_k, xi_k -> tau_k.
SuperPolynomial expand_s_tau(const TTauExpression& h, std::size_t n);

struct RewriteOptions {
  bool reverse_columns = false;  // solve with the ansatz in reverse order
};

// Unique g(u, xi) with g(t, tau) = f. Throws NotSymmetric.
TTauExpression rewrite_symmetric(const SuperPolynomial& f, const RewriteOptions& opts = {});
// Numerator and denominator rewritten separately.
std::pair<TTauExpression, TTauExpression> rewrite_symmetric(const SuperPolynomial& num,
                                                            const SuperPolynomial& den,
                                                            const RewriteOptions& opts = {});

struct BalanceWitness {
  bool balanced = true;
  std::size_t condition = 0;  // first failing i (1-based)
  SuperPolynomial residual;
};

// The n differential conditions sum_s s tau_{i+s-1} dh/du_s (t, tau) = 0.
BalanceWitness is_balanced(const TTauExpression& h, std::size_t n);

// Rational function numerator / denominator in (u, xi), read in s-coordinates.
struct BalancedExpression {
  TTauExpression numerator;
  TTauExpression denominator;  // even symbols only
};

BalancedExpression make_balanced(TTauExpression numerator);
BalancedExpression make_balanced(TTauExpression numerator, TTauExpression denominator);
// Invariance of the s-coordinate pullback N/D: alpha_i (D dN/da_i - N dD/da_i) = 0.
BalanceWitness is_balanced_s(const BalancedExpression& f, std::size_t n);

// Coefficients of the normal form keyed by increasing tau index tuples; the
// empty tuple holds the constant.
using TauNormalForm = std::map<std::vector<unsigned>, Rational>;

TauNormalForm invariant_normal_form(const SuperPolynomial& f);
SuperPolynomial expand_normal_form(const TauNormalForm& nf, std::size_t n);
SuperPolynomial tau_product(const std::vector<unsigned>& indices, std::size_t n);
// All increasing tuples of length 1..max_len with entries in 1..max_index.
std::vector<std::vector<unsigned>> increasing_tuples(unsigned max_index, unsigned max_len);
// Rank of the coefficient matrix of the expansions of the given tuples.
std::size_t expansion_rank(const std::vector<std::vector<unsigned>>& tuples, std::size_t n);

// s_j = (-1)^{j-1} e_j over any commutative even ring.
template <class R>
std::vector<R> elementary_from_roots(const std::vector<R>& a, const R& one) {
  std::vector<R> e{one};  // e_0..e_n built incrementally
  for (const auto& x : a) {
    e.push_back(one * Rational(0));
    for (std::size_t j = e.size() - 1; j >= 1; --j) e[j] = e[j] + R(e[j - 1] * x);
  }
  std::vector<R> s;
  for (std::size_t j = 1; j < e.size(); ++j) {
    if (j % 2) {
      s.push_back(e[j]);
    } else {
      s.push_back(e[j] * Rational(-1));
    }
  }
  return s;
}

std::vector<Grassmann> elementary_from_roots(const std::vector<Grassmann>& a);
std::vector<Rational> elementary_from_roots(const std::vector<Rational>& a);

// Residuals tau_{n+k} - sum_j tau_{n+k-j} s_j for k = 1..n.
template <class R>
std::vector<R> recurrence_residuals(const std::vector<R>& tau, const std::vector<R>& s) {
  const std::size_t n = s.size();
  if (tau.size() < 2 * n) throw Error(Errc::LengthMismatch, "need tau_1..tau_2n");
  std::vector<R> out;
  for (std::size_t k = 1; k <= n; ++k) {
    R r = tau[n + k - 1];
    for (std::size_t j = 1; j <= n; ++j) r = r - tau[n + k - j - 1] * s[j - 1];
    out.push_back(r);
  }
  return out;
}

bool verify_recurrence(const std::vector<Grassmann>& tau, const std::vector<Grassmann>& s);

}  // namespace superinv
