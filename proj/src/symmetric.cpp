#include "superinv/symmetric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "superinv/linalg.hpp"

namespace superinv {

namespace {

SuperPolynomial alpha(std::size_t n, std::size_t i) { return SuperPolynomial::odd_symbol(n, n, i); }

std::vector<std::size_t> swap_perm(std::size_t n, std::size_t i) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  std::swap(perm[i - 1], perm[i]);
  return perm;
}

// Exponent vectors e with sum_k k e_k = total over parts 1..n.
void weighted_exponents(std::size_t n, unsigned total, std::vector<unsigned>& cur, std::size_t part,
                        std::vector<std::vector<unsigned>>& out) {
  if (part == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e * part <= total; ++e) {
    cur[part - 1] = e;
    weighted_exponents(n, total - e * static_cast<unsigned>(part), cur, part - 1, out);
  }
  cur[part - 1] = 0;
}

// All (u exponent, xi mask) monomials over n even and `odd` odd symbols with
// weighted degree d.
std::vector<SuperPolynomial::Monomial> ttau_monomials(std::size_t n, std::size_t odd, unsigned d) {
  std::vector<SuperPolynomial::Monomial> out;
  for (Mask m = 0; m < (Mask{1} << odd); ++m) {
    unsigned w = 0;
    for (unsigned i : mask_to_indices(m)) w += i;
    if (w > d) continue;
    std::vector<std::vector<unsigned>> exps;
    std::vector<unsigned> cur(n, 0);
    weighted_exponents(n, d - w, cur, n, exps);
    for (auto& e : exps) out.push_back({std::move(e), m});
  }
  return out;
}

// Unique coefficients c with sum_j c_j columns[j] = target, or nullopt.
std::optional<std::vector<Rational>> match_coefficients(const std::vector<SuperPolynomial>& columns,
                                                        const SuperPolynomial& target,
                                                        bool* rank_deficient = nullptr) {
  std::map<SuperPolynomial::Monomial, std::size_t> row_of;
  auto note = [&](const SuperPolynomial& p) {
    for (const auto& [m, c] : p.terms()) row_of.try_emplace(m, row_of.size());
  };
  for (const auto& c : columns) note(c);
  note(target);
  RationalMatrix a(row_of.size(), columns.size());
  RationalMatrix b(row_of.size(), 1);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [m, c] : columns[j].terms()) a(row_of[m], j) = c;
  for (const auto& [m, c] : target.terms()) b(row_of[m], 0) = c;
  if (rank_deficient) *rank_deficient = rank(a) < columns.size();
  auto x = solve(a, b);
  if (!x) return std::nullopt;
  std::vector<Rational> out(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) out[j] = (*x)(j, 0);
  return out;
}

std::vector<unsigned> unit_weights(std::size_t n) { return std::vector<unsigned>(n, 1); }

}  // namespace

InvarianceWitness check_diag_invariance(const SuperPolynomial& f) {
  const std::size_t n = f.even_count();
  if (f.odd_count() != n) throw Error(Errc::ShapeMismatch, "need n even and n odd variables");
  for (std::size_t i = 1; i <= n; ++i) {
    SuperPolynomial r = alpha(n, i) * f.derivative_even(i);
    if (!r.is_zero()) return {false, i, std::move(r)};
  }
  return {true, 0, SuperPolynomial(n, n)};
}

SymmetryWitness check_symmetry(const SuperPolynomial& f) {
  const std::size_t n = f.even_count();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(f.permuted(swap_perm(n, i)) == f)) return {false, i};
  }
  return {true, 0};
}

bool is_skew_symmetric(const SuperPolynomial& g) {
  const std::size_t k = g.even_count();
  for (std::size_t i = 1; i < k; ++i) {
    SuperPolynomial swapped(k, g.odd_count());
    for (const auto& [m, c] : g.terms()) {
      auto sm = m;
      std::swap(sm.even[i - 1], sm.even[i]);
      swapped.add_term(std::move(sm), c);
    }
    if (!(swapped == -g)) return false;
  }
  return true;
}

SuperPolynomial reassemble(const InvariantDecomposition& d, std::size_t n) {
  SuperPolynomial f(n, n, d.f0);
  for (std::size_t k = 1; k <= d.components.size(); ++k) {
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      if (mask_degree(m) != k) continue;
      const auto idx = mask_to_indices(m);
      std::vector<SuperPolynomial> images;
      SuperPolynomial prefix(n, n, 1);
      for (unsigned i : idx) {
        images.push_back(SuperPolynomial::even_symbol(n, n, i));
        prefix = prefix * alpha(n, i);
      }
      f += prefix * substitute(d.components[k - 1], images, {}, SuperPolynomial(n, n, 1));
    }
  }
  return f;
}

InvariantDecomposition invariant_decomposition(const SuperPolynomial& f) {
  const std::size_t n = f.even_count();
  if (auto s = check_symmetry(f); !s.symmetric) {
    throw Error(Errc::NotInvariant, "not symmetric under transposition (" +
                                        std::to_string(s.transposition) + "," +
                                        std::to_string(s.transposition + 1) + ")");
  }
  if (auto w = check_diag_invariance(f); !w.invariant) {
    throw Error(Errc::NotInvariant, "alpha_" + std::to_string(w.index) + " * d/da_" +
                                        std::to_string(w.index) + " f = " + to_string(w.residual));
  }
  InvariantDecomposition d;
  d.f0 = f.constant_term();
  for (std::size_t k = 1; k <= n; ++k) {
    const Mask mask = (Mask{1} << k) - 1;
    SuperPolynomial fk(k, 0);
    for (const auto& [m, c] : f.terms()) {
      if (m.odd != mask) continue;
      fk.add_term({std::vector<unsigned>(m.even.begin(), m.even.begin() + k), 0}, c);
    }
    d.components.push_back(std::move(fk));
  }
  while (!d.components.empty() && d.components.back().is_zero()) d.components.pop_back();
  if (!(reassemble(d, n) == f)) throw Error(Errc::NotInvariant, "decomposition does not reassemble");
  for (std::size_t k = 2; k <= d.components.size(); ++k) {
    if (!is_skew_symmetric(d.components[k - 1])) {
      throw Error(Errc::NotInvariant, "component f_" + std::to_string(k) + " is not skew-symmetric");
    }
  }
  return d;
}

VandermondePair vandermonde_adjoint(std::size_t n) {
  VandermondePair v;
  const SuperPolynomial one(n, 0, 1);
  for (std::size_t k = 0; k < n; ++k) {
    v.m.emplace_back();
    for (std::size_t l = 1; l <= n; ++l) v.m.back().push_back(SuperPolynomial::even_symbol(n, 0, l).pow(k));
  }
  for (std::size_t s = 1; s <= n; ++s) {
    std::vector<SuperPolynomial> coeffs{one};  // lowest power first
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == s) continue;
      const SuperPolynomial ai = SuperPolynomial::even_symbol(n, 0, i);
      std::vector<SuperPolynomial> next(coeffs.size() + 1, SuperPolynomial(n, 0));
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1] += coeffs[j];
        next[j] -= ai * coeffs[j];
      }
      coeffs = std::move(next);
    }
    v.adjoint.push_back(std::move(coeffs));
  }
  return v;
}

std::vector<std::vector<SuperPolynomial>> poly_matmul(const std::vector<std::vector<SuperPolynomial>>& x,
                                                      const std::vector<std::vector<SuperPolynomial>>& y) {
  if (x.empty() || y.empty()) return {};
  const SuperPolynomial zero(x[0][0].even_count(), x[0][0].odd_count());
  std::vector<std::vector<SuperPolynomial>> r(x.size(), std::vector<SuperPolynomial>(y[0].size(), zero));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y[0].size(); ++j)
      for (std::size_t k = 0; k < y.size(); ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}

PowerSums power_sums(std::size_t n, std::size_t count) {
  PowerSums ps;
  std::vector<SuperPolynomial> a_pow;  // a_pow[i] = a_{i+1}^{k-1} during the loop
  for (std::size_t i = 1; i <= n; ++i) a_pow.emplace_back(n, n, 1);
  for (std::size_t k = 1; k <= count; ++k) {
    SuperPolynomial t(n, n), tau(n, n);
    for (std::size_t i = 1; i <= n; ++i) {
      tau += alpha(n, i) * a_pow[i - 1];
      a_pow[i - 1] = a_pow[i - 1] * SuperPolynomial::even_symbol(n, n, i);
      t += a_pow[i - 1];
    }
    ps.t.push_back(std::move(t));
    ps.tau.push_back(std::move(tau));
  }
  return ps;
}

std::vector<SuperPolynomial> s_coordinates(std::size_t n) {
  std::vector<SuperPolynomial> a;
  for (std::size_t i = 1; i <= n; ++i) a.push_back(SuperPolynomial::even_symbol(n, n, i));
  return elementary_from_roots(a, SuperPolynomial(n, n, 1));
}

SuperPolynomial expand_t_tau(const TTauExpression& h, std::size_t n) {
  if (h.even_count() > n) throw Error(Errc::ShapeMismatch, "more u symbols than variables");
  const PowerSums ps = power_sums(n, std::max(h.even_count(), h.odd_count()));
  std::vector<SuperPolynomial> t(ps.t.begin(), ps.t.begin() + h.even_count());
  std::vector<SuperPolynomial> tau(ps.tau.begin(), ps.tau.begin() + h.odd_count());
  return substitute(h, t, tau, SuperPolynomial(n, n, 1));
}

SuperPolynomial expand_s_tau(const TTauExpression& h, std::size_t n) {
  if (h.even_count() > n) throw Error(Errc::ShapeMismatch, "more u symbols than variables");
  const PowerSums ps = power_sums(n, h.odd_count());
  auto s = s_coordinates(n);
  s.resize(h.even_count());
  return substitute(h, s, ps.tau, SuperPolynomial(n, n, 1));
}

TTauExpression rewrite_symmetric(const SuperPolynomial& f, const RewriteOptions& opts) {
  const std::size_t n = f.even_count();
  if (f.odd_count() != n) throw Error(Errc::ShapeMismatch, "need n even and n odd variables");
  if (auto s = check_symmetry(f); !s.symmetric) {
    throw Error(Errc::NotSymmetric, "transposition (" + std::to_string(s.transposition) + "," +
                                        std::to_string(s.transposition + 1) + ") changes f");
  }
  const PowerSums ps = power_sums(n, n);
  const SuperPolynomial one(n, n, 1);
  TTauExpression g(n, n);
  for (const auto& [d, part] : f.by_weight(unit_weights(n), unit_weights(n))) {
    auto ansatz = ttau_monomials(n, n, d);
    if (opts.reverse_columns) std::reverse(ansatz.begin(), ansatz.end());
    std::vector<SuperPolynomial> columns;
    for (const auto& m : ansatz) {
      TTauExpression mono(n, n);
      mono.add_term(m, 1);
      columns.push_back(substitute(mono, ps.t, ps.tau, one));
    }
    bool deficient = false;
    auto c = match_coefficients(columns, part, &deficient);
    if (deficient) throw std::logic_error("rewrite ansatz is not independent");
    if (!c) throw std::logic_error("symmetric polynomial outside the (t, tau) span");
    for (std::size_t j = 0; j < ansatz.size(); ++j) g.add_term(ansatz[j], (*c)[j]);
  }
  return g;
}

std::pair<TTauExpression, TTauExpression> rewrite_symmetric(const SuperPolynomial& num,
                                                            const SuperPolynomial& den,
                                                            const RewriteOptions& opts) {
  if (den.is_zero()) throw Error(Errc::ZeroDenominator, "zero denominator");
  return {rewrite_symmetric(num, opts), rewrite_symmetric(den, opts)};
}

BalanceWitness is_balanced(const TTauExpression& h, std::size_t n) {
  if (h.even_count() > n) throw Error(Errc::ShapeMismatch, "more u symbols than variables");
  const std::size_t top = std::max<std::size_t>({2 * n - 1, h.odd_count(), h.even_count()});
  const PowerSums ps = power_sums(n, top);
  const SuperPolynomial one(n, n, 1);
  std::vector<SuperPolynomial> t(ps.t.begin(), ps.t.begin() + h.even_count());
  std::vector<SuperPolynomial> tau(ps.tau.begin(), ps.tau.begin() + h.odd_count());
  std::vector<SuperPolynomial> partial;
  for (std::size_t s = 1; s <= h.even_count(); ++s) {
    partial.push_back(substitute(h.derivative_even(s), t, tau, one));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    SuperPolynomial r(n, n);
    for (std::size_t s = 1; s <= h.even_count(); ++s) {
      r += ps.tau[i + s - 2] * partial[s - 1] * Rational(static_cast<long>(s));
    }
    if (!r.is_zero()) return {false, i, std::move(r)};
  }
  return {true, 0, SuperPolynomial(n, n)};
}

BalancedExpression make_balanced(TTauExpression numerator) {
  TTauExpression den(numerator.even_count(), numerator.odd_count(), 1);
  return {std::move(numerator), std::move(den)};
}

BalancedExpression make_balanced(TTauExpression numerator, TTauExpression denominator) {
  if (!denominator.is_even_only()) throw Error(Errc::WrongParity, "denominator must be even-only");
  if (denominator.is_zero()) throw Error(Errc::ZeroDenominator, "zero denominator");
  if (numerator.even_count() != denominator.even_count() ||
      numerator.odd_count() != denominator.odd_count()) {
    throw Error(Errc::ShapeMismatch, "numerator and denominator over different symbols");
  }
  return {std::move(numerator), std::move(denominator)};
}

BalanceWitness is_balanced_s(const BalancedExpression& f, std::size_t n) {
  const SuperPolynomial num = expand_s_tau(f.numerator, n);
  const SuperPolynomial den = expand_s_tau(f.denominator, n);
  for (std::size_t i = 1; i <= n; ++i) {
    SuperPolynomial r = alpha(n, i) * (den * num.derivative_even(i) - num * den.derivative_even(i));
    if (!r.is_zero()) return {false, i, std::move(r)};
  }
  return {true, 0, SuperPolynomial(n, n)};
}

SuperPolynomial tau_product(const std::vector<unsigned>& indices, std::size_t n) {
  unsigned top = 0;
  for (auto i : indices) top = std::max(top, i);
  const PowerSums ps = power_sums(n, top);
  SuperPolynomial p(n, n, 1);
  for (auto i : indices) p = p * ps.tau.at(i - 1);
  return p;
}

std::vector<std::vector<unsigned>> increasing_tuples(unsigned max_index, unsigned max_len) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned start) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (unsigned i = start; i <= max_index; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::size_t expansion_rank(const std::vector<std::vector<unsigned>>& tuples, std::size_t n) {
  std::vector<SuperPolynomial> columns;
  for (const auto& t : tuples) columns.push_back(tau_product(t, n));
  std::map<SuperPolynomial::Monomial, std::size_t> row_of;
  for (const auto& c : columns)
    for (const auto& [m, v] : c.terms()) row_of.try_emplace(m, row_of.size());
  RationalMatrix a(row_of.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [m, v] : columns[j].terms()) a(row_of[m], j) = v;
  return rank(a);
}

TauNormalForm invariant_normal_form(const SuperPolynomial& f) {
  const std::size_t n = f.even_count();
  if (f.odd_count() != n) throw Error(Errc::ShapeMismatch, "need n even and n odd variables");
  if (auto s = check_symmetry(f); !s.symmetric) {
    throw Error(Errc::NotInvariant, "not symmetric under transposition (" +
                                        std::to_string(s.transposition) + "," +
                                        std::to_string(s.transposition + 1) + ")");
  }
  if (auto w = check_diag_invariance(f); !w.invariant) {
    throw Error(Errc::NotInvariant, "alpha_" + std::to_string(w.index) + " * d/da_" +
                                        std::to_string(w.index) + " f = " + to_string(w.residual));
  }
  TauNormalForm nf;
  for (const auto& [d, part] : f.by_weight(unit_weights(n), unit_weights(n))) {
    if (d == 0) {
      nf[{}] = part.constant_term();
      continue;
    }
    std::vector<std::vector<unsigned>> tuples;
    for (auto& t : increasing_tuples(d, static_cast<unsigned>(n))) {
      if (std::accumulate(t.begin(), t.end(), 0u) == d) tuples.push_back(std::move(t));
    }
    std::vector<SuperPolynomial> columns;
    for (const auto& t : tuples) columns.push_back(tau_product(t, n));
    auto c = match_coefficients(columns, part);
    if (!c) throw Error(Errc::NotInvariant, "degree " + std::to_string(d) + " part is not a tau combination");
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      if (sgn((*c)[j]) != 0) nf[tuples[j]] = (*c)[j];
    }
  }
  return nf;
}

SuperPolynomial expand_normal_form(const TauNormalForm& nf, std::size_t n) {
  SuperPolynomial f(n, n);
  for (const auto& [t, c] : nf) f += tau_product(t, n) * c;
  return f;
}

std::vector<Grassmann> elementary_from_roots(const std::vector<Grassmann>& a) {
  if (a.empty()) return {};
  return elementary_from_roots(a, Grassmann(a.front().generators(), 1));
}

std::vector<Rational> elementary_from_roots(const std::vector<Rational>& a) {
  return elementary_from_roots(a, Rational(1));
}

bool verify_recurrence(const std::vector<Grassmann>& tau, const std::vector<Grassmann>& s) {
  if (tau.size() != 2 * s.size()) throw Error(Errc::LengthMismatch, "need tau_1..tau_2n for n s-values");
  const auto r = recurrence_residuals(tau, s);
  return std::all_of(r.begin(), r.end(), [](const Grassmann& x) { return x.is_zero(); });
}

}  // namespace superinv
