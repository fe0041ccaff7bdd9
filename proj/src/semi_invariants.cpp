#include "superinv/semi_invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "superinv/linalg.hpp"
#include "superinv/sampling.hpp"

namespace superinv {

std::vector<Grassmann> EigenData::evens() const {
  std::vector<Grassmann> v;
  for (const auto& p : pairs) v.push_back(p.first);
  return v;
}

std::vector<Grassmann> EigenData::odds() const {
  std::vector<Grassmann> v;
  for (const auto& p : pairs) v.push_back(p.second);
  return v;
}

std::vector<Grassmann> EigenData::moments(unsigned count) const {
  std::vector<Grassmann> out;
  if (pairs.empty()) return out;
  const unsigned q = pairs.front().first.generators();
  std::vector<Grassmann> power(pairs.size(), Grassmann(q, 1));
  for (unsigned k = 1; k <= count; ++k) {
    Grassmann m(q);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      m += pairs[i].second * power[i];
      power[i] = power[i] * pairs[i].first;
    }
    out.push_back(std::move(m));
  }
  return out;
}

EigenData eigendata(const SuperMatrix& a, const ReductionOptions& opts) {
  family_rank(a);
  EigenData d;
  d.source_shape = a.shape();
  if (a.shape().is_queer()) {
    for (const auto& b : diagonalize(a, opts).blocks) d.pairs.push_back(b.block(0, 0).parity_split());
  } else {
    for (const auto& b : reduce_odd(a, opts).blocks) d.pairs.emplace_back(b.block(0, 1), b.block(0, 0));
  }
  return d;
}

std::vector<Grassmann> s_residuals(const SuperMatrix& a, const std::vector<Grassmann>& s) {
  const std::size_t n = family_rank(a);
  if (s.size() != n) throw Error(Errc::LengthMismatch, "expected " + std::to_string(n) + " s-values");
  return recurrence_residuals(taus(a, static_cast<unsigned>(2 * n)), s);
}

SemiInvariants compute_s(const SuperMatrix& a) {
  const EigenData d = eigendata(a);
  SemiInvariants out{elementary_from_roots(d.evens())};
  for (const auto& r : s_residuals(a, out.s)) {
    if (!r.is_zero()) throw std::logic_error("spectral s-values violate the recurrence");
  }
  return out;
}

std::vector<Rational> body_eigenvalues(const SuperMatrix& a) {
  const std::size_t n = family_rank(a);
  RationalMatrix b = a.body();
  if (a.shape().is_standard()) b = b.block(0, n, n, n) * b.block(n, 0, n, n);
  std::vector<Rational> roots;
  for (const auto& [r, m] : rational_spectrum(b).eigenvalues) roots.insert(roots.end(), m, r);
  return roots;
}

SignConventions s_body_conventions(const SuperMatrix& a) {
  const std::size_t n = family_rank(a);
  RationalMatrix b = a.body();
  if (a.shape().is_standard()) b = b.block(0, n, n, n) * b.block(n, 0, n, n);
  const auto cp = characteristic_polynomial(b);
  SignConventions c;
  for (std::size_t j = 1; j <= n; ++j) {
    c.characteristic.push_back(cp[n - j]);
    c.recurrence.push_back(-cp[n - j]);
  }
  std::vector<Rational> actual;
  for (const auto& s : compute_s(a).s) actual.push_back(s.body());
  c.recurrence_matches = actual == c.recurrence;
  c.characteristic_matches = actual == c.characteristic;
  return c;
}

namespace {

struct Two {
  Grassmann b11, b12, b21, b22;
};

Two entries(const SuperMatrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

void check_q2(const SuperMatrix& b, const SuperMatrix& beta) {
  if (!b.shape().is_queer() || b.dim() != 2 || !(b.shape() == beta.shape())) {
    throw Error(Errc::WrongShape, "closed form needs 2x2 queer matrices");
  }
  for (const auto& x : b.entries())
    if (!x.is_even()) throw Error(Errc::WrongParity, "B must have even entries");
  for (const auto& x : beta.entries())
    if (!x.is_odd()) throw Error(Errc::WrongParity, "beta must have odd entries");
}

// With literal = false the bracket is b12 beta21 - b21 beta12, which is
// -tr(beta B beta) expanded; the printed order gives the opposite sign and
// breaks the recurrence from degree 3 on.
Grassmann s1_raw(const Two& b, const Two& be, bool literal = false, const char* of = "B") {
  const Grassmann diff = b.b11 - b.b22;
  const Grassmann disc = diff * diff + b.b12 * b.b21 * Rational(4);
  if (sgn(disc.body()) == 0) {
    throw Error(Errc::ZeroDiscriminant, std::string("discriminant of ") + of + " has zero body");
  }
  Grassmann bracket = b.b12 * be.b21 - b.b21 * be.b12;
  if (literal) bracket = -bracket;
  const Grassmann num = (be.b22 - be.b11) * bracket + diff * be.b12 * be.b21;
  return b.b11 + b.b22 + num * disc.inverse() * Rational(2);
}

}  // namespace

Grassmann q2_s1(const SuperMatrix& b, const SuperMatrix& beta) {
  check_q2(b, beta);
  return s1_raw(entries(b), entries(beta));
}

SemiInvariants q2_closed_form(const SuperMatrix& b, const SuperMatrix& beta) {
  check_q2(b, beta);
  const Grassmann s1 = s1_raw(entries(b), entries(beta));
  // Needs the body eigenvalues of B to have distinct squares as well.
  const Grassmann p2 = s1_raw(entries(b * b + beta * beta), entries(b * beta + beta * b), false, "B^2 + beta^2");
  return {{s1, (p2 - s1 * s1) * Rational(1, 2)}};
}

SemiInvariants q2_closed_form(const SuperMatrix& a) {
  auto [b, beta] = queer_split(a);
  return q2_closed_form(b, beta);
}

SemiInvariants q2_closed_form_literal(const SuperMatrix& b, const SuperMatrix& beta) {
  check_q2(b, beta);
  const Grassmann s1 = s1_raw(entries(b), entries(beta), true);
  const Grassmann s2 =
      s1_raw(entries(b + beta * beta), entries(b * beta + beta * b), true, "B + beta^2") * Rational(1, 2);
  return {{s1, s2}};
}

Grassmann evaluate_balanced(const BalancedExpression& f, const std::vector<Grassmann>& s,
                            const std::vector<Grassmann>& tau) {
  if (s.empty()) throw Error(Errc::LengthMismatch, "no s-values");
  if (f.numerator.even_count() > s.size() || f.numerator.odd_count() > tau.size()) {
    throw Error(Errc::LengthMismatch, "expression uses more symbols than supplied values");
  }
  const Grassmann one(s.front().generators(), 1);
  std::vector<Grassmann> sv(s.begin(), s.begin() + f.numerator.even_count());
  std::vector<Grassmann> tv(tau.begin(), tau.begin() + f.numerator.odd_count());
  const Grassmann num = substitute(f.numerator, sv, tv, one);
  const Grassmann den = substitute(f.denominator, sv, tv, one);
  if (sgn(den.body()) == 0) throw Error(Errc::ZeroDenominator, "denominator has zero body");
  return num * den.inverse();
}

namespace {

void require_balanced(const BalancedExpression& f, std::size_t n) {
  if (auto w = is_balanced_s(f, n); !w.balanced) {
    throw Error(Errc::Unbalanced, "condition " + std::to_string(w.condition) + " fails");
  }
}

std::vector<Grassmann> taus_for(const SuperMatrix& a, const BalancedExpression& f) {
  const std::size_t n = family_rank(a);
  return taus(a, static_cast<unsigned>(std::max(n, f.numerator.odd_count())));
}

}  // namespace

Grassmann evaluate_invariant(const SuperMatrix& a, const BalancedExpression& f) {
  const std::size_t n = family_rank(a);
  require_balanced(f, n);
  return evaluate_balanced(f, compute_s(a).s, taus_for(a, f));
}

Grassmann evaluate_invariant(const SuperMatrix& a, const BalancedExpression& f,
                             const std::vector<Grassmann>& s) {
  const std::size_t n = family_rank(a);
  require_balanced(f, n);
  for (const auto& r : s_residuals(a, s)) {
    if (!r.is_zero()) throw Error(Errc::InadmissibleS, "supplied s violates the recurrence");
  }
  const auto bodies = elementary_from_roots(body_eigenvalues(a));
  for (std::size_t j = 0; j < n; ++j) {
    if (s[j].body() != bodies[j]) {
      throw Error(Errc::InadmissibleS, "body of s_" + std::to_string(j + 1) + " is " +
                                           to_string(s[j].body()) + ", expected " + to_string(bodies[j]));
    }
  }
  return evaluate_balanced(f, s, taus_for(a, f));
}

bool indistinguishable(const SuperMatrix& a1, const SuperMatrix& a2) {
  const std::size_t n = family_rank(a1);
  if (family_rank(a2) != n || a1.shape().kind != a2.shape().kind) {
    throw Error(Errc::ShapeMismatch, "matrices from different families");
  }
  const auto s1 = compute_s(a1).s;
  const auto s2 = compute_s(a2).s;
  if (taus(a1, static_cast<unsigned>(2 * n)) != taus(a2, static_cast<unsigned>(2 * n))) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (s1[i].body() != s2[i].body()) return false;
  }
  return true;
}

std::vector<Grassmann> l_invariants(const SuperMatrix& a) {
  const std::size_t n = family_rank(a);
  const auto t = taus(a, static_cast<unsigned>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (!t[k].is_zero()) throw NotInLError(static_cast<int>(k + 1));
  }
  return compute_s(a).s;
}

std::vector<Grassmann> qet_generating_coefficients(const SuperMatrix& a, unsigned count) {
  const EigenData d = eigendata(a);
  std::vector<Grassmann> out;
  if (a.shape().is_queer()) {
    for (auto& m : d.moments(count)) out.push_back(-m);
    return out;
  }
  // -str(lambda - A)^{-1} = -sum_m lambda^{-(m+1)} str A^m; only odd m survive
  // and str A^{2k-1} = (2k-1) tau_k.
  const auto mom = d.moments((count + 1) / 2);
  for (unsigned m = 1; m <= count; ++m) {
    if (m % 2) {
      out.emplace_back(a.generators());
    } else {
      const unsigned k = m / 2;
      out.push_back(mom[k - 1] * Rational(-static_cast<long>(2 * k - 1)));
    }
  }
  return out;
}

BalancedExpression inverse_moment_expression(std::size_t n) {
  TTauExpression num = TTauExpression::odd_symbol(n, n, n);
  for (std::size_t j = 1; j < n; ++j) {
    num -= TTauExpression::odd_symbol(n, n, n - j) * TTauExpression::even_symbol(n, n, j);
  }
  return make_balanced(std::move(num), TTauExpression::even_symbol(n, n, n));
}

std::vector<TTauExpression> balanced_polynomial_basis(std::size_t n, unsigned max_weight) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::vector<TTauExpression>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({n, max_weight}); it != cache.end()) return it->second;
  }
  // Ansatz: monomials in u_1..u_n, xi_1..xi_n with weight 1..max_weight.
  std::vector<SuperPolynomial::Monomial> ansatz;
  std::vector<unsigned> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<unsigned>(i + 1);
  std::vector<unsigned> exps(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
    if (i == n) {
      for (Mask m = 0; m < (Mask{1} << n); ++m) {
        unsigned total = used;
        for (unsigned k : mask_to_indices(m)) total += k;
        if (total >= 1 && total <= max_weight) ansatz.push_back({exps, m});
      }
      return;
    }
    for (unsigned e = 0; used + e * w[i] <= max_weight; ++e) {
      exps[i] = e;
      rec(i + 1, used + e * w[i]);
    }
    exps[i] = 0;
  };
  rec(0, 0);

  // alpha_i d/da_i of each pullback, stacked over i.
  std::map<std::pair<std::size_t, SuperPolynomial::Monomial>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(ansatz.size());
  for (std::size_t j = 0; j < ansatz.size(); ++j) {
    TTauExpression mono(n, n);
    mono.add_term(ansatz[j], 1);
    const SuperPolynomial pull = expand_s_tau(mono, n);
    for (std::size_t i = 1; i <= n; ++i) {
      const SuperPolynomial r = SuperPolynomial::odd_symbol(n, n, i) * pull.derivative_even(i);
      for (const auto& [m, c] : r.terms()) {
        const auto row = row_of.try_emplace({i, m}, row_of.size()).first->second;
        cols[j].emplace_back(row, c);
      }
    }
  }
  RationalMatrix l(std::max<std::size_t>(row_of.size(), 1), ansatz.size());
  for (std::size_t j = 0; j < ansatz.size(); ++j)
    for (const auto& [r, c] : cols[j]) l(r, j) = c;
  std::vector<TTauExpression> basis;
  for (const auto& v : nullspace(l)) {
    TTauExpression h(n, n);
    for (std::size_t j = 0; j < ansatz.size(); ++j) h.add_term(ansatz[j], v[j]);
    basis.push_back(std::move(h));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::pair{n, max_weight}, basis);
  return basis;
}

std::vector<BalancedExpression> balanced_corpus(std::size_t n, std::uint64_t seed,
                                                std::size_t random_count) {
  std::vector<BalancedExpression> candidates;
  const TTauExpression one(n, n, 1);
  TTauExpression top = one;
  for (std::size_t i = 1; i <= n; ++i) {
    candidates.push_back(make_balanced(TTauExpression::odd_symbol(n, n, i)));
    top = top * TTauExpression::odd_symbol(n, n, i);
  }
  candidates.push_back(make_balanced(TTauExpression::even_symbol(n, n, 1) * top));
  candidates.push_back(make_balanced(TTauExpression::even_symbol(n, n, n).pow(2) * top));
  if (n == 1) candidates.push_back(make_balanced(TTauExpression::even_symbol(1, 1, 1).pow(3) * top));
  const BalancedExpression inv = inverse_moment_expression(n);
  candidates.push_back(inv);
  candidates.push_back(make_balanced(TTauExpression::odd_symbol(n, n, 1) * inv.numerator, inv.denominator));

  Sampler rng(seed, {3, 0, 0});
  const auto basis = balanced_polynomial_basis(n, static_cast<unsigned>(n + 2));
  for (std::size_t r = 0; r < random_count && !basis.empty(); ++r) {
    TTauExpression h(n, n);
    for (const auto& b : basis) {
      if (rng.integer(0, 2) == 0) h += b * Rational(rng.integer(-3, 3));
    }
    if (h.is_zero()) h = basis[rng.integer(0, static_cast<long>(basis.size()) - 1)];
    candidates.push_back(make_balanced(h));
    // Products of balanced expressions are balanced.
    candidates.push_back(make_balanced(h * inv.numerator, inv.denominator));
  }

  std::vector<BalancedExpression> corpus;
  for (auto& c : candidates) {
    if (c.numerator.is_zero()) continue;
    if (is_balanced_s(c, n).balanced) corpus.push_back(std::move(c));
  }
  return corpus;
}

}  // namespace superinv
