#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "superinv/error.hpp"
#include "superinv/linalg.hpp"
#include "superinv/sampling.hpp"
#include "superinv/symmetric.hpp"
#include "superinv/univariate.hpp"

using namespace superinv;
using helpers::G;
using helpers::num;
using helpers::xi;

namespace {

SuperPolynomial a(std::size_t n, std::size_t i) { return SuperPolynomial::even_symbol(n, n, i); }
SuperPolynomial al(std::size_t n, std::size_t i) { return SuperPolynomial::odd_symbol(n, n, i); }
SuperPolynomial c(std::size_t n, const Rational& r) { return SuperPolynomial(n, n, r); }

// Sum of f over all relabellings of the variables.
SuperPolynomial symmetrize(const SuperPolynomial& f) {
  const std::size_t n = f.even_count();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  SuperPolynomial s(n, n);
  do s += f.permuted(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

SuperPolynomial random_monomial(Sampler& g, std::size_t n, unsigned max_weight) {
  SuperPolynomial::Monomial m{std::vector<unsigned>(n, 0), 0};
  unsigned w = static_cast<unsigned>(g.integer(1, max_weight));
  for (std::size_t i = 0; i < n && w; ++i) {
    if (g.integer(0, 1) && w >= 1) {
      m.odd |= Mask{1} << i;
      --w;
    }
  }
  while (w) {
    m.even[g.integer(0, static_cast<long>(n) - 1)] += 1;
    --w;
  }
  SuperPolynomial p(n, n);
  p.add_term(m, g.nonzero_rational());
  return p;
}

// Value of f at a_i = x_i, alpha_i = generator i, computed without the (t, tau) machinery.
Grassmann at_point(const SuperPolynomial& f, const std::vector<Rational>& x) {
  const unsigned q = static_cast<unsigned>(x.size());
  std::vector<Grassmann> ev, od;
  for (unsigned i = 0; i < q; ++i) {
    ev.push_back(num(q, x[i]));
    od.push_back(xi(q, i + 1));
  }
  return substitute(f, ev, od, num(q, 1));
}

// (t_k, tau_k) at the same point, straight from the definitions.
Grassmann ttau_at_point(const TTauExpression& h, const std::vector<Rational>& x) {
  const unsigned q = static_cast<unsigned>(x.size());
  std::vector<Grassmann> t, tau;
  for (std::size_t k = 1; k <= std::max(h.even_count(), h.odd_count()); ++k) {
    Rational tk = 0;
    Grassmann sk(q);
    for (unsigned i = 0; i < q; ++i) {
      Rational p = 1;
      for (std::size_t e = 1; e < k; ++e) p *= x[i];
      sk += xi(q, i + 1) * p;
      tk += p * x[i];
    }
    t.push_back(num(q, tk));
    tau.push_back(sk);
  }
  t.resize(h.even_count());
  tau.resize(h.odd_count());
  return substitute(h, t, tau, num(q, 1));
}

}  // namespace

TEST_CASE("diagonal invariance") {
  const std::size_t n = 2;
  CHECK(check_diag_invariance(al(n, 1) + al(n, 2)).invariant);
  const auto w = check_diag_invariance(a(n, 1));
  CHECK_FALSE(w.invariant);
  CHECK(w.index == 1);
  CHECK(w.residual == al(n, 1));
  CHECK(check_diag_invariance(al(n, 1) * al(n, 2) * (a(n, 1) - a(n, 2))).invariant);
}

TEST_CASE("invariant decomposition") {
  const std::size_t n = 2;
  const auto ps = power_sums(n, 2);
  auto d = invariant_decomposition(ps.tau[1]);
  CHECK(d.f0 == 0);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0] == SuperPolynomial::even_symbol(1, 0, 1));

  d = invariant_decomposition(ps.tau[0] * ps.tau[1]);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0].is_zero());
  CHECK(d.components[1] == SuperPolynomial::even_symbol(2, 0, 2) - SuperPolynomial::even_symbol(2, 0, 1));
  CHECK(is_skew_symmetric(d.components[1]));
  CHECK(reassemble(d, n) == ps.tau[0] * ps.tau[1]);

  d = invariant_decomposition(c(n, 5));
  CHECK(d.f0 == 5);
  CHECK(d.components.empty());
  CHECK_THROWS_AS(invariant_decomposition(a(n, 1) + a(n, 2)), Error);
}

TEST_CASE("Vandermonde adjoint") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto v = vandermonde_adjoint(n);
    const auto p = poly_matmul(v.adjoint, v.m);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t l = 0; l < n; ++l) {
        SuperPolynomial want(n, 0, s == l ? 1 : 0);
        if (s == l)
          for (std::size_t i = 0; i < n; ++i)
            if (i != l)
              want = want * (SuperPolynomial::even_symbol(n, 0, l + 1) - SuperPolynomial::even_symbol(n, 0, i + 1));
        CHECK(p[s][l] == want);
      }
  }
  const auto v2 = vandermonde_adjoint(2);
  const auto p2 = poly_matmul(v2.adjoint, v2.m);
  CHECK(p2[0][0] == SuperPolynomial::even_symbol(2, 0, 1) - SuperPolynomial::even_symbol(2, 0, 2));
  CHECK(p2[0][1].is_zero());
}

TEST_CASE("rewrite worked examples") {
  const std::size_t n = 2;
  TTauExpression xi1(n, n), want(n, n);
  xi1.add_term({{0, 0}, 1}, 1);
  CHECK(rewrite_symmetric(al(n, 1) + al(n, 2)) == xi1);

  want.add_term({{1, 0}, 1}, 1);
  want.add_term({{0, 0}, 2}, -1);
  CHECK(rewrite_symmetric(al(n, 1) * a(n, 2) + al(n, 2) * a(n, 1)) == want);

  TTauExpression newton(n, n);
  newton.add_term({{2, 0}, 0}, Rational(1, 2));
  newton.add_term({{0, 1}, 0}, Rational(-1, 2));
  CHECK(rewrite_symmetric(a(n, 1) * a(n, 2)) == newton);

  try {
    rewrite_symmetric(a(n, 1));
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSymmetric);
  }
}

TEST_CASE("rewrite round trip against point evaluation") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Sampler g(seed);
    const std::size_t n = g.integer(1, 3);
    SuperPolynomial f(n, n);
    for (int k = 0; k < 2; ++k) f += symmetrize(random_monomial(g, n, 5));
    CAPTURE(seed);
    const TTauExpression h = rewrite_symmetric(f);
    CHECK(expand_t_tau(h, n) == f);
    CHECK(rewrite_symmetric(f, {true}) == h);
    std::vector<Rational> x;
    for (const auto& v : g.distinct_integers(n, -5, 5)) x.push_back(v);
    CHECK(ttau_at_point(h, x) == at_point(f, x));
  }
}

TEST_CASE("power sums of the nonhomogeneous variables") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto ps = power_sums(n, 2 * n);
    for (std::size_t k = 1; k <= 2 * n; ++k) {
      SuperPolynomial lhs(n, n);
      for (std::size_t i = 1; i <= n; ++i) lhs += (a(n, i) + al(n, i)).pow(static_cast<unsigned>(k));
      CHECK(lhs == ps.t[k - 1] + ps.tau[k - 1] * Rational(static_cast<long>(k)));
    }
  }
}

TEST_CASE("balance examples") {
  const std::size_t n = 2;
  TTauExpression x1(n, 2 * n - 1), u1(n, 2 * n - 1);
  x1.add_term({{0, 0}, 1}, 1);
  u1.add_term({{1, 0}, 0}, 1);
  CHECK(is_balanced(x1, n).balanced);
  const auto w = is_balanced(u1, n);
  CHECK_FALSE(w.balanced);
  CHECK(w.condition == 1);
  CHECK(w.residual == power_sums(n, 1).tau[0]);

  TTauExpression h(1, 1);
  h.add_term({{1}, 1}, 1);
  CHECK(is_balanced(h, 1).balanced);
}

TEST_CASE("tau normal form") {
  const std::size_t n = 2;
  auto nf = invariant_normal_form(tau_product({1, 2}, n));
  REQUIRE(nf.size() == 1);
  CHECK(nf.begin()->first == std::vector<unsigned>{1, 2});
  CHECK(nf.begin()->second == 1);
  CHECK(tau_product({1, 2, 3}, n).is_zero());
  CHECK(invariant_normal_form(tau_product({1, 2, 3}, n)).empty());

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sampler g(seed);
    const std::size_t m = g.integer(1, 3);
    TauNormalForm want;
    for (const auto& t : increasing_tuples(2 * static_cast<unsigned>(m), static_cast<unsigned>(m)))
      if (g.integer(0, 2) == 0) want[t] = g.nonzero_rational();
    CHECK(invariant_normal_form(expand_normal_form(want, m)) == want);
  }
}

TEST_CASE("tau relations and independence") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const unsigned len = static_cast<unsigned>(n) + 1;
    std::vector<unsigned> idx(len, 1);
    // Every non-decreasing tuple of length n+1 over 1..2n+1.
    while (true) {
      CHECK(tau_product(idx, n).is_zero());
      int k = static_cast<int>(len) - 1;
      while (k >= 0 && idx[k] == 2 * n + 1) --k;
      if (k < 0) break;
      ++idx[k];
      for (unsigned j = k + 1; j < len; ++j) idx[j] = idx[k];
    }
    const auto tuples = increasing_tuples(2 * static_cast<unsigned>(n), static_cast<unsigned>(n));
    CHECK(expansion_rank(tuples, n) == tuples.size());
  }
  CHECK(increasing_tuples(2, 1).size() == 2);
  CHECK(increasing_tuples(4, 2).size() == 10);
  CHECK(increasing_tuples(6, 3).size() == 41);
}

TEST_CASE("elementary functions and the recurrence") {
  const auto s = elementary_from_roots(std::vector<Rational>{1, 2});
  CHECK(s == std::vector<Rational>{3, -2});
  CHECK(elementary_from_roots(std::vector<Rational>{0, 0}) == std::vector<Rational>{0, 0});

  const unsigned q = 2;
  const std::vector<Grassmann> tau = {xi(q, 1) + xi(q, 2), xi(q, 1) + 2 * xi(q, 2), xi(q, 1) + 4 * xi(q, 2),
                                      xi(q, 1) + 8 * xi(q, 2)};
  const std::vector<Grassmann> sg = {num(q, 3), num(q, -2)};
  CHECK(tau[2] == tau[0] * Rational(-2) + tau[1] * Rational(3));
  CHECK(verify_recurrence(tau, sg));
  CHECK_FALSE(verify_recurrence(tau, {num(q, 3), num(q, 2)}));
  const std::vector<Grassmann> zero(4, Grassmann(q));
  CHECK(verify_recurrence(zero, {Grassmann(q), Grassmann(q)}));
  CHECK_THROWS_AS(verify_recurrence({tau[0]}, sg), Error);
}

TEST_CASE("recurrence solutions need not come from roots") {
  // With all tau zero any (s_1, s_2) solves the recurrence; the pair below
  // needs b_1 + b_2 = 2 and b_1 b_2 = 1 + x1 x2, which has no even solution.
  const unsigned q = 2;
  const std::vector<Grassmann> zero(4, Grassmann(q));
  CHECK(verify_recurrence(zero, {num(q, 2), G(q, {{{}, -1}, {{1, 2}, -1}})}));

  // Even b_1 = c + d x1 x2 gives b_1 (2 - b_1) = c (2 - c) + 2 d (1 - c) x1 x2.
  const auto roots = rational_roots(UPoly({1, -2, 1}));
  REQUIRE(roots.roots.size() == 1);
  const Rational c0 = roots.roots[0].first;
  CHECK(c0 == 1);
  CHECK(roots.roots[0].second == 2);
  // The soul equation 2 (1 - c) d = 1 has a zero coefficient, so it is inconsistent.
  const RationalMatrix lhs(1, 1, {2 * (1 - c0)});
  CHECK_FALSE(solve(lhs, RationalMatrix(1, 1, {1})).has_value());
  for (Rational d : {Rational(0), Rational(1), Rational(-3, 2)}) {
    const Grassmann b1 = G(q, {{{}, c0}, {{1, 2}, d}});
    CHECK_FALSE(b1 * (num(q, 2) - b1) == G(q, {{{}, 1}, {{1, 2}, 1}}));
  }
}
