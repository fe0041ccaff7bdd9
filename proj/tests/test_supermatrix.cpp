#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "superinv/error.hpp"
#include "superinv/sampling.hpp"

using namespace superinv;
using helpers::G;
using helpers::num;
using helpers::xi;

namespace {

const Shape s11 = Shape::standard(1, 1);

SuperMatrix even11(unsigned q, std::vector<Grassmann> e) { return SuperMatrix(s11, ParityClass::Even, q, std::move(e)); }

SuperMatrix from_oracle(const oracle::Matrix& m, const SuperMatrix& like) {
  std::vector<Grassmann> e;
  for (const auto& row : m)
    for (const auto& x : row) e.push_back(oracle::to(x));
  return SuperMatrix(like.shape(), ParityClass::Any, like.generators(), std::move(e));
}

bool same_entries(const SuperMatrix& a, const SuperMatrix& b) { return a.entries() == b.entries(); }

}  // namespace

TEST_CASE("multiplication and inversion examples") {
  const unsigned q = 1;
  const SuperMatrix u = even11(q, {num(q, 1), xi(q, 1), num(q, 0), num(q, 1)});
  const SuperMatrix v = even11(q, {num(q, 1), -xi(q, 1), num(q, 0), num(q, 1)});
  CHECK(u * v == SuperMatrix::identity(s11, q));
  CHECK(SuperMatrix::identity(s11, q) * u == u);
  CHECK(mat_invert(u) == v);

  const SuperMatrix d = helpers::diag_queer({num(q, 2), num(q, 3)});
  CHECK(mat_invert(d) == helpers::diag_queer({num(q, Rational(1, 2)), num(q, Rational(1, 3))}));
  CHECK_THROWS_AS(mat_invert(helpers::diag_queer({num(q, 0), num(q, 3)})), SingularBodyError);
}

TEST_CASE("products and inverses agree with the oracle") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Sampler s(seed);
    const std::size_t n = s.integer(1, 3);
    const unsigned q = static_cast<unsigned>(s.integer(1, 5));
    const Shape sh = Shape::queer(n);
    const SuperMatrix a = s.matrix(sh, ParityClass::Any, q), b = s.matrix(sh, ParityClass::Any, q);
    const SuperMatrix c = s.matrix(sh, ParityClass::Any, q);
    CAPTURE(seed);
    CHECK(same_entries(a * b, from_oracle(oracle::mul(oracle::from(a), oracle::from(b)), a)));
    CHECK((a * b) * c == a * (b * c));
    const GroupElement g = s.group_element(sh, q);
    CHECK(same_entries(g.inverse(), from_oracle(oracle::invert(oracle::from(g.matrix())), a)));
    CHECK(g.matrix() * g.inverse() == SuperMatrix::identity(sh, q));
  }
}

TEST_CASE("block parity is enforced") {
  const unsigned q = 2;
  CHECK_NOTHROW(even11(q, {num(q, 1), xi(q, 1), xi(q, 2), num(q, 2)}));
  try {
    even11(q, {num(q, 1), num(q, 5), xi(q, 1), num(q, 2)});
    FAIL("expected a parity violation");
  } catch (const ParityViolationError& e) {
    CHECK(e.row() == 0);
    CHECK(e.col() == 1);
  }
  try {
    helpers::odd11(q, {xi(q, 1), num(q, 2), num(q, 3), num(q, 1)});
    FAIL("expected a parity violation");
  } catch (const ParityViolationError& e) {
    CHECK(e.row() == 1);
    CHECK(e.col() == 1);
  }
  CHECK_THROWS_AS(SuperMatrix(Shape::queer(1), ParityClass::Even, q, {num(q, 1)}), Error);
}

TEST_CASE("queer split") {
  const unsigned q = 1;
  const SuperMatrix a = helpers::diag_queer({G(q, {{{}, 2}, {{1}, 1}}), num(q, 1)});
  const auto [a0, a1] = queer_split(a);
  CHECK(a0 == helpers::diag_queer({num(q, 2), num(q, 1)}));
  CHECK(a1 == helpers::diag_queer({xi(q, 1), num(q, 0)}));
  CHECK(a0 + a1 == a);
  const SuperMatrix r = helpers::diag_queer({num(q, 4), num(q, 1)});
  CHECK(queer_split(r).first == r);
  CHECK(queer_split(r).second.is_zero());
}

TEST_CASE("supertrace examples") {
  const unsigned q = 2;
  const Grassmann a = G(q, {{{}, 3}, {{1, 2}, 1}}), b = num(q, 5);
  CHECK(supertrace(even11(q, {a, num(q, 0), num(q, 0), b})) == a - b);
  const SuperMatrix o = helpers::odd11(q, {xi(q, 1), num(q, 2), num(q, 3), xi(q, 2)});
  CHECK(supertrace(o) == xi(q, 1) + xi(q, 2));
  const SuperMatrix o2 = o * o;
  CHECK(o2 == even11(q, {num(q, 6), 2 * (xi(q, 1) + xi(q, 2)), 3 * (xi(q, 1) + xi(q, 2)), num(q, 6)}));
  CHECK(supertrace(o2).is_zero());
  CHECK_THROWS_AS(supertrace(helpers::diag_queer({num(q, 1)})), Error);
}

TEST_CASE("qtr and qet examples") {
  const unsigned q = 2;
  const SuperMatrix a1 = helpers::diag_queer({G(q, {{{}, 2}, {{1}, 1}})});
  CHECK(qtr(a1) == xi(q, 1));
  CHECK(qet(a1) == xi(q, 1) * Rational(1, 2));
  const SuperMatrix a2 = helpers::diag_queer({G(q, {{{}, 1}, {{1}, 1}}), G(q, {{{}, 2}, {{2}, 1}})});
  CHECK(qet(a2) == xi(q, 1) + xi(q, 2) * Rational(1, 2));
  CHECK(qtr(helpers::diag_queer({num(q, 3), num(q, 4)})).is_zero());
  CHECK_THROWS_AS(qet(helpers::diag_queer({xi(q, 1), num(q, 1)})), SingularBodyError);
}

TEST_CASE("tau examples") {
  const unsigned q = 2;
  const SuperMatrix canon = helpers::odd11(q, {xi(q, 1), num(q, 3), num(q, 1), num(q, 0)});
  CHECK(tau(canon, 2) == 3 * xi(q, 1));
  CHECK(supertrace(mat_pow(canon, 3)) == 9 * xi(q, 1));
  const SuperMatrix d = helpers::diag_queer({G(q, {{{}, 1}, {{1}, 1}}), G(q, {{{}, 2}, {{2}, 1}})});
  CHECK(tau(d, 1) == xi(q, 1) + xi(q, 2));
  CHECK(tau(d, 2) == xi(q, 1) + 2 * xi(q, 2));
  CHECK(tau(d, 3) == xi(q, 1) + 4 * xi(q, 2));
  CHECK_THROWS_AS(tau(even11(q, {num(q, 1), num(q, 0), num(q, 0), num(q, 1)}), 1), Error);
}

TEST_CASE("invariants agree with the oracle and survive conjugation") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Sampler s(seed);
    const std::size_t n = s.integer(1, 2);
    const unsigned q = static_cast<unsigned>(s.integer(1, 4));
    const SuperMatrix a = s.matrix_with_body(Shape::queer(n), ParityClass::Any, q,
                                             s.with_spectrum(s.distinct_integers(n, 1, 5)));
    const GroupElement g = s.group_element(Shape::queer(n), q);
    const SuperMatrix c = conjugate(a, g);
    CAPTURE(seed);
    CHECK(qtr(a) == oracle::to(oracle::qtr(oracle::from(a))));
    CHECK(qet(a) == oracle::to(oracle::qet(oracle::from(a))));
    CHECK(qtr(c) == qtr(a));
    CHECK(qet(c) == qet(a));
    for (unsigned k = 1; k <= 2 * n; ++k) {
      CHECK(tau(a, k) == oracle::to(oracle::tau(a, k)));
      CHECK(tau(c, k) == tau(a, k));
    }

    const SuperMatrix o = s.matrix(Shape::standard(n, n), ParityClass::Odd, q);
    const SuperMatrix oc = conjugate(o, s.group_element(Shape::standard(n, n), q));
    for (unsigned k = 1; k <= 2 * n; ++k) {
      CHECK(tau(o, k) == oracle::to(oracle::tau(o, k)));
      CHECK(tau(oc, k) == tau(o, k));
    }
  }
}

TEST_CASE("conjugation") {
  const unsigned q = 2;
  const SuperMatrix a = helpers::odd11(q, {xi(q, 1), num(q, 2), num(q, 3), xi(q, 2)});
  const GroupElement g(even11(q, {num(q, 1), -xi(q, 2), num(q, 0), num(q, 3)}));
  const SuperMatrix want =
      helpers::odd11(q, {xi(q, 1) + xi(q, 2), num(q, 6) - xi(q, 1) * xi(q, 2), num(q, 1), num(q, 0)});
  CHECK(conjugate(a, g) == want);
  CHECK(conjugate(conjugate(a, g), g.inverted()) == a);
  CHECK(conjugate(a, GroupElement::identity(s11, q)) == a);
  CHECK_THROWS_AS(GroupElement(helpers::odd11(q, {xi(q, 1), num(q, 2), num(q, 3), xi(q, 2)})), Error);
}

TEST_CASE("sampling is deterministic and respects contracts") {
  const Shape sh = Shape::standard(2, 1);
  CHECK(random_matrix(sh, ParityClass::Even, 4, 99, 3) == random_matrix(sh, ParityClass::Even, 4, 99, 3));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GroupElement g = random_group_element(sh, 3, seed, 3);
    CHECK(determinant(g.matrix().body()) != 0);
    CHECK(g.matrix().parity() == ParityClass::Even);
    CHECK_NOTHROW(random_matrix(sh, ParityClass::Even, 4, seed, 3).with_parity(ParityClass::Even));
  }
}
