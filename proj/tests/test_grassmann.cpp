#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "superinv/error.hpp"
#include "superinv/sampling.hpp"

using namespace superinv;
using helpers::G;
using helpers::num;
using helpers::xi;

TEST_CASE("products of generators") {
  const unsigned q = 3;
  CHECK(xi(q, 1) * xi(q, 2) == G(q, {{{1, 2}, 1}}));
  CHECK(xi(q, 2) * xi(q, 1) == G(q, {{{1, 2}, -1}}));
  CHECK((xi(q, 1) * xi(q, 1)).is_zero());
  const Grassmann u = G(q, {{{}, 1}, {{1, 2}, 1}});
  const Grassmann v = G(q, {{{}, 1}, {{1, 2}, -1}});
  CHECK(u * v == num(q, 1));
}

TEST_CASE("body, parity split and inversion examples") {
  const unsigned q = 2;
  CHECK(G(q, {{{}, Rational(3, 2)}, {{1}, 1}}).body() == Rational(3, 2));
  CHECK(G(q, {{{1, 2}, 1}}).body() == 0);

  const auto [e, o] = G(q, {{{}, 2}, {{1}, 1}, {{1, 2}, 1}}).parity_split();
  CHECK(e == G(q, {{{}, 2}, {{1, 2}, 1}}));
  CHECK(o == xi(q, 1));
  const auto [re, ro] = num(q, Rational(5, 7)).parity_split();
  CHECK(re == num(q, Rational(5, 7)));
  CHECK(ro.is_zero());

  CHECK(G(q, {{{}, 1}, {{1, 2}, 1}}).inverse() == G(q, {{{}, 1}, {{1, 2}, -1}}));
  CHECK(num(q, 2).inverse() == num(q, Rational(1, 2)));
  CHECK_THROWS_AS(xi(q, 1).inverse(), Error);
}

TEST_CASE("canonical storage drops zeros and keeps masks sorted") {
  const unsigned q = 4;
  Grassmann x = xi(q, 3) + xi(q, 1) - xi(q, 3);
  CHECK(x == xi(q, 1));
  CHECK(x.size() == 1);
  const Grassmann y = xi(q, 4) * xi(q, 2) + xi(q, 1);
  Mask last = 0;
  bool first = true;
  for (const auto& t : y.terms()) {
    CHECK(t.coeff != 0);
    if (!first) CHECK(t.mask > last);
    last = t.mask;
    first = false;
  }
}

TEST_CASE("mixing generator counts is rejected") {
  CHECK_THROWS_AS(xi(2, 1) + xi(3, 1), Error);
  CHECK_THROWS_AS(xi(2, 1) * xi(3, 1), Error);
  CHECK_THROWS_AS(Grassmann::generator(2, 3), Error);
}

TEST_CASE("product agrees with the brute-force oracle") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Sampler s(seed, {3, 6, 0});
    const unsigned q = static_cast<unsigned>(s.integer(1, 8));
    const Grassmann x = s.scalar(q, true, true), y = s.scalar(q, true, true);
    CAPTURE(seed);
    CHECK(x * y == oracle::to(oracle::mul(oracle::from(x), oracle::from(y))));
    CHECK((x * y).body() == x.body() * y.body());
    if (x.body() != 0) CHECK(x.inverse() == oracle::to(oracle::invert(oracle::from(x))));
  }
}

TEST_CASE("odd squares vanish and souls are nilpotent") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Sampler s(seed, {3, 6, 0});
    const unsigned q = static_cast<unsigned>(s.integer(1, 8));
    const Grassmann o = s.odd_scalar(q);
    CHECK((o * o).is_zero());
    const Grassmann soul = s.scalar(q, true, true).soul();
    CHECK(soul.pow(q + 1).is_zero());
    const Grassmann e = s.even_scalar(q);
    CHECK(e * o == o * e);
  }
}

TEST_CASE("generator cap") {
  const unsigned saved = generator_cap();
  set_generator_cap(4);
  CHECK_THROWS_AS(Grassmann(5), Error);
  CHECK_NOTHROW(Grassmann(4));
  set_generator_cap(saved);
  CHECK_THROWS_AS(set_generator_cap(kMaxGenerators + 1), Error);
}
