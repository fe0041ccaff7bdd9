#include <doctest.h>

#include "helpers.hpp"
#include "superinv/error.hpp"
#include "superinv/linalg.hpp"
#include "superinv/sampling.hpp"
#include "superinv/spectral.hpp"

using namespace superinv;
using helpers::G;
using helpers::num;
using helpers::xi;

namespace {

RationalMatrix rm(std::size_t n, std::vector<Rational> d) { return RationalMatrix(n, n, std::move(d)); }

bool soul_free(const SuperMatrix& g) {
  for (const auto& x : g.entries())
    if (!x.soul().is_zero()) return false;
  return true;
}

void check_plug_back(const SuperMatrix& a, const SpectralDecomposition& d) {
  CHECK(conjugate(a, d.conjugator) == d.assemble());
  std::vector<int> seen(a.dim(), 0);
  for (const auto& part : d.partition)
    for (auto i : part) ++seen[i];
  for (int c : seen) CHECK(c == 1);
  CHECK(is_block_diagonal(d.assemble(), d.partition));
}

}  // namespace

TEST_CASE("rational spectrum") {
  auto s = rational_spectrum(RationalMatrix::diagonal({1, 1, 2}));
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0] == std::pair<Rational, unsigned>{1, 2});
  CHECK(s.eigenvalues[1] == std::pair<Rational, unsigned>{2, 1});
  CHECK_FALSE(s.simple());

  s = rational_spectrum(rm(2, {0, 1, 1, 0}));
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.multiplicity(1) == 1);
  CHECK(s.multiplicity(-1) == 1);
  CHECK(s.simple());

  try {
    rational_spectrum(rm(2, {0, -1, 1, 0}));
    FAIL("expected NonSplitting");
  } catch (const NonSplittingError& e) {
    CHECK(e.code() == Errc::NonSplitting);
    CHECK(e.residual().find("lambda^2") != std::string::npos);
  }
}

TEST_CASE("Sylvester solves") {
  CHECK(solve_sylvester(rm(1, {1}), rm(1, {-1}), rm(1, {4})) == rm(1, {2}));
  CHECK(solve_sylvester(rm(2, {1, 2, 0, 3}), rm(1, {5}), RationalMatrix(2, 1)).is_zero());
  CHECK_THROWS_AS(solve_sylvester(rm(1, {2}), rm(1, {2}), rm(1, {1})), Error);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Sampler s(seed);
    const std::size_t p = s.integer(1, 3), r = s.integer(1, 3);
    const auto eig = s.distinct_integers(p + r, -5, 5);
    const RationalMatrix b = s.with_spectrum({eig.begin(), eig.begin() + p});
    const RationalMatrix d = s.with_spectrum({eig.begin() + p, eig.end()});
    const RationalMatrix rhs = s.rational_matrix(p, r);
    const RationalMatrix x = solve_sylvester(b, d, rhs);
    CHECK(b * x - x * d == rhs);
  }
}

TEST_CASE("two-by-two queer example") {
  const unsigned q = 1;
  const SuperMatrix a = helpers::queer(q, {num(q, 1), xi(q, 1), num(q, 0), num(q, 2)});
  for (const auto& d : {block_diagonalize(a), diagonalize(a)}) {
    CHECK(d.conjugator.matrix() == helpers::queer(q, {num(q, 1), xi(q, 1), num(q, 0), num(q, 1)}));
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.blocks[0].eigenvalue == 1);
    CHECK(d.blocks[0].block == helpers::queer(q, {num(q, 1)}));
    CHECK(d.blocks[1].eigenvalue == 2);
    CHECK(d.blocks[1].block == helpers::queer(q, {num(q, 2)}));
    check_plug_back(a, d);
  }
}

TEST_CASE("block-diagonal input is left alone") {
  const unsigned q = 2;
  const SuperMatrix a = helpers::diag_queer({G(q, {{{}, 1}, {{1}, 1}}), G(q, {{{}, 3}, {{1, 2}, 2}})});
  const auto d = diagonalize(a);
  CHECK(soul_free(d.conjugator.matrix()));
  CHECK(d.assemble() == a);
}

TEST_CASE("random reductions plug back") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Sampler s(seed);
    const unsigned q = static_cast<unsigned>(s.integer(1, 4));
    CAPTURE(seed);
    const SuperMatrix a = s.matrix_with_body(Shape::queer(3), ParityClass::Any, q, s.with_spectrum({0, 1, 2}));
    const auto d = diagonalize(a);
    check_plug_back(a, d);
    for (std::size_t k = 0; k < d.filtration.size(); ++k) CHECK(d.filtration[k] >= k + 2);
    for (const auto& b : d.blocks) CHECK(b.block.dim() == 1);

    const RationalMatrix z = s.invertible_rational(2);
    const RationalMatrix y = s.with_spectrum({1, 4}) * *inverse(z);
    RationalMatrix ob(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        ob(i, 2 + j) = y(i, j);
        ob(2 + i, j) = z(i, j);
      }
    const SuperMatrix o = s.matrix_with_body(Shape::standard(2, 2), ParityClass::Odd, q, ob);
    const auto od = reduce_odd(o);
    check_plug_back(o, od);
    REQUIRE(od.blocks.size() == 2);
    for (const auto& b : od.blocks) {
      CHECK(b.block(1, 0) == num(q, 1));
      CHECK(b.block(1, 1).is_zero());
    }
  }
}

TEST_CASE("odd one-by-one normal form") {
  const unsigned q = 2;
  const SuperMatrix a = helpers::odd11(q, {xi(q, 1), num(q, 2), num(q, 3), xi(q, 2)});
  const auto d = reduce_odd(a);
  REQUIRE(d.blocks.size() == 1);
  CHECK(d.blocks[0].block ==
        helpers::odd11(q, {xi(q, 1) + xi(q, 2), num(q, 6) - xi(q, 1) * xi(q, 2), num(q, 1), num(q, 0)}));
  CHECK(d.blocks[0].eigenvalue == 6);
  check_plug_back(a, d);

  const SuperMatrix canon = helpers::odd11(q, {xi(q, 1), num(q, 5), num(q, 1), num(q, 0)});
  const auto dc = reduce_odd(canon);
  CHECK(dc.assemble() == canon);
  CHECK(soul_free(dc.conjugator.matrix()));
}

TEST_CASE("reduction preconditions") {
  const unsigned q = 1;
  const SuperMatrix rot = helpers::queer(q, {num(q, 0), num(q, -1), num(q, 1), num(q, 0)});
  CHECK_THROWS_AS(block_diagonalize(rot), NonSplittingError);
  const SuperMatrix jordan = helpers::queer(q, {num(q, 1), num(q, 1), num(q, 0), num(q, 1)});
  CHECK_NOTHROW(block_diagonalize(jordan));
  try {
    diagonalize(jordan);
    FAIL("expected MultipleEigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MultipleEigenvalue);
  }
  CHECK_THROWS_AS(reduce_odd(rot), Error);
  const SuperMatrix singular = helpers::odd11(q, {xi(q, 1), num(q, 0), num(q, 1), num(q, 0)});
  CHECK_THROWS_AS(reduce_odd(singular), Error);
}

TEST_CASE("antidiagonalization") {
  const unsigned q = 2;
  const SuperMatrix j = helpers::odd11(q, {num(q, 0), num(q, -1), num(q, 1), num(q, 0)});
  CHECK(antidiagonalize(j).matrix() == SuperMatrix::identity(Shape::standard(1, 1), q));
  const Grassmann x = xi(q, 1), y = G(q, {{{}, 2}, {{1, 2}, 1}});
  const SuperMatrix a = helpers::odd11(q, {x, y, num(q, 1), -x});
  CHECK(conjugate(a, antidiagonalize(a)) == helpers::odd11(q, {num(q, 0), y + x * x, num(q, 1), num(q, 0)}));
  const SuperMatrix bad = helpers::odd11(q, {x, y, num(q, 0), -x});
  try {
    antidiagonalize(bad);
    FAIL("expected SingularZ");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularZ);
  }
}
