#include "superinv/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "superinv/semi_invariants.hpp"
#include "superinv/symmetric.hpp"

namespace superinv {

namespace {

using Outcome = std::optional<std::string>;

std::string dump(const SuperMatrix& m) { return matrix_to_json(m).dump(); }

std::string show(const std::vector<Grassmann>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + "]";
}

bool all_zero(const std::vector<Grassmann>& v) {
  return std::all_of(v.begin(), v.end(), [](const Grassmann& x) { return x.is_zero(); });
}

Sampler child(Sampler& s, SampleOptions opts = {}) { return Sampler(s.next_seed(), opts); }

unsigned pick_q(Sampler& s, unsigned lo, unsigned hi) {
  return static_cast<unsigned>(s.integer(lo, std::min(hi, generator_cap())));
}

// Random homogeneous Grassmann element with body for even parity.
Grassmann homogeneous(Sampler& s, unsigned q, bool odd) {
  return odd ? s.odd_scalar(q) : s.even_scalar(q);
}

// Queer(n) with distinct integer body eigenvalues drawn from [lo, hi].
SuperMatrix queer_eligible(Sampler& s, std::size_t n, unsigned q, long lo = -4, long hi = 4) {
  return s.matrix_with_body(Shape::queer(n), ParityClass::Any, q,
                            s.with_spectrum(s.distinct_integers(n, lo, hi)));
}

// Odd Standard(n|n) whose square has distinct nonzero body eigenvalues.
SuperMatrix odd_eligible(Sampler& s, std::size_t n, unsigned q) {
  // Distinct absolute values keep the signed eigenvalues distinct as well.
  std::vector<Rational> eig;
  for (const auto& v : s.distinct_integers(n, 1, 6)) eig.push_back(s.integer(0, 1) ? v : Rational(-v));
  const RationalMatrix z = s.invertible_rational(n);
  const RationalMatrix y = s.with_spectrum(eig) * *inverse(z);
  RationalMatrix body(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      body(i, n + j) = y(i, j);
      body(n + i, j) = z(i, j);
    }
  return s.matrix_with_body(Shape::standard(n, n), ParityClass::Odd, q, body);
}

SuperMatrix diagonal_queer(const std::vector<Grassmann>& d) {
  const std::size_t n = d.size();
  const unsigned q = d.front().generators();
  std::vector<Grassmann> e(n * n, Grassmann(q));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return SuperMatrix(Shape::queer(n), ParityClass::Any, q, std::move(e));
}

// (diag(alpha) diag(a); 1 0) in Standard(n|n).
SuperMatrix canonical_odd(const std::vector<Grassmann>& a, const std::vector<Grassmann>& alpha) {
  const std::size_t n = a.size();
  const unsigned q = a.front().generators();
  const std::size_t d = 2 * n;
  std::vector<Grassmann> e(d * d, Grassmann(q));
  for (std::size_t i = 0; i < n; ++i) {
    e[i * d + i] = alpha[i];
    e[i * d + n + i] = a[i];
    e[(n + i) * d + i] = Grassmann(q, 1);
  }
  return SuperMatrix(Shape::standard(n, n), ParityClass::Odd, q, std::move(e));
}

Outcome compare(const Grassmann& got, const Grassmann& want, const std::string& what) {
  if (got == want) return std::nullopt;
  return what + ": got " + to_string(got) + ", expected " + to_string(want);
}

Outcome compare(const std::vector<Grassmann>& got, const std::vector<Grassmann>& want,
                const std::string& what) {
  if (got == want) return std::nullopt;
  return what + ": got " + show(got) + ", expected " + show(want);
}

// ---------------------------------------------------------------- kernel

Suite grassmann_suite() {
  const SampleOptions rich{3, 6, 0};
  Suite s{"grassmann-kernel", "Grassmann algebra arithmetic on random samples, q <= 8", {}};
  s.claims.push_back({"supercommutativity", "xy = (-1)^{p(x)p(y)} yx on homogeneous elements", true,
                      [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const bool px = g.integer(0, 1), py = g.integer(0, 1);
                        const Grassmann x = homogeneous(g, q, px), y = homogeneous(g, q, py);
                        Grassmann yx = y * x;
                        if (px && py) yx = -yx;
                        return compare(x * y, yx, "x = " + to_string(x) + ", y = " + to_string(y));
                      }});
  s.claims.push_back({"associativity", "(xy)z = x(yz)", true, [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const Grassmann x = g.scalar(q, true, true), y = g.scalar(q, true, true),
                                        z = g.scalar(q, true, true);
                        return compare((x * y) * z, x * (y * z), "x = " + to_string(x));
                      }});
  s.claims.push_back({"distributivity", "x(y+z) = xy + xz and (y+z)x = yx + zx", true,
                      [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const Grassmann x = g.scalar(q, true, true), y = g.scalar(q, true, true),
                                        z = g.scalar(q, true, true);
                        if (auto o = compare(x * (y + z), x * y + x * z, "left")) return o;
                        return compare((y + z) * x, y * x + z * x, "right");
                      }});
  s.claims.push_back({"body-homomorphism", "body(x+y) and body(xy) split", true,
                      [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const Grassmann x = g.scalar(q, true, true), y = g.scalar(q, true, true);
                        if ((x + y).body() != x.body() + y.body() || (x * y).body() != x.body() * y.body()) {
                          return "x = " + to_string(x) + ", y = " + to_string(y);
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"invert-multiply-back", "x inv(x) = inv(x) x = 1", true,
                      [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const Grassmann x = Grassmann(q, g.nonzero_rational()) + g.scalar(q, true, true, false);
                        const Grassmann inv = x.inverse();
                        const Grassmann one(q, 1);
                        if (auto o = compare(x * inv, one, "x = " + to_string(x))) return o;
                        return compare(inv * x, one, "x = " + to_string(x));
                      }});
  s.claims.push_back({"soul-nilpotency", "x^{q+1} = 0 when body(x) = 0", true,
                      [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const Grassmann x = g.scalar(q, true, true, false);
                        return compare(x.pow(q + 1), Grassmann(q), "x = " + to_string(x));
                      }});
  s.claims.push_back({"parity-split", "even + odd = x with homogeneous parts", true,
                      [rich](Sampler& r) -> Outcome {
                        Sampler g = child(r, rich);
                        const unsigned q = pick_q(g, 1, 8);
                        const Grassmann x = g.scalar(q, true, true);
                        auto [e, o] = x.parity_split();
                        if (!e.is_even() || !o.is_odd() || !(e + o == x)) return "x = " + to_string(x);
                        // The square of an odd element is even with zero body.
                        const Grassmann sq = o * o;
                        if (!sq.is_even() || sgn(sq.body()) != 0) return "odd square of " + to_string(o);
                        return std::nullopt;
                      }});
  return s;
}

// ------------------------------------------------------------- invariance

Suite invariance_suite() {
  Suite s{"invariance", "qtr, qet, tau and str under random conjugation", {}};
  s.claims.push_back({"qtr-conjugation", "qtr(G^-1 A G) = qtr(A) on Q(n), n <= 3", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 6);
                        const SuperMatrix a = g.matrix(Shape::queer(n), ParityClass::Any, q);
                        const GroupElement h = g.group_element(Shape::queer(n), q);
                        return compare(qtr(conjugate(a, h)), qtr(a), "A = " + dump(a));
                      }});
  s.claims.push_back({"qet-conjugation", "qet(G^-1 A G) = qet(A) on Q(n), n <= 3", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 6);
                        const SuperMatrix a = g.matrix_with_body(Shape::queer(n), ParityClass::Any, q,
                                                                 g.invertible_rational(n));
                        const GroupElement h = g.group_element(Shape::queer(n), q);
                        return compare(qet(conjugate(a, h)), qet(a), "A = " + dump(a));
                      }});
  s.claims.push_back({"tau-queer-conjugation", "tau_1..tau_2n unchanged on Q(n), n <= 3", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 6);
                        const SuperMatrix a = g.matrix(Shape::queer(n), ParityClass::Any, q);
                        const GroupElement h = g.group_element(Shape::queer(n), q);
                        return compare(taus(conjugate(a, h), 2 * n), taus(a, 2 * n), "A = " + dump(a));
                      }});
  s.claims.push_back({"tau-odd-conjugation", "tau_1..tau_2n unchanged on odd Mat(n|n), n <= 2", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 2);
                        const unsigned q = pick_q(g, 1, 6);
                        const Shape sh = Shape::standard(n, n);
                        const SuperMatrix a = g.matrix(sh, ParityClass::Odd, q);
                        const GroupElement h = g.group_element(sh, q);
                        return compare(taus(conjugate(a, h), 2 * n), taus(a, 2 * n), "A = " + dump(a));
                      }});
  s.claims.push_back({"supertrace-conjugation", "str(G^-1 A G) = str(A) on Mat(p|q)", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const Shape sh = Shape::standard(g.integer(0, 2), g.integer(1, 2));
                        const unsigned q = pick_q(g, 1, 5);
                        const ParityClass p = g.integer(0, 1) ? ParityClass::Odd : ParityClass::Even;
                        const SuperMatrix a = g.matrix(sh, p, q);
                        const GroupElement h = g.group_element(sh, q);
                        return compare(supertrace(conjugate(a, h)), supertrace(a), "A = " + dump(a));
                      }});
  s.claims.push_back({"supertrace-supercommutator", "str(AB - (-1)^{p(A)p(B)} BA) = 0", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const Shape sh = Shape::standard(g.integer(0, 2), g.integer(1, 2));
                        const unsigned q = pick_q(g, 1, 5);
                        const bool pa = g.integer(0, 1), pb = g.integer(0, 1);
                        const SuperMatrix a = g.matrix(sh, pa ? ParityClass::Odd : ParityClass::Even, q);
                        const SuperMatrix b = g.matrix(sh, pb ? ParityClass::Odd : ParityClass::Even, q);
                        const SuperMatrix ba = b * a;
                        const SuperMatrix c = (pa && pb) ? a * b + ba : a * b - ba;
                        return compare(supertrace(c), Grassmann(q), "A = " + dump(a) + ", B = " + dump(b));
                      }});
  s.claims.push_back({"odd-even-powers", "str(A^{2k}) = 0 for odd A, k <= 2", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 2);
                        const unsigned q = pick_q(g, 1, 5);
                        const SuperMatrix a = g.matrix(Shape::standard(n, n), ParityClass::Odd, q);
                        for (unsigned k = 1; k <= 2; ++k) {
                          if (!supertrace(mat_pow(a, 2 * k)).is_zero()) return "A = " + dump(a);
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"qtr-linear-odd", "qtr(xA + B) = x qtr(A) + qtr(B) for rational x; odd value", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 6);
                        const SuperMatrix a = g.matrix(Shape::queer(n), ParityClass::Any, q);
                        const SuperMatrix b = g.matrix(Shape::queer(n), ParityClass::Any, q);
                        const Rational x = g.rational();
                        const Grassmann v = qtr(Grassmann(q, x) * a + b);
                        if (!v.is_odd() && !v.is_zero()) return "qtr not odd: " + to_string(v);
                        if (!qet(SuperMatrix::identity(Shape::queer(n), q)).is_zero()) return "qet(1) != 0";
                        return compare(v, qtr(a) * x + qtr(b), "A = " + dump(a));
                      }});
  s.claims.push_back({"qet-diagonal", "qet(diag(a_i + alpha_i)) = sum alpha_i / a_i; n = 2 moment form", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 6);
                        std::vector<Grassmann> a, al, d;
                        Grassmann want(q);
                        for (std::size_t i = 0; i < n; ++i) {
                          a.push_back(Grassmann(q, g.nonzero_rational()) + g.soul(q, false));
                          al.push_back(g.soul(q, true));
                          d.push_back(a.back() + al.back());
                          want += al.back() * a.back().inverse();
                        }
                        const SuperMatrix m = diagonal_queer(d);
                        if (auto o = compare(qet(m), want, "A = " + dump(m))) return o;
                        if (n == 2) {
                          const auto t = taus(m, 2);
                          const Grassmann alt = (t[0] * (a[0] + a[1]) - t[1]) * (a[0] * a[1]).inverse();
                          return compare(alt, want, "moment form, A = " + dump(m));
                        }
                        return std::nullopt;
                      }});
  return s;
}


// ------------------------------------------------------- canonical forms

// Eigenvalues from a small range, repeats allowed, sorted; when two agree a
// Jordan link is added with probability one half.
RationalMatrix splitting_body(Sampler& g, std::size_t n) {
  std::vector<Rational> eig;
  for (std::size_t i = 0; i < n; ++i) eig.emplace_back(g.integer(-2, 2));
  std::sort(eig.begin(), eig.end());
  RationalMatrix j = RationalMatrix::diagonal(eig);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (eig[i] == eig[i + 1] && g.integer(0, 1)) j(i, i + 1) = 1;
  const RationalMatrix p = g.invertible_rational(n);
  return p * j * *inverse(p);
}

SuperMatrix even_standard(Sampler& g, std::size_t p, std::size_t q_odd, unsigned q, bool distinct) {
  RationalMatrix body(p + q_odd, p + q_odd);
  RationalMatrix x, t;
  if (distinct) {
    auto eig = g.distinct_integers(p + q_odd, -4, 4);
    x = g.with_spectrum({eig.begin(), eig.begin() + p});
    t = g.with_spectrum({eig.begin() + p, eig.end()});
  } else {
    x = splitting_body(g, p);
    t = splitting_body(g, q_odd);
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) body(i, j) = x(i, j);
  for (std::size_t i = 0; i < q_odd; ++i)
    for (std::size_t j = 0; j < q_odd; ++j) body(p + i, p + j) = t(i, j);
  return g.matrix_with_body(Shape::standard(p, q_odd), ParityClass::Even, q, body);
}

bool nilpotent(const RationalMatrix& m) { return matrix_power(m, static_cast<unsigned>(m.rows())).is_zero(); }

// Plug-back, partition cover, block spectra and the per-iteration filtration.
Outcome check_decomposition(const SuperMatrix& a, const SpectralDecomposition& d, bool odd_input) {
  if (!(conjugate(a, d.conjugator) == d.assemble())) return "plug-back fails for A = " + dump(a);
  std::vector<int> hits(a.dim(), 0);
  for (const auto& set : d.partition)
    for (std::size_t i : set) ++hits.at(i);
  if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) return "partition does not cover";
  for (std::size_t k = 0; k + 1 < d.blocks.size(); ++k) {
    if (!(d.blocks[k].eigenvalue < d.blocks[k + 1].eigenvalue)) return "blocks not sorted by eigenvalue";
  }
  for (const auto& b : d.blocks) {
    RationalMatrix body = odd_input ? (b.block * b.block).body() : b.block.body();
    const RationalMatrix shifted = body - b.eigenvalue * RationalMatrix::identity(body.rows());
    if (!nilpotent(shifted)) return "block body minus " + to_string(b.eigenvalue) + " is not nilpotent";
  }
  for (std::size_t i = 0; i < d.filtration.size(); ++i) {
    if (d.filtration[i] < i + 2) {
      return "off-diagonal degree " + std::to_string(d.filtration[i]) + " after iteration " +
             std::to_string(i + 1) + ", A = " + dump(a);
    }
  }
  return std::nullopt;
}

Suite block_suite() {
  Suite s{"block-diagonalization", "block diagonalization, diagonalization and odd reduction", {}};
  s.claims.push_back({"sylvester-plug-back", "B X - X D = R for disjoint spectra", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t k = g.integer(1, 3), l = g.integer(1, 3);
                        auto eig = g.distinct_integers(k + l, -5, 5);
                        const RationalMatrix b = g.with_spectrum({eig.begin(), eig.begin() + k});
                        const RationalMatrix d = g.with_spectrum({eig.begin() + k, eig.end()});
                        const RationalMatrix rhs = g.rational_matrix(k, l);
                        const RationalMatrix x = solve_sylvester(b, d, rhs);
                        if (!(b * x - x * d == rhs)) return std::string("residual nonzero");
                        return std::nullopt;
                      }});
  s.claims.push_back({"block-diagonalize-queer", "Q(n), n <= 3, repeated eigenvalues allowed", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 5);
                        const SuperMatrix a =
                            g.matrix_with_body(Shape::queer(n), ParityClass::Any, q, splitting_body(g, n));
                        return check_decomposition(a, block_diagonalize(a), false);
                      }});
  s.claims.push_back({"block-diagonalize-even", "even Mat(p|q), p + q <= 3", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t p = g.integer(0, 2);
                        const std::size_t qo = g.integer(p == 0 ? 1 : 0, 3 - p);
                        const unsigned q = pick_q(g, 1, 5);
                        const SuperMatrix a = even_standard(g, p, qo, q, false);
                        return check_decomposition(a, block_diagonalize(a), false);
                      }});
  s.claims.push_back({"diagonalize-queer", "Q(n), n <= 3, distinct eigenvalues: 1 x 1 blocks", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 5);
                        const SuperMatrix a = queer_eligible(g, n, q);
                        const auto d = diagonalize(a);
                        if (d.blocks.size() != n) return "not diagonal, A = " + dump(a);
                        return check_decomposition(a, d, false);
                      }});
  s.claims.push_back({"diagonalize-even", "even Mat(p|q), p + q <= 3, distinct eigenvalues", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t p = g.integer(0, 2);
                        const std::size_t qo = g.integer(p == 0 ? 1 : 0, 3 - p);
                        const unsigned q = pick_q(g, 1, 5);
                        const SuperMatrix a = even_standard(g, p, qo, q, true);
                        const auto d = diagonalize(a);
                        if (d.blocks.size() != p + qo) return "not diagonal, A = " + dump(a);
                        return check_decomposition(a, d, false);
                      }});
  s.claims.push_back({"reduce-odd", "odd Mat(n|n), n <= 3: G^-1 A G = (R T; 1 0), R, T diagonal", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, 1, 5);
                        const SuperMatrix a = odd_eligible(g, n, q);
                        const auto d = reduce_odd(a);
                        if (auto o = check_decomposition(a, d, true)) return o;
                        const SuperMatrix c = conjugate(a, d.conjugator);
                        for (std::size_t i = 0; i < n; ++i)
                          for (std::size_t j = 0; j < n; ++j) {
                            const bool diag = i == j;
                            if (!diag && (!c(i, j).is_zero() || !c(i, n + j).is_zero())) return "R or T not diagonal";
                            if (!(c(n + i, j) == Grassmann(q, diag ? 1 : 0))) return "lower-left is not 1";
                            if (!c(n + i, n + j).is_zero()) return "lower-right is not 0";
                          }
                        return std::nullopt;
                      }});
  s.claims.push_back({"block-uniqueness", "random eigenspace bases give blocks with equal tau and body polynomials",
                      true, [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(2, 3);
                        const unsigned q = pick_q(g, 1, 4);
                        const SuperMatrix a =
                            g.matrix_with_body(Shape::queer(n), ParityClass::Any, q, splitting_body(g, n));
                        const auto d1 = block_diagonalize(a, {g.next_seed()});
                        const auto d2 = block_diagonalize(a, {g.next_seed()});
                        if (auto o = check_decomposition(a, d1, false)) return o;
                        if (auto o = check_decomposition(a, d2, false)) return o;
                        if (d1.blocks.size() != d2.blocks.size()) return "block counts differ";
                        for (std::size_t k = 0; k < d1.blocks.size(); ++k) {
                          const auto& b1 = d1.blocks[k].block;
                          const auto& b2 = d2.blocks[k].block;
                          if (characteristic_polynomial(b1.body()) != characteristic_polynomial(b2.body())) {
                            return "body polynomials differ, A = " + dump(a);
                          }
                          const unsigned count = 2 * static_cast<unsigned>(b1.dim());
                          if (auto o = compare(taus(b1, count), taus(b2, count), "block tau, A = " + dump(a))) return o;
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"odd-1x1-identity", "(x1 2; 3 x2) conjugated by (1 -x2; 0 3) is (x1+x2, 6-x1x2; 1, 0)",
                      false, [](Sampler&) -> Outcome {
                        const unsigned q = 2;
                        const Grassmann x1 = Grassmann::generator(q, 1), x2 = Grassmann::generator(q, 2);
                        const Shape sh = Shape::standard(1, 1);
                        const SuperMatrix a(sh, ParityClass::Odd, q, {x1, Grassmann(q, 2), Grassmann(q, 3), x2});
                        const GroupElement h(
                            SuperMatrix(sh, ParityClass::Even, q, {Grassmann(q, 1), -x2, Grassmann(q), Grassmann(q, 3)}));
                        const SuperMatrix want(sh, ParityClass::Odd, q,
                                               {x1 + x2, Grassmann(q, 6) - x1 * x2, Grassmann(q, 1), Grassmann(q)});
                        if (!(conjugate(a, h) == want)) return "displayed conjugation fails";
                        const auto d = reduce_odd(a);
                        if (!(d.assemble() == want)) return "reduce_odd gives " + dump(d.assemble());
                        return std::nullopt;
                      }});
  return s;
}

// ------------------------------------------------------------ Vandermonde

Suite vandermonde_suite() {
  Suite s{"vandermonde-adjoint", "M' M = diag(prod_{i != k}(a_k - a_i))", {}};
  s.claims.push_back({"symbolic", "exact symbolic identity for n <= 4", false, [](Sampler&) -> Outcome {
                        for (std::size_t n = 1; n <= 4; ++n) {
                          const auto vp = vandermonde_adjoint(n);
                          const auto prod = poly_matmul(vp.adjoint, vp.m);
                          for (std::size_t k = 0; k < n; ++k)
                            for (std::size_t l = 0; l < n; ++l) {
                              SuperPolynomial want(n, 0, 1);
                              for (std::size_t i = 0; i < n; ++i) {
                                if (i == k) continue;
                                want = want * (SuperPolynomial::even_symbol(n, 0, l + 1) -
                                               SuperPolynomial::even_symbol(n, 0, i + 1));
                              }
                              if (!(prod[k][l] == want)) {
                                return "n = " + std::to_string(n) + ", entry (" + std::to_string(k + 1) + "," +
                                       std::to_string(l + 1) + ")";
                              }
                            }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"numeric", "numeric identity at random rational points, n <= 4", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 4);
                        std::vector<Rational> a;
                        for (std::size_t i = 0; i < n; ++i) a.push_back(g.rational());
                        const auto vp = vandermonde_adjoint(n);
                        auto eval = [&](const SuperPolynomial& p) {
                          return substitute<Rational>(p, a, {}, Rational(1));
                        };
                        for (std::size_t k = 0; k < n; ++k)
                          for (std::size_t l = 0; l < n; ++l) {
                            Rational got = 0;
                            for (std::size_t j = 0; j < n; ++j) got += eval(vp.adjoint[k][j]) * eval(vp.m[j][l]);
                            Rational want = 1;
                            for (std::size_t i = 0; i < n; ++i)
                              if (i != k) want *= a[l] - a[i];
                            if (got != want) return "entry (" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
                          }
                        return std::nullopt;
                      }});
  return s;
}

// -------------------------------------------------------- symmetric rewrite

// Random expression in u_1..u_n, xi_1..xi_n of weighted degree <= max_degree.
TTauExpression random_ttau(Sampler& g, std::size_t n, unsigned max_degree, unsigned terms) {
  TTauExpression h(n, n);
  for (unsigned t = 0; t < terms; ++t) {
    SuperPolynomial::Monomial m{std::vector<unsigned>(n, 0), 0};
    unsigned budget = static_cast<unsigned>(g.integer(0, max_degree));
    for (std::size_t i = n; i >= 1; --i) {
      if (g.integer(0, 1) && i <= budget) {
        m.odd |= Mask{1} << (i - 1);
        budget -= static_cast<unsigned>(i);
      }
      const unsigned e = static_cast<unsigned>(g.integer(0, budget / i));
      m.even[i - 1] = e;
      budget -= e * static_cast<unsigned>(i);
    }
    h.add_term(std::move(m), g.nonzero_rational());
  }
  return h;
}

// Symmetrization of a random polynomial under simultaneous permutation.
SuperPolynomial random_symmetric(Sampler& g, std::size_t n, unsigned max_degree) {
  SuperPolynomial seed(n, n);
  const unsigned terms = static_cast<unsigned>(g.integer(1, 3));
  for (unsigned t = 0; t < terms; ++t) {
    SuperPolynomial::Monomial m{std::vector<unsigned>(n, 0), 0};
    unsigned budget = static_cast<unsigned>(g.integer(0, max_degree));
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      if (g.integer(0, 2) == 0) {
        m.odd |= Mask{1} << i;
        --budget;
      }
      const unsigned e = static_cast<unsigned>(g.integer(0, budget));
      m.even[i] = e;
      budget -= e;
    }
    seed.add_term(std::move(m), g.nonzero_rational());
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  SuperPolynomial f(n, n);
  do {
    f += seed.permuted(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return f;
}

Suite rewrite_suite() {
  Suite s{"symmetric-rewrite", "rewriting symmetric polynomials in power sums t_k and tau_k", {}};
  s.claims.push_back({"worked-examples", "sum alpha_i, alpha_1 a_2 + alpha_2 a_1 and a_1 a_2", false,
                      [](Sampler&) -> Outcome {
                        auto a = [](std::size_t n, std::size_t i) { return SuperPolynomial::even_symbol(n, n, i); };
                        auto al = [](std::size_t n, std::size_t i) { return SuperPolynomial::odd_symbol(n, n, i); };
                        for (std::size_t n = 1; n <= 3; ++n) {
                          SuperPolynomial f(n, n);
                          for (std::size_t i = 1; i <= n; ++i) f += al(n, i);
                          if (!(rewrite_symmetric(f) == al(n, 1))) return "sum alpha_i at n = " + std::to_string(n);
                        }
                        const SuperPolynomial f1 = al(2, 1) * a(2, 2) + al(2, 2) * a(2, 1);
                        if (!(rewrite_symmetric(f1) == a(2, 1) * al(2, 1) - al(2, 2))) {
                          return "alpha_1 a_2 + alpha_2 a_1 -> " + to_string(rewrite_symmetric(f1), "u", "xi");
                        }
                        const SuperPolynomial f2 = a(2, 1) * a(2, 2);
                        const SuperPolynomial g2 = (a(2, 1) * a(2, 1) - a(2, 2)) * Rational(1, 2);
                        if (!(rewrite_symmetric(f2) == g2)) {
                          return "a_1 a_2 -> " + to_string(rewrite_symmetric(f2), "u", "xi");
                        }
                        try {
                          rewrite_symmetric(a(2, 1));
                          return std::string("a_1 accepted as symmetric");
                        } catch (const Error& e) {
                          if (e.code() != Errc::NotSymmetric) throw;
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"round-trip-symmetrized", "symmetrized random polynomials, n <= 3, degree <= 6", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const SuperPolynomial f = random_symmetric(g, n, n == 3 ? 5 : 6);
                        const TTauExpression h = rewrite_symmetric(f);
                        if (!(expand_t_tau(h, n) == f)) return "expansion differs for f = " + to_string(f);
                        if (!(rewrite_symmetric(f, {true}) == h)) return "double solve differs for f = " + to_string(f);
                        return std::nullopt;
                      }});
  s.claims.push_back({"uniqueness", "rewriting the expansion of a random g returns g", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const TTauExpression h = random_ttau(g, n, 6, static_cast<unsigned>(g.integer(1, 4)));
                        const SuperPolynomial f = expand_t_tau(h, n);
                        const TTauExpression back = rewrite_symmetric(f);
                        if (!(back == h)) {
                          return "g = " + to_string(h, "u", "xi") + ", rewrite = " + to_string(back, "u", "xi");
                        }
                        if (!(rewrite_symmetric(f, {true}) == h)) return "double solve differs";
                        return std::nullopt;
                      }});
  s.claims.push_back({"power-sum-identity", "sum (a_i + alpha_i)^k = t_k + k tau_k, k <= 2n", false,
                      [](Sampler&) -> Outcome {
                        for (std::size_t n = 1; n <= 3; ++n) {
                          const PowerSums ps = power_sums(n, 2 * n);
                          for (unsigned k = 1; k <= 2 * n; ++k) {
                            SuperPolynomial lhs(n, n);
                            for (std::size_t i = 1; i <= n; ++i) {
                              lhs += (SuperPolynomial::even_symbol(n, n, i) + SuperPolynomial::odd_symbol(n, n, i)).pow(k);
                            }
                            if (!(lhs == ps.t[k - 1] + ps.tau[k - 1] * Rational(k))) {
                              return "n = " + std::to_string(n) + ", k = " + std::to_string(k);
                            }
                          }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"invariant-structure", "invariants reassemble from f_0, f_1 and skew f_k", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        TauNormalForm nf;
                        for (const auto& t : increasing_tuples(2 * static_cast<unsigned>(n), static_cast<unsigned>(n))) {
                          if (g.integer(0, 2) == 0) nf[t] = g.nonzero_rational();
                        }
                        nf[{}] = g.rational();
                        const SuperPolynomial f = expand_normal_form(nf, n);
                        const auto d = invariant_decomposition(f);
                        if (!(reassemble(d, n) == f)) return "reassembly fails for f = " + to_string(f);
                        for (std::size_t k = 2; k <= d.components.size(); ++k) {
                          if (!is_skew_symmetric(d.components[k - 1])) return "f_" + std::to_string(k) + " not skew";
                        }
                        return std::nullopt;
                      }});
  return s;
}

// ----------------------------------------------------------- tau relations

Suite tau_suite() {
  Suite s{"tau-relations", "vanishing products, independence and normal form of tau monomials", {}};
  s.claims.push_back({"product-vanishing", "every tau product of length n+1, indices <= 2n+1, n <= 3, is zero",
                      false, [](Sampler&) -> Outcome {
                        for (std::size_t n = 1; n <= 3; ++n) {
                          const unsigned top = 2 * static_cast<unsigned>(n) + 1;
                          std::vector<unsigned> idx(n + 1, 1);
                          // Non-decreasing tuples: repeated indices are covered too.
                          while (true) {
                            if (!tau_product(idx, n).is_zero()) {
                              std::string t;
                              for (unsigned i : idx) t += " " + std::to_string(i);
                              return "n = " + std::to_string(n) + ", indices" + t;
                            }
                            std::size_t p = n + 1;
                            while (p > 0 && idx[p - 1] == top) --p;
                            if (p == 0) break;
                            ++idx[p - 1];
                            for (std::size_t k = p; k <= n; ++k) idx[k] = idx[p - 1];
                          }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"linear-independence", "rank of tau monomials of length <= n, indices <= 2n, equals their count",
                      false, [](Sampler&) -> Outcome {
                        for (std::size_t n = 1; n <= 3; ++n) {
                          const auto tuples = increasing_tuples(2 * static_cast<unsigned>(n), static_cast<unsigned>(n));
                          const std::size_t rk = expansion_rank(tuples, n);
                          if (rk != tuples.size()) {
                            return "n = " + std::to_string(n) + ": rank " + std::to_string(rk) + " of " +
                                   std::to_string(tuples.size());
                          }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"span-dimension-growth", "span of tau_1..tau_2n products has dimension growing with n",
                      false, [](Sampler&) -> Outcome {
                        std::size_t previous = 0;
                        for (std::size_t n = 1; n <= 3; ++n) {
                          const auto tuples = increasing_tuples(2 * static_cast<unsigned>(n), static_cast<unsigned>(n));
                          const std::size_t rk = expansion_rank(tuples, n);
                          if (rk != tuples.size() || rk <= previous) {
                            return "n = " + std::to_string(n) + ": dimension " + std::to_string(rk);
                          }
                          previous = rk;
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"normal-form-round-trip", "random tau combinations re-normalize to their coefficients", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        TauNormalForm nf;
                        for (const auto& t : increasing_tuples(2 * static_cast<unsigned>(n), static_cast<unsigned>(n))) {
                          if (g.integer(0, 2) == 0) nf[t] = g.nonzero_rational();
                        }
                        if (g.integer(0, 1)) nf[{}] = g.nonzero_rational();
                        const auto back = invariant_normal_form(expand_normal_form(nf, n));
                        if (back != nf) return "n = " + std::to_string(n) + ": coefficients differ";
                        return std::nullopt;
                      }});
  s.claims.push_back({"normal-form-examples", "tau_1 tau_2 and tau_1 tau_2 tau_3 at n = 2", false,
                      [](Sampler&) -> Outcome {
                        const auto nf = invariant_normal_form(tau_product({1, 2}, 2));
                        if (nf != TauNormalForm{{{1, 2}, Rational(1)}}) return std::string("tau_1 tau_2");
                        if (!tau_product({1, 2, 3}, 2).is_zero()) return std::string("tau_1 tau_2 tau_3 nonzero");
                        if (!invariant_normal_form(tau_product({1, 2, 3}, 2)).empty()) return std::string("normal form nonzero");
                        return std::nullopt;
                      }});
  return s;
}


// -------------------------------------------------------- balanced criterion

Suite balanced_suite() {
  Suite s{"balanced-criterion", "the differential criterion for balanced expressions", {}};
  s.claims.push_back({"examples", "xi_1 balanced, u_1 not, xi_1 u_1 balanced at n = 1", false,
                      [](Sampler&) -> Outcome {
                        for (std::size_t n = 1; n <= 3; ++n) {
                          if (!is_balanced(SuperPolynomial::odd_symbol(n, n, 1), n).balanced) return std::string("xi_1");
                          const auto w = is_balanced(SuperPolynomial::even_symbol(n, n, 1), n);
                          if (w.balanced || w.condition != 1) return std::string("u_1 accepted");
                          if (!(w.residual == power_sums(n, 1).tau[0])) return "u_1 residual " + to_string(w.residual);
                        }
                        const auto h = SuperPolynomial::odd_symbol(1, 1, 1) * SuperPolynomial::even_symbol(1, 1, 1);
                        if (!is_balanced(h, 1).balanced) return std::string("xi_1 u_1 at n = 1");
                        return std::nullopt;
                      }});
  s.claims.push_back({"criterion-matches-invariance", "criterion holds iff the (t, tau) pullback is invariant",
                      true, [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        TTauExpression h;
                        if (g.integer(0, 1)) {
                          TauNormalForm nf;
                          for (const auto& t : increasing_tuples(2 * static_cast<unsigned>(n), static_cast<unsigned>(n)))
                            if (g.integer(0, 3) == 0) nf[t] = g.nonzero_rational();
                          h = rewrite_symmetric(expand_normal_form(nf, n));
                          if (g.integer(0, 1)) h += random_ttau(g, n, 4, 1);
                        } else {
                          h = random_ttau(g, n, 5, static_cast<unsigned>(g.integer(1, 3)));
                        }
                        const bool lemma = is_balanced(h, n).balanced;
                        const bool direct = check_diag_invariance(expand_t_tau(h, n)).invariant;
                        if (lemma != direct) return "h = " + to_string(h, "u", "xi");
                        return std::nullopt;
                      }});
  s.claims.push_back({"corpus-balanced", "the balanced corpus passes the s-coordinate check", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        for (const auto& f : balanced_corpus(n, g.next_seed(), 2)) {
                          if (!is_balanced_s(f, n).balanced) return "unbalanced " + to_string(f.numerator, "u", "xi");
                          const SuperPolynomial num = expand_s_tau(f.numerator, n);
                          const SuperPolynomial den = expand_s_tau(f.denominator, n);
                          // Invariance of num / den: alpha_i (den dnum - num dden) = 0.
                          for (std::size_t i = 1; i <= n; ++i) {
                            const SuperPolynomial w = SuperPolynomial::odd_symbol(n, n, i) *
                                                      (den * num.derivative_even(i) - num * den.derivative_even(i));
                            if (!w.is_zero()) return "pullback not invariant: " + to_string(f.numerator, "u", "xi");
                          }
                        }
                        return std::nullopt;
                      }});
  return s;
}

// ---------------------------------------------------------- semi-invariants

std::vector<Rational> nonzero_distinct(Sampler& g, std::size_t n) {
  std::vector<Rational> eig;
  for (const auto& v : g.distinct_integers(n, 1, 5)) eig.push_back(g.integer(0, 1) ? v : Rational(-v));
  return eig;
}

// Queer or odd family member admitting compute_s with nonzero eigenvalues.
SuperMatrix eligible(Sampler& g, std::size_t n, unsigned q, bool odd) {
  if (odd) return odd_eligible(g, n, q);
  return g.matrix_with_body(Shape::queer(n), ParityClass::Any, q, g.with_spectrum(nonzero_distinct(g, n)));
}

GroupElement family_element(Sampler& g, const SuperMatrix& a) { return g.group_element(a.shape(), a.generators()); }

unsigned family_q(Sampler& g, std::size_t n) { return pick_q(g, 1, n == 3 ? 4 : 5); }

Suite semi_suite() {
  Suite s{"semi-invariants", "s_1..s_n, the recurrence and evaluation of invariants", {}};
  s.claims.push_back({"recurrence", "compute_s satisfies the recurrence against tau_1..tau_2n, n <= 3", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        const SuperMatrix a = eligible(g, n, family_q(g, n), odd);
                        const auto sv = compute_s(a);
                        if (!all_zero(s_residuals(a, sv.s))) return "residual, A = " + dump(a);
                        if (!verify_recurrence(taus(a, 2 * static_cast<unsigned>(n)), sv.s)) return "verify_recurrence";
                        const auto bodies = elementary_from_roots(body_eigenvalues(a));
                        for (std::size_t j = 0; j < n; ++j)
                          if (sv.s[j].body() != bodies[j]) return "body of s_" + std::to_string(j + 1);
                        if (!s_body_conventions(a).recurrence_matches) return std::string("sign convention");
                        return std::nullopt;
                      }});
  s.claims.push_back({"eigendata-moments", "sum alpha_i a_i^{k-1} = tau_k(A), k <= 2n", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        SuperMatrix a = eligible(g, n, family_q(g, n), odd);
                        a = conjugate(a, family_element(g, a));
                        const unsigned count = 2 * static_cast<unsigned>(n);
                        return compare(eigendata(a).moments(count), taus(a, count), "A = " + dump(a));
                      }});
  s.claims.push_back({"evaluation-conjugation", "evaluate_invariant(G^-1 A G, f) = evaluate_invariant(A, f)", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        const SuperMatrix a = eligible(g, n, family_q(g, n), odd);
                        const SuperMatrix b = conjugate(a, family_element(g, a));
                        for (const auto& f : balanced_corpus(n, g.next_seed(), 2)) {
                          if (auto o = compare(evaluate_invariant(b, f), evaluate_invariant(a, f),
                                               to_string(f.numerator, "u", "xi") + " on A = " + dump(a))) {
                            return o;
                          }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"closed-form-dual-route", "closed-form s on Q(2) is admissible and evaluates identically", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const SuperMatrix a = eligible(g, 2, pick_q(g, 1, 6), false);
                        const auto cf = q2_closed_form(a);
                        const auto sp = compute_s(a);
                        if (!all_zero(s_residuals(a, cf.s))) return "closed form violates the recurrence, A = " + dump(a);
                        for (std::size_t j = 0; j < 2; ++j)
                          if (cf.s[j].body() != sp.s[j].body()) return "bodies differ, A = " + dump(a);
                        for (const auto& f : balanced_corpus(2, g.next_seed(), 3)) {
                          if (auto o = compare(evaluate_invariant(a, f, cf.s), evaluate_invariant(a, f),
                                               to_string(f.numerator, "u", "xi") + " on A = " + dump(a))) {
                            return o;
                          }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"closed-form-examples", "beta = 0 gives s_1 = b11 + b22; diag(1, 2) + diag(x1, x2)", false,
                      [](Sampler&) -> Outcome {
                        const unsigned q = 2;
                        const Shape sh = Shape::queer(2);
                        RationalMatrix bm(2, 2, {Rational(1), Rational(3), Rational(2), Rational(-1)});
                        const SuperMatrix b = SuperMatrix::from_rational(sh, ParityClass::Any, q, bm);
                        if (!(q2_s1(b, SuperMatrix(sh, ParityClass::Any, q)) == Grassmann(q, 0))) {
                          return std::string("s_1 with beta = 0");
                        }
                        const SuperMatrix d = SuperMatrix::from_rational(sh, ParityClass::Any, q,
                                                                         RationalMatrix::diagonal({1, 2}));
                        const SuperMatrix beta(sh, ParityClass::Any, q,
                                               {Grassmann::generator(q, 1), Grassmann(q), Grassmann(q),
                                                Grassmann::generator(q, 2)});
                        const auto cf = q2_closed_form(d, beta);
                        if (!all_zero(s_residuals(d + beta, cf.s))) return std::string("diagonal example");
                        if (!(cf.s[0] == Grassmann(q, 3)) || !(cf.s[1] == Grassmann(q, -2))) {
                          return "diagonal example gives " + show(cf.s);
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"inverse-moment-is-qet", "(xi_n - sum xi_{n-j} u_j) / u_n evaluates to qet(A) on Q(n)", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const SuperMatrix a = eligible(g, n, family_q(g, n), false);
                        return compare(evaluate_invariant(a, inverse_moment_expression(n)), qet(a), "A = " + dump(a));
                      }});
  s.claims.push_back({"qet-two-example", "(xi_2 - u_1 xi_1) / u_2 on diag(1 + x1, 2 + x2) is x1 + x2/2", false,
                      [](Sampler&) -> Outcome {
                        const unsigned q = 2;
                        const Grassmann x1 = Grassmann::generator(q, 1), x2 = Grassmann::generator(q, 2);
                        const SuperMatrix a = diagonal_queer({Grassmann(q, 1) + x1, Grassmann(q, 2) + x2});
                        const Grassmann want = x1 + x2 * Rational(1, 2);
                        if (auto o = compare(qet(a), want, "qet")) return o;
                        if (auto o = compare(evaluate_invariant(a, inverse_moment_expression(2)), want, "evaluation")) return o;
                        return compare(compute_s(a).s, {Grassmann(q, 3), Grassmann(q, -2)}, "s");
                      }});
  s.claims.push_back({"admissible-s-independence", "another admissible s gives the same values over the corpus",
                      true, [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        const unsigned q = std::max(2u, family_q(g, n));
                        const SuperMatrix a = eligible(g, n, q, odd);
                        const auto tau = taus(a, static_cast<unsigned>(n));
                        // Any multiple of tau_1..tau_n is annihilated by every further tau.
                        Grassmann w(q, 1);
                        for (const auto& t : tau) w = w * t;
                        if (n % 2) w = Grassmann::generator(q, static_cast<unsigned>(g.integer(1, q))) * w;
                        std::vector<Grassmann> s2 = compute_s(a).s;
                        for (auto& x : s2) x += w * g.rational() + w * g.soul(q, false);
                        for (const auto& f : balanced_corpus(n, g.next_seed(), 2)) {
                          if (auto o = compare(evaluate_invariant(a, f, s2), evaluate_invariant(a, f),
                                               to_string(f.numerator, "u", "xi") + " on A = " + dump(a))) {
                            return o;
                          }
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"product-vanishing-matrices", "tau_{i_1}(A)..tau_{i_{n+1}}(A) = 0", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = pick_q(g, n + 1, 6);
                        const SuperMatrix a = g.integer(0, 1)
                                                  ? g.matrix(Shape::standard(n, n), ParityClass::Odd, q)
                                                  : g.matrix(Shape::queer(n), ParityClass::Any, q);
                        const auto t = taus(a, 2 * static_cast<unsigned>(n) + 1);
                        Grassmann prod(q, 1);
                        for (std::size_t k = 0; k <= n; ++k) prod = prod * t[g.integer(0, 2 * static_cast<long>(n))];
                        return compare(prod, Grassmann(q), "A = " + dump(a));
                      }});
  return s;
}

// ----------------------------------------------------- indistinguishability

struct DiagonalData {
  std::vector<Grassmann> a, alpha;
};

// a_i = lambda_i + soul, alpha_i = xi_{g_i} e_i with e_i even, and a second
// tuple a_i + xi_{g_i} o_i; alpha_i annihilates the shift.
std::pair<DiagonalData, DiagonalData> matching_data(Sampler& g, std::size_t n, unsigned q) {
  DiagonalData d1, d2;
  const auto eig = nonzero_distinct(g, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Grassmann xg = Grassmann::generator(q, static_cast<unsigned>(g.integer(1, q)));
    const Grassmann a = Grassmann(q, eig[i]) + g.soul(q, false);
    d1.a.push_back(a);
    d1.alpha.push_back(xg * g.even_scalar(q));
    d2.a.push_back(a + xg * g.odd_scalar(q));
    d2.alpha.push_back(d1.alpha.back());
  }
  return {d1, d2};
}

SuperMatrix from_data(const DiagonalData& d, bool odd) {
  if (odd) return canonical_odd(d.a, d.alpha);
  std::vector<Grassmann> e;
  for (std::size_t i = 0; i < d.a.size(); ++i) e.push_back(d.a[i] + d.alpha[i]);
  return diagonal_queer(e);
}

Outcome same_over_corpus(const SuperMatrix& a1, const SuperMatrix& a2, std::size_t n, std::uint64_t seed) {
  for (const auto& f : balanced_corpus(n, seed, 2)) {
    if (auto o = compare(evaluate_invariant(a2, f), evaluate_invariant(a1, f),
                         to_string(f.numerator, "u", "xi") + " on A1 = " + dump(a1))) {
      return o;
    }
  }
  return std::nullopt;
}

Suite indistinguishability_suite() {
  Suite s{"indistinguishability", "matrices with equal tau_1..tau_2n and body spectrum", {}};
  s.claims.push_back({"matching-pairs", "constructed pairs agree on every corpus invariant", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        const unsigned q = std::max(2u, family_q(g, n));
                        auto [d1, d2] = matching_data(g, n, q);
                        SuperMatrix a1 = from_data(d1, odd), a2 = from_data(d2, odd);
                        a1 = conjugate(a1, family_element(g, a1));
                        a2 = conjugate(a2, family_element(g, a2));
                        if (!indistinguishable(a1, a2)) return "pair not recognised, A1 = " + dump(a1);
                        return same_over_corpus(a1, a2, n, g.next_seed());
                      }});
  s.claims.push_back({"odd-rank-one", "odd 1|1 matrices with equal str A and str A^3", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const unsigned q = pick_q(g, 2, 5);
                        auto [d1, d2] = matching_data(g, 1, q);
                        SuperMatrix a1 = from_data(d1, true), a2 = from_data(d2, true);
                        a1 = conjugate(a1, family_element(g, a1));
                        a2 = conjugate(a2, family_element(g, a2));
                        if (!(supertrace(a1) == supertrace(a2)) || !(supertrace(mat_pow(a1, 3)) == supertrace(mat_pow(a2, 3)))) {
                          return "construction broke str equality";
                        }
                        if (!indistinguishable(a1, a2)) return "pair not recognised, A1 = " + dump(a1);
                        return same_over_corpus(a1, a2, 1, g.next_seed());
                      }});
  s.claims.push_back({"mismatching-pairs", "a changed alpha or body spectrum is detected", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        const unsigned q = std::max(2u, family_q(g, n));
                        auto [d1, d2] = matching_data(g, n, q);
                        const bool shift_body = g.integer(0, 1);
                        const std::size_t i = g.integer(0, static_cast<long>(n) - 1);
                        if (shift_body) {
                          // Past every |body| so the spectrum stays simple and nonzero.
                          Rational top = 0;
                          for (const auto& x : d2.a) top = std::max<Rational>(top, abs(x.body()));
                          d2.a[i] += Grassmann(q, top + 1 - d2.a[i].body());
                        } else {
                          d2.alpha[i] += Grassmann::generator(q, static_cast<unsigned>(g.integer(1, q))) * g.nonzero_rational();
                        }
                        SuperMatrix a1 = from_data(d1, odd), a2 = from_data(d2, odd);
                        a1 = conjugate(a1, family_element(g, a1));
                        a2 = conjugate(a2, family_element(g, a2));
                        if (indistinguishable(a1, a2)) return "pair not distinguished, A1 = " + dump(a1);
                        if (!shift_body) {
                          // tau_1 itself is a balanced invariant.
                          const auto f = make_balanced(SuperPolynomial::odd_symbol(n, n, 1));
                          if (evaluate_invariant(a1, f) == evaluate_invariant(a2, f)) return std::string("tau_1 agrees");
                        }
                        return std::nullopt;
                      }});
  return s;
}

// ------------------------------------------------------- antidiagonalization

Suite antidiag_suite() {
  Suite s{"antidiagonalization", "odd matrices with block-diagonal square", {}};
  s.claims.push_back({"displayed-identities", "(0 -1; 1 0) fixed; (X Y; 1 -X) -> (0 Y + X^2; 1 0)", false,
                      [](Sampler&) -> Outcome {
                        const unsigned q = 3;
                        const Shape sh = Shape::standard(1, 1);
                        const SuperMatrix j(sh, ParityClass::Odd, q, {Grassmann(q), Grassmann(q, -1), Grassmann(q, 1), Grassmann(q)});
                        const GroupElement g0 = antidiagonalize(j);
                        if (!(g0.matrix() == SuperMatrix::identity(sh, q))) return std::string("J conjugator not identity");
                        const Grassmann x = Grassmann::generator(q, 1) + Grassmann::generator(q, 2) * Rational(2);
                        const Grassmann y = Grassmann(q, 3) + Grassmann::generator(q, 2) * Grassmann::generator(q, 3);
                        const SuperMatrix a(sh, ParityClass::Odd, q, {x, y, Grassmann(q, 1), -x});
                        const SuperMatrix want(sh, ParityClass::Odd, q, {Grassmann(q), y + x * x, Grassmann(q, 1), Grassmann(q)});
                        if (!(conjugate(a, antidiagonalize(a)) == want)) return std::string("rank one identity");
                        // Rank two: Y = c + X^2 commutes with X, so A^2 is block diagonal.
                        Sampler g(5);
                        const unsigned q2 = 4;
                        const Shape s2 = Shape::standard(2, 2);
                        const SuperMatrix big = g.soul_matrix(s2, ParityClass::Odd, q2);
                        std::vector<Grassmann> xe = {big(0, 0), big(0, 1), big(1, 0), big(1, 1)};
                        const SuperMatrix xq(Shape::queer(2), ParityClass::Any, q2, xe);
                        const SuperMatrix ym = Grassmann(q2, 2) * SuperMatrix::identity(Shape::queer(2), q2) + xq * xq;
                        std::vector<Grassmann> e(16, Grassmann(q2)), w(16, Grassmann(q2));
                        for (std::size_t r0 = 0; r0 < 2; ++r0)
                          for (std::size_t c0 = 0; c0 < 2; ++c0) {
                            e[r0 * 4 + c0] = xq(r0, c0);
                            e[r0 * 4 + 2 + c0] = ym(r0, c0);
                            e[(2 + r0) * 4 + 2 + c0] = -xq(r0, c0);
                            w[r0 * 4 + 2 + c0] = (ym + xq * xq)(r0, c0);
                          }
                        e[2 * 4 + 0] = e[3 * 4 + 1] = w[2 * 4 + 0] = w[3 * 4 + 1] = Grassmann(q2, 1);
                        const SuperMatrix a2(s2, ParityClass::Odd, q2, e);
                        const SuperMatrix want2(s2, ParityClass::Odd, q2, w);
                        if (!(conjugate(a2, antidiagonalize(a2)) == want2)) return std::string("rank two identity");
                        return std::nullopt;
                      }});
  s.claims.push_back({"random-conjugates", "conjugates of (0 B; c B^-1 0) recover (0 Y'; 1 0)", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const unsigned q = family_q(g, n);
                        const Shape sh = Shape::standard(n, n);
                        const Shape qs = Shape::queer(n);
                        const SuperMatrix b1 = g.matrix_with_body(qs, ParityClass::Any, q, g.invertible_rational(n));
                        const SuperMatrix b1e = queer_split(b1).first;
                        const Rational c = g.nonzero_rational();
                        const SuperMatrix b2 = Grassmann(q, c) * mat_invert(b1e);
                        std::vector<Grassmann> e(4 * n * n, Grassmann(q));
                        for (std::size_t i = 0; i < n; ++i)
                          for (std::size_t j = 0; j < n; ++j) {
                            e[i * 2 * n + n + j] = b1e(i, j);
                            e[(n + i) * 2 * n + j] = b2(i, j);
                          }
                        const SuperMatrix a0(sh, ParityClass::Odd, q, e);
                        SuperMatrix a;
                        for (int attempt = 0;; ++attempt) {
                          a = conjugate(a0, g.group_element(sh, q));
                          if (sgn(determinant(a.body().block(n, 0, n, n))) != 0) break;
                          if (attempt == 50) return std::nullopt;
                        }
                        const SuperMatrix red = conjugate(a, antidiagonalize(a));
                        for (std::size_t i = 0; i < n; ++i)
                          for (std::size_t j = 0; j < n; ++j) {
                            if (!red(i, j).is_zero() || !red(n + i, n + j).is_zero()) return "diagonal blocks nonzero, A = " + dump(a);
                            if (!(red(n + i, j) == Grassmann(q, i == j ? 1 : 0))) return "Z is not 1, A = " + dump(a);
                            if (!(red(i, n + j) == Grassmann(q, i == j ? c : Rational(0)))) return "Y' is not c, A = " + dump(a);
                          }
                        return std::nullopt;
                      }});
  s.claims.push_back({"preconditions", "non-block-diagonal square and singular Z are rejected", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const unsigned q = pick_q(g, 1, 4);
                        const Shape sh = Shape::standard(2, 2);
                        RationalMatrix body(4, 4);
                        body(0, 2) = 1;
                        body(0, 3) = 1;
                        body(2, 0) = 1;
                        body(3, 1) = 1;  // square has a nonzero off-diagonal body block
                        const SuperMatrix a = g.matrix_with_body(sh, ParityClass::Odd, q, body);
                        try {
                          antidiagonalize(a);
                          return "accepted, A = " + dump(a);
                        } catch (const Error& e) {
                          if (e.code() != Errc::NotBlockDiagonalSquare) return std::string(e.what());
                        }
                        const Shape s1 = Shape::standard(1, 1);
                        const SuperMatrix z0(s1, ParityClass::Odd, q, {Grassmann(q), Grassmann(q, 1), Grassmann(q), Grassmann(q)});
                        try {
                          antidiagonalize(z0);
                          return std::string("singular Z accepted");
                        } catch (const Error& e) {
                          if (e.code() != Errc::SingularZ) return std::string(e.what());
                        }
                        return std::nullopt;
                      }});
  return s;
}

// ------------------------------------------------------------ L(n) locus

Suite l_suite() {
  Suite s{"l-invariants", "s_1..s_n on the locus tau_1 = .. = tau_n = 0", {}};
  s.claims.push_back({"conjugation", "l-values fixed under conjugation, n <= 3", true, [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const bool odd = g.integer(0, 1);
                        const unsigned q = family_q(g, n);
                        std::vector<Grassmann> a, zero(n, Grassmann(q));
                        for (const auto& v : nonzero_distinct(g, n)) a.push_back(Grassmann(q, v) + g.soul(q, false));
                        const SuperMatrix d = odd ? canonical_odd(a, zero) : diagonal_queer(a);
                        const auto want = elementary_from_roots(a);
                        if (auto o = compare(l_invariants(d), want, "diagonal")) return o;
                        const SuperMatrix c = conjugate(d, family_element(g, d));
                        return compare(l_invariants(c), want, "A = " + dump(c));
                      }});
  s.claims.push_back({"membership", "NotInL reports the first nonzero tau", false, [](Sampler&) -> Outcome {
                        const unsigned q = 2;
                        const Grassmann x1 = Grassmann::generator(q, 1);
                        auto index_of = [](const SuperMatrix& m) -> int {
                          try {
                            l_invariants(m);
                          } catch (const NotInLError& e) {
                            return e.index();
                          }
                          return 0;
                        };
                        if (index_of(diagonal_queer({Grassmann(q, 1) + x1, Grassmann(q, 2)})) != 1) return std::string("tau_1");
                        if (index_of(diagonal_queer({Grassmann(q, 1) + x1, Grassmann(q, 2) - x1})) != 2) return std::string("tau_2");
                        const auto l = l_invariants(diagonal_queer({Grassmann(q, 1), Grassmann(q, 2)}));
                        return compare(l, {Grassmann(q, 3), Grassmann(q, -2)}, "diag(1, 2)");
                      }});
  return s;
}

// ------------------------------------------------------ generating functions

Suite generating_suite() {
  Suite s{"generating-functions", "Laurent coefficients of qet(lambda - A) and -str(lambda - A)^-1", {}};
  s.claims.push_back({"queer", "coefficient of lambda^-j is -tau_j, against a series oracle", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const SuperMatrix a = eligible(g, n, family_q(g, n), false);
                        const unsigned count = 2 * static_cast<unsigned>(n) + 1;
                        const auto got = qet_generating_coefficients(a, count);
                        if (auto o = compare(got, qet_series_coefficients(a, count), "oracle, A = " + dump(a))) return o;
                        std::vector<Grassmann> want;
                        for (const auto& t : taus(a, count)) want.push_back(-t);
                        return compare(got, want, "-tau, A = " + dump(a));
                      }});
  s.claims.push_back({"odd", "odd powers of lambda^-1 vanish; lambda^-2k carries -(2k-1) tau_k", true,
                      [](Sampler& r) -> Outcome {
                        Sampler g = child(r);
                        const std::size_t n = g.integer(1, 3);
                        const SuperMatrix a = eligible(g, n, family_q(g, n), true);
                        const unsigned count = 4 * static_cast<unsigned>(n);
                        const auto got = qet_generating_coefficients(a, count);
                        if (auto o = compare(got, odd_resolvent_coefficients(a, count), "oracle, A = " + dump(a))) return o;
                        const auto t = taus(a, count / 2);
                        for (unsigned m = 1; m <= count; ++m) {
                          const Grassmann want = m % 2 ? Grassmann(a.generators()) : t[m / 2 - 1] * Rational(-(int(m) - 1));
                          if (auto o = compare(got[m - 1], want, "lambda^-" + std::to_string(m))) return o;
                        }
                        return std::nullopt;
                      }});
  s.claims.push_back({"rank-one-example", "2 + x1 in Q(1): (-x1, -2 x1, -4 x1)", false, [](Sampler&) -> Outcome {
                        const unsigned q = 1;
                        const Grassmann x1 = Grassmann::generator(q, 1);
                        const SuperMatrix a = diagonal_queer({Grassmann(q, 2) + x1});
                        const std::vector<Grassmann> want = {-x1, x1 * Rational(-2), x1 * Rational(-4)};
                        if (auto o = compare(qet_generating_coefficients(a, 3), want, "eigendata route")) return o;
                        return compare(qet_series_coefficients(a, 3), want, "series oracle");
                      }});
  return s;
}


unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("SUPERINV_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

}  // namespace

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      grassmann_suite(), invariance_suite(), block_suite(),   vandermonde_suite(),
      rewrite_suite(),   tau_suite(),        balanced_suite(), semi_suite(),
      indistinguishability_suite(), antidiag_suite(), l_suite(), generating_suite(),
  };
  return all;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.push_back(s.name);
  return out;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::uint64_t trial_seed(std::uint64_t seed, const std::string& claim, std::uint64_t trial) {
  return splitmix(splitmix(seed ^ fnv1a(claim)) + trial);
}

ClaimResult run_claim(const Suite& suite, const Claim& claim, const VerifyOptions& opts) {
  ClaimResult res{suite.name, claim.id, claim.randomized ? std::max(1u, opts.trials) : 1u, opts.seed, true, {}};
  const std::string key = suite.name + "/" + claim.id;
  std::vector<Outcome> outcomes(res.trials);
  std::atomic<unsigned> next{0};
  auto work = [&] {
    for (unsigned i = next++; i < res.trials; i = next++) {
      const std::uint64_t ts = trial_seed(opts.seed, key, i);
      Sampler sampler(ts);
      Outcome o;
      try {
        o = claim.check(sampler);
      } catch (const std::exception& e) {
        o = std::string("exception: ") + e.what();
      }
      if (o) outcomes[i] = "trial " + std::to_string(i) + " (seed " + std::to_string(ts) + "): " + *o;
    }
  };
  const unsigned workers = std::min(worker_count(opts.workers), res.trials);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& o : outcomes) {
    if (o) {
      res.passed = false;
      res.counterexample = std::move(o);
      break;
    }
  }
  return res;
}

std::vector<ClaimResult> run_suite(const std::string& name, const VerifyOptions& opts) {
  if (!is_suite(name)) throw std::invalid_argument("unknown suite \"" + name + "\"");
  std::vector<ClaimResult> out;
  for (const auto& s : suites()) {
    if (name != "all" && s.name != name) continue;
    for (const auto& c : s.claims) out.push_back(run_claim(s, c, opts));
  }
  return out;
}

Json claim_to_json(const ClaimResult& r) {
  return Json{{"claim", r.claim},
              {"suite", r.suite},
              {"trials", r.trials},
              {"seed", r.seed},
              {"status", r.passed ? "pass" : "fail"},
              {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)}};
}

Json summary_to_json(const std::string& suite, const std::vector<ClaimResult>& results,
                     const VerifyOptions& opts) {
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  return Json{{"summary",
               {{"suite", suite},
                {"seed", opts.seed},
                {"trials", opts.trials},
                {"claims", results.size()},
                {"passed", results.size() - static_cast<std::size_t>(failed)},
                {"failed", failed},
                {"status", failed ? "fail" : "pass"}}}};
}

std::string render_report(const std::string& suite, const std::vector<ClaimResult>& results,
                          const VerifyOptions& opts, bool json) {
  std::ostringstream os;
  if (json) {
    for (const auto& r : results) os << claim_to_json(r).dump() << "\n";
    os << summary_to_json(suite, results, opts).dump() << "\n";
    return os.str();
  }
  std::size_t failed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.claim << " (" << r.trials << " trial"
       << (r.trials == 1 ? "" : "s") << ")\n";
    if (!r.passed) {
      ++failed;
      os << "     " << *r.counterexample << "\n";
    }
  }
  os << results.size() - failed << "/" << results.size() << " claims passed, seed " << opts.seed << "\n";
  return os.str();
}

// Truncated power series in x = 1/lambda with matrix coefficients.
namespace {

using Series = std::vector<SuperMatrix>;

Series series_mul(const Series& a, const Series& b, const SuperMatrix& zero) {
  Series c(a.size(), zero);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) {
      if (!b[j].is_zero()) c[i + j] = c[i + j] + a[i] * b[j];
    }
  }
  return c;
}

}  // namespace

std::vector<Grassmann> qet_series_coefficients(const SuperMatrix& a, unsigned count) {
  auto [a0, a1] = queer_split(a);
  const unsigned q = a.generators();
  const SuperMatrix zero(a.shape(), ParityClass::Any, q);
  // (lambda - A0)^{-1} (-A1) = sum_m x^{m+1} (-A0^m A1).
  Series m(count + 1, zero);
  SuperMatrix power = SuperMatrix::identity(a.shape(), q);
  for (unsigned k = 1; k <= count; ++k) {
    m[k] = Grassmann(q, -1) * (power * a1);
    power = power * a0;
  }
  std::vector<Grassmann> out(count, Grassmann(q));
  Series p = m;
  for (unsigned i = 1; i <= std::min(count, q); ++i) {
    for (unsigned k = 1; k <= count; ++k) out[k - 1] += trace(p[k]) * Rational(1, i);
    p = series_mul(p, m, zero);
  }
  return out;
}

std::vector<Grassmann> odd_resolvent_coefficients(const SuperMatrix& a, unsigned count) {
  std::vector<Grassmann> out;
  SuperMatrix power = SuperMatrix::identity(a.shape(), a.generators());
  for (unsigned m = 1; m <= count; ++m) {
    out.push_back(-supertrace(power));
    power = mat_mul(power, a);
  }
  return out;
}

}  // namespace superinv
