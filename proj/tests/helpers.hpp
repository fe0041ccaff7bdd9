#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "superinv/grassmann.hpp"
#include "superinv/supermatrix.hpp"

namespace helpers {

using namespace superinv;

// G(q, {{{}, 2}, {{1, 2}, -1}}) is 2 - x1 x2.
inline Grassmann G(unsigned q, std::initializer_list<std::pair<std::vector<unsigned>, Rational>> terms) {
  Grassmann x(q);
  for (const auto& [idx, c] : terms) x += Grassmann::monomial(q, indices_to_mask(idx, q), c);
  return x;
}

inline Grassmann xi(unsigned q, unsigned i) { return Grassmann::generator(q, i); }
inline Grassmann num(unsigned q, const Rational& r) { return Grassmann(q, r); }

inline SuperMatrix queer(unsigned q, std::vector<Grassmann> entries) {
  std::size_t n = 0;
  while (n * n < entries.size()) ++n;
  return SuperMatrix(Shape::queer(n), ParityClass::Any, q, std::move(entries));
}

inline SuperMatrix odd11(unsigned q, std::vector<Grassmann> entries) {
  return SuperMatrix(Shape::standard(1, 1), ParityClass::Odd, q, std::move(entries));
}

inline SuperMatrix diag_queer(const std::vector<Grassmann>& d) {
  const std::size_t n = d.size();
  const unsigned q = d[0].generators();
  std::vector<Grassmann> e(n * n, Grassmann(q));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return SuperMatrix(Shape::queer(n), ParityClass::Any, q, std::move(e));
}

}  // namespace helpers
