#pragma once

// Brute-force reference arithmetic for the unit tests. Nothing here calls the
// library's product or inverse code: scalars are maps from sorted index lists
// to coefficients and products are formed by concatenation and bubble sort.

#include <algorithm>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "superinv/grassmann.hpp"
#include "superinv/linalg.hpp"
#include "superinv/supermatrix.hpp"

namespace oracle {

using superinv::Grassmann;
using superinv::Rational;
using superinv::RationalMatrix;
using superinv::SuperMatrix;

struct Scalar {
  unsigned q = 0;
  std::map<std::vector<unsigned>, Rational> c;

  Scalar() = default;
  explicit Scalar(unsigned q_, Rational body = 0) : q(q_) {
    if (body != 0) c[{}] = body;
  }

  void add(const std::vector<unsigned>& idx, const Rational& v) {
    auto& slot = c[idx];
    slot += v;
    if (slot == 0) c.erase(idx);
  }
};

inline Scalar from(const Grassmann& x) {
  Scalar s(x.generators());
  for (const auto& t : x.terms()) s.add(superinv::mask_to_indices(t.mask), t.coeff);
  return s;
}

inline Grassmann to(const Scalar& s) {
  Grassmann x(s.q);
  for (const auto& [idx, v] : s.c) x += Grassmann::monomial(s.q, superinv::indices_to_mask(idx, s.q), v);
  return x;
}

// Sign of sorting the concatenation, or 0 when an index repeats.
inline int concat_sign(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                       std::vector<unsigned>& out) {
  out = a;
  out.insert(out.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j + 1 < out.size() - i; ++j) {
      if (out[j] == out[j + 1]) return 0;
      if (out[j] > out[j + 1]) {
        std::swap(out[j], out[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] == out[i + 1]) return 0;
  return sign;
}

inline Scalar mul(const Scalar& x, const Scalar& y) {
  Scalar r(x.q);
  std::vector<unsigned> idx;
  for (const auto& [a, u] : x.c)
    for (const auto& [b, v] : y.c)
      if (int s = concat_sign(a, b, idx)) r.add(idx, s * u * v);
  return r;
}

inline Scalar add(const Scalar& x, const Scalar& y) {
  Scalar r = x;
  for (const auto& [i, v] : y.c) r.add(i, v);
  return r;
}

inline Scalar scale(const Scalar& x, const Rational& k) {
  Scalar r(x.q);
  for (const auto& [i, v] : x.c) r.add(i, v * k);
  return r;
}

// x^{-1} = b^{-1} sum_k (-s/b)^k for x = b + s.
inline Scalar invert(const Scalar& x) {
  const Rational b = x.c.count({}) ? x.c.at({}) : Rational(0);
  Scalar soul = x;
  soul.c.erase(std::vector<unsigned>{});
  const Scalar step = scale(soul, -1 / b);
  Scalar term(x.q, 1), sum(x.q, 1);
  for (unsigned k = 1; k <= x.q; ++k) {
    term = mul(term, step);
    sum = add(sum, term);
  }
  return scale(sum, 1 / b);
}

using Matrix = std::vector<std::vector<Scalar>>;

inline Matrix from(const SuperMatrix& m) {
  Matrix r(m.dim(), std::vector<Scalar>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = from(m(i, j));
  return r;
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const unsigned q = a[0][0].q;
  Matrix r(n, std::vector<Scalar>(n, Scalar(q)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r[i][j] = add(r[i][j], mul(a[i][k], b[k][j]));
  return r;
}

inline Matrix identity(std::size_t n, unsigned q) {
  Matrix r(n, std::vector<Scalar>(n, Scalar(q)));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = Scalar(q, 1);
  return r;
}

inline Matrix power(const Matrix& a, unsigned k) {
  Matrix r = identity(a.size(), a[0][0].q);
  for (unsigned i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

inline Matrix scale(const Matrix& a, const Rational& k) {
  Matrix r = a;
  for (auto& row : r)
    for (auto& x : row) x = scale(x, k);
  return r;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = add(a[i][j], b[i][j]);
  return r;
}

// Inverse by the Neumann series around the rational body.
inline Matrix invert(const Matrix& a) {
  const std::size_t n = a.size();
  const unsigned q = a[0][0].q;
  RationalMatrix body(n, n);
  Matrix soul = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j].c.count({})) body(i, j) = a[i][j].c.at({});
      soul[i][j].c.erase(std::vector<unsigned>{});
    }
  const RationalMatrix bi = *superinv::inverse(body);
  Matrix binv(n, std::vector<Scalar>(n, Scalar(q)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) binv[i][j] = Scalar(q, bi(i, j));
  const Matrix step = scale(mul(binv, soul), -1);
  Matrix term = identity(n, q), sum = identity(n, q);
  for (unsigned k = 1; k <= q; ++k) {
    term = mul(term, step);
    sum = add(sum, term);
  }
  return mul(sum, binv);
}

inline Scalar trace(const Matrix& a) {
  Scalar r(a[0][0].q);
  for (std::size_t i = 0; i < a.size(); ++i) r = add(r, a[i][i]);
  return r;
}

// Splits every entry into its even and odd parts.
inline std::pair<Matrix, Matrix> split(const Matrix& a) {
  Matrix e = a, o = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      e[i][j].c.clear();
      o[i][j].c.clear();
      for (const auto& [idx, v] : a[i][j].c) (idx.size() % 2 ? o : e)[i][j].add(idx, v);
    }
  return {e, o};
}

inline Scalar qtr(const Matrix& a) { return trace(split(a).second); }

// sum_{i=1}^{q} (1/i) tr (A0^{-1} A1)^i.
inline Scalar qet(const Matrix& a) {
  const auto [a0, a1] = split(a);
  const Matrix x = mul(invert(a0), a1);
  const unsigned q = a[0][0].q;
  Scalar r(q);
  Matrix p = identity(a.size(), q);
  for (unsigned i = 1; i <= q; ++i) {
    p = mul(p, x);
    r = add(r, scale(trace(p), Rational(1, i)));
  }
  return r;
}

// tr X - tr T (even) or tr X + tr T (odd) for a p|q block split.
inline Scalar supertrace(const Matrix& a, std::size_t p, bool odd) {
  Scalar r(a[0][0].q);
  for (std::size_t i = 0; i < a.size(); ++i) r = add(r, i < p || odd ? a[i][i] : scale(a[i][i], -1));
  return r;
}

// k^{-1} qtr A^k (queer) or (2k-1)^{-1} str A^{2k-1} (odd n|n).
inline Scalar tau(const SuperMatrix& m, unsigned k) {
  const Matrix a = from(m);
  if (m.shape().is_queer()) return scale(qtr(power(a, k)), Rational(1, k));
  return scale(supertrace(power(a, 2 * k - 1), m.shape().p, true), Rational(1, 2 * k - 1));
}

}  // namespace oracle
