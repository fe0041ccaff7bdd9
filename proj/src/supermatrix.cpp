#include "superinv/supermatrix.hpp"

#include <sstream>

namespace superinv {

std::string to_string(const Shape& s) {
  if (s.is_queer()) return "Queer(" + std::to_string(s.p) + ")";
  return "Standard(" + std::to_string(s.p) + "|" + std::to_string(s.q) + ")";
}

std::string to_string(ParityClass p) {
  switch (p) {
    case ParityClass::Even: return "even";
    case ParityClass::Odd: return "odd";
    case ParityClass::Any: return "any";
  }
  return "?";
}

namespace {

ParityClass product_parity(ParityClass a, ParityClass b) {
  if (a == ParityClass::Any || b == ParityClass::Any) return ParityClass::Any;
  return a == b ? ParityClass::Even : ParityClass::Odd;
}

void require_same(const SuperMatrix& a, const SuperMatrix& b, const char* what) {
  if (!(a.shape() == b.shape())) {
    throw Error(Errc::ShapeMismatch, std::string(what) + ": " + to_string(a.shape()) +
                                         " vs " + to_string(b.shape()));
  }
  if (a.generators() != b.generators()) {
    throw Error(Errc::GeneratorMismatch, std::string(what) + ": generator counts differ");
  }
}

}  // namespace

SuperMatrix::SuperMatrix(Shape shape, ParityClass parity, unsigned q)
    : shape_(shape), parity_(parity), q_(q), entries_(shape.dim() * shape.dim(), Grassmann(q)) {
  validate();
}

SuperMatrix::SuperMatrix(Shape shape, ParityClass parity, unsigned q,
                         std::vector<Grassmann> entries)
    : shape_(shape), parity_(parity), q_(q), entries_(std::move(entries)) {
  validate();
}

void SuperMatrix::validate() const {
  const std::size_t n = dim();
  if (entries_.size() != n * n) {
    throw Error(Errc::ShapeMismatch, "expected " + std::to_string(n * n) + " entries for " +
                                         to_string(shape_));
  }
  if (shape_.is_queer() && parity_ != ParityClass::Any) {
    throw Error(Errc::WrongParity, "queer matrices carry parity class 'any'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Grassmann& x = entries_[i * n + j];
      if (x.generators() != q_) {
        throw Error(Errc::GeneratorMismatch, "cell (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") has q = " +
                                                 std::to_string(x.generators()));
      }
      if (parity_ == ParityClass::Any) continue;
      // Diagonal blocks carry the matrix parity, off-diagonal blocks the other.
      const bool diagonal_block = shape_.odd_index(i) == shape_.odd_index(j);
      const bool want_even = diagonal_block == (parity_ == ParityClass::Even);
      if (want_even ? !x.is_even() : !x.is_odd()) {
        throw ParityViolationError(i, j, std::string("entry must be ") +
                                             (want_even ? "even" : "odd") + " in an " +
                                             to_string(parity_) + " matrix");
      }
    }
  }
}

SuperMatrix SuperMatrix::identity(Shape shape, unsigned q) {
  SuperMatrix m(shape, shape.is_queer() ? ParityClass::Any : ParityClass::Even, q);
  for (std::size_t i = 0; i < shape.dim(); ++i) m.entries_[i * shape.dim() + i] = Grassmann(q, 1);
  return m;
}

SuperMatrix SuperMatrix::from_rational(Shape shape, ParityClass parity, unsigned q,
                                       const RationalMatrix& m) {
  if (m.rows() != shape.dim() || m.cols() != shape.dim()) {
    throw Error(Errc::ShapeMismatch, "rational matrix does not match shape");
  }
  std::vector<Grassmann> e;
  e.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e.emplace_back(q, m(i, j));
  return SuperMatrix(shape, parity, q, std::move(e));
}

RationalMatrix SuperMatrix::body() const {
  const std::size_t n = dim();
  RationalMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i, j).body();
  return b;
}

bool SuperMatrix::is_zero() const {
  for (const auto& x : entries_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

unsigned SuperMatrix::min_degree() const {
  unsigned d = q_ + 1;
  for (const auto& x : entries_) d = std::min(d, x.min_degree());
  return d;
}

SuperMatrix SuperMatrix::principal_submatrix(const std::vector<std::size_t>& idx) const {
  std::size_t odd = 0;
  for (auto i : idx) odd += shape_.odd_index(i) ? 1 : 0;
  const Shape s = shape_.is_queer() ? Shape::queer(idx.size())
                                    : Shape::standard(idx.size() - odd, odd);
  std::vector<Grassmann> e;
  e.reserve(idx.size() * idx.size());
  for (auto i : idx)
    for (auto j : idx) e.push_back((*this)(i, j));
  return SuperMatrix(s, parity_, q_, std::move(e));
}

SuperMatrix SuperMatrix::with_parity(ParityClass parity) const {
  return SuperMatrix(shape_, parity, q_, entries_);
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
  require_same(a, b, "matrix sum");
  std::vector<Grassmann> e = a.entries_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
  const ParityClass p = a.parity_ == b.parity_ ? a.parity_ : ParityClass::Any;
  return SuperMatrix(a.shape_, p, a.q_, std::move(e));
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
  require_same(a, b, "matrix difference");
  std::vector<Grassmann> e = a.entries_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries_[i];
  const ParityClass p = a.parity_ == b.parity_ ? a.parity_ : ParityClass::Any;
  return SuperMatrix(a.shape_, p, a.q_, std::move(e));
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
  require_same(a, b, "matrix product");
  const std::size_t n = a.dim();
  std::vector<Grassmann> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      GrassmannAccumulator acc(a.q_);
      for (std::size_t k = 0; k < n; ++k) acc.add_product(a(i, k), b(k, j));
      e.push_back(acc.finish());
    }
  }
  return SuperMatrix(a.shape_, product_parity(a.parity_, b.parity_), a.q_, std::move(e));
}

SuperMatrix operator*(const Grassmann& c, const SuperMatrix& a) {
  std::vector<Grassmann> e;
  e.reserve(a.entries_.size());
  for (const auto& x : a.entries_) e.push_back(c * x);
  ParityClass p = ParityClass::Any;
  if (a.parity_ != ParityClass::Any && c.is_even()) p = a.parity_;
  return SuperMatrix(a.shape_, a.shape_.is_queer() ? ParityClass::Any : p, a.q_, std::move(e));
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  return a.shape_ == b.shape_ && a.q_ == b.q_ && a.entries_ == b.entries_;
}

std::string to_string(const SuperMatrix& m) {
  std::ostringstream os;
  os << to_string(m.shape()) << " " << to_string(m.parity()) << " q=" << m.generators() << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << "]\n";
  }
  return os.str();
}

SuperMatrix mat_mul(const SuperMatrix& a, const SuperMatrix& b) { return a * b; }

SuperMatrix mat_pow(const SuperMatrix& a, unsigned k) {
  SuperMatrix r = SuperMatrix::identity(a.shape(), a.generators());
  if (k == 0) return r;
  r = a;
  for (unsigned i = 1; i < k; ++i) r = r * a;
  return r;
}

SuperMatrix mat_invert(const SuperMatrix& a) {
  const RationalMatrix b = a.body();
  const auto binv = inverse(b);
  if (!binv) throw SingularBodyError(rank(b), b.rows());
  // A = B (1 + B^{-1} N) with N nilpotent, so
  // A^{-1} = sum_{k=0}^{q} (-B^{-1} N)^k B^{-1}.
  const unsigned q = a.generators();
  const ParityClass even = a.shape().is_queer() ? ParityClass::Any : ParityClass::Even;
  const SuperMatrix binv_m = SuperMatrix::from_rational(a.shape(), even, q, *binv);
  const SuperMatrix nil = (a - SuperMatrix::from_rational(a.shape(), ParityClass::Any, q, b))
                              .with_parity(ParityClass::Any);
  const SuperMatrix step = Grassmann(q, -1) * (binv_m.with_parity(ParityClass::Any) * nil);
  SuperMatrix sum = SuperMatrix::identity(a.shape(), q).with_parity(ParityClass::Any);
  SuperMatrix power = sum;
  for (unsigned k = 1; k <= q; ++k) {
    power = power * step;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  SuperMatrix inv = sum * binv_m.with_parity(ParityClass::Any);
  if (a.shape().is_standard()) {
    // Inverse of an even matrix is even; of an odd one (q = p) is odd.
    return inv.with_parity(a.parity());
  }
  return inv;
}

GroupElement::GroupElement(SuperMatrix g) : g_(std::move(g)) {
  if (g_.shape().is_standard() && g_.parity() != ParityClass::Even) {
    throw Error(Errc::WrongParity, "GL(p|q) elements must be even");
  }
  inv_ = mat_invert(g_);
}

GroupElement GroupElement::identity(Shape shape, unsigned q) {
  SuperMatrix id = SuperMatrix::identity(shape, q);
  return GroupElement(id, id);
}

GroupElement GroupElement::inverted() const { return GroupElement(inv_, g_); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(a.g_ * b.g_, b.inv_ * a.inv_);
}

std::pair<SuperMatrix, SuperMatrix> queer_split(const SuperMatrix& a) {
  if (!a.shape().is_queer()) throw Error(Errc::WrongShape, "queer_split needs a Queer shape");
  std::vector<Grassmann> even, odd;
  even.reserve(a.entries().size());
  odd.reserve(a.entries().size());
  for (const auto& x : a.entries()) {
    auto [e, o] = x.parity_split();
    even.push_back(std::move(e));
    odd.push_back(std::move(o));
  }
  return {SuperMatrix(a.shape(), ParityClass::Any, a.generators(), std::move(even)),
          SuperMatrix(a.shape(), ParityClass::Any, a.generators(), std::move(odd))};
}

Grassmann trace(const SuperMatrix& a) {
  Grassmann t(a.generators());
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

Grassmann supertrace(const SuperMatrix& a) {
  if (!a.shape().is_standard()) throw Error(Errc::WrongShape, "supertrace needs a Standard shape");
  if (a.parity() == ParityClass::Any) {
    throw Error(Errc::WrongParity, "supertrace needs an even or odd matrix");
  }
  Grassmann t(a.generators());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.shape().odd_index(i) && a.parity() == ParityClass::Even) {
      t -= a(i, i);
    } else {
      t += a(i, i);
    }
  }
  return t;
}

Grassmann qtr(const SuperMatrix& a) {
  if (!a.shape().is_queer()) throw Error(Errc::WrongShape, "qtr needs a Queer shape");
  return trace(a).odd_part();
}

Grassmann qet(const SuperMatrix& a) {
  if (!a.shape().is_queer()) throw Error(Errc::WrongShape, "qet needs a Queer shape");
  auto [a0, a1] = queer_split(a);
  const SuperMatrix m = mat_invert(a0) * a1;
  // Entries of m^i lie in I^i, so the series stops at i = q.
  Grassmann sum(a.generators());
  SuperMatrix power = m;
  for (unsigned i = 1; i <= a.generators(); ++i) {
    if (i > 1) power = power * m;
    if (power.is_zero()) break;
    sum += trace(power) * Rational(1, i);
  }
  return sum;
}

bool has_tau_family(const SuperMatrix& a) {
  if (a.shape().is_queer()) return true;
  return a.shape().p == a.shape().q && a.parity() == ParityClass::Odd;
}

std::size_t family_rank(const SuperMatrix& a) {
  if (!has_tau_family(a)) {
    throw Error(Errc::WrongShape, "expected Queer(n) or an odd Standard(n|n) matrix");
  }
  return a.shape().p;
}

Grassmann tau(const SuperMatrix& a, unsigned k) {
  if (k == 0) throw Error(Errc::WrongShape, "tau index starts at 1");
  family_rank(a);
  if (a.shape().is_queer()) return qtr(mat_pow(a, k)) * Rational(1, k);
  return supertrace(mat_pow(a, 2 * k - 1)) * Rational(1, 2 * k - 1);
}

std::vector<Grassmann> taus(const SuperMatrix& a, unsigned count) {
  family_rank(a);
  std::vector<Grassmann> out;
  out.reserve(count);
  if (count == 0) return out;
  const bool queer = a.shape().is_queer();
  const SuperMatrix square = queer ? a : a * a;
  SuperMatrix power = a;  // A^k (queer) or A^{2k-1} (odd)
  for (unsigned k = 1; k <= count; ++k) {
    if (k > 1) power = power * square;
    if (queer) {
      out.push_back(qtr(power) * Rational(1, k));
    } else {
      out.push_back(supertrace(power) * Rational(1, 2 * k - 1));
    }
  }
  return out;
}

SuperMatrix conjugate(const SuperMatrix& a, const GroupElement& g) {
  require_same(a, g.matrix(), "conjugate");
  SuperMatrix r = g.inverse() * a * g.matrix();
  if (a.shape().is_standard()) return r.with_parity(a.parity());
  return r;
}

}  // namespace superinv
