#include "superinv/spectral.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "superinv/sampling.hpp"

namespace superinv {

unsigned RationalSpectrum::multiplicity(const Rational& r) const {
  for (const auto& [root, m] : eigenvalues) {
    if (root == r) return m;
  }
  return 0;
}

bool RationalSpectrum::simple() const {
  return std::all_of(eigenvalues.begin(), eigenvalues.end(),
                     [](const auto& e) { return e.second == 1; });
}

RationalSpectrum rational_spectrum(const RationalMatrix& b) {
  const UPoly cp(characteristic_polynomial(b));
  RationalRoots rr = rational_roots(cp);
  if (rr.residual.degree() > 0) throw NonSplittingError(to_string(rr.residual, "lambda"));
  RationalSpectrum s{std::move(rr.roots)};
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return s;
}

namespace {

// Kronecker form of X -> B X - X D, unknown X(i, j) at index i * k + j.
RationalMatrix sylvester_operator(const RationalMatrix& b, const RationalMatrix& d) {
  const std::size_t m = b.rows(), k = d.rows();
  RationalMatrix op(m * k, m * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < m; ++l) op(i * k + j, l * k + j) += b(i, l);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) op(i * k + j, i * k + l) -= d(l, j);
  return op;
}

RationalMatrix vec(const RationalMatrix& r) {
  RationalMatrix v(r.rows() * r.cols(), 1);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) v(i * r.cols() + j, 0) = r(i, j);
  return v;
}

RationalMatrix unvec(const RationalMatrix& v, std::size_t rows, std::size_t cols) {
  RationalMatrix r(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r(i, j) = v(i * cols + j, 0);
  return r;
}

// Precomputed inverse of one Sylvester operator.
class SylvesterSolver {
 public:
  SylvesterSolver(const RationalMatrix& b, const RationalMatrix& d) : rows_(b.rows()), cols_(d.rows()) {
    auto inv = inverse(sylvester_operator(b, d));
    if (!inv) throw Error(Errc::SharedEigenvalue, "Sylvester operator is singular");
    inv_ = std::move(*inv);
  }
  RationalMatrix operator()(const RationalMatrix& r) const { return unvec(inv_ * vec(r), rows_, cols_); }

 private:
  std::size_t rows_, cols_;
  RationalMatrix inv_;
};

RationalMatrix body_submatrix(const RationalMatrix& b, const std::vector<std::size_t>& idx) {
  RationalMatrix s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = b(idx[i], idx[j]);
  return s;
}

// Basis of ker (B - lambda)^m, optionally mixed by a random invertible matrix.
std::vector<std::vector<Rational>> generalized_eigenspace(const RationalMatrix& b,
                                                          const Rational& lambda, unsigned m,
                                                          Sampler* mix) {
  RationalMatrix shifted = b;
  for (std::size_t i = 0; i < b.rows(); ++i) shifted(i, i) -= lambda;
  auto basis = nullspace(matrix_power(shifted, m));
  if (basis.size() != m) throw std::logic_error("generalized eigenspace has wrong dimension");
  if (mix && m > 1) {
    const RationalMatrix r = mix->invertible_rational(m);
    std::vector<std::vector<Rational>> mixed(m, std::vector<Rational>(b.rows()));
    for (unsigned c = 0; c < m; ++c)
      for (unsigned k = 0; k < m; ++k)
        for (std::size_t i = 0; i < b.rows(); ++i) mixed[c][i] += basis[k][i] * r(k, c);
    basis = std::move(mixed);
  } else if (mix) {
    const Rational c = mix->nonzero_rational();
    for (auto& x : basis[0]) x *= c;
  }
  return basis;
}

unsigned off_diagonal_degree(const SuperMatrix& a, const std::vector<std::size_t>& label) {
  unsigned d = a.generators() + 1;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (label[i] != label[j]) d = std::min(d, a(i, j).min_degree());
  return d;
}

void require_block_input(const SuperMatrix& a) {
  if (a.shape().is_standard() && a.parity() != ParityClass::Even) {
    throw Error(Errc::WrongParity, "block diagonalization needs a queer or even matrix");
  }
}

}  // namespace

RationalMatrix solve_sylvester(const RationalMatrix& b, const RationalMatrix& d,
                               const RationalMatrix& r) {
  if (!b.square() || !d.square() || r.rows() != b.rows() || r.cols() != d.rows()) {
    throw Error(Errc::ShapeMismatch, "Sylvester equation dimensions");
  }
  return SylvesterSolver(b, d)(r);
}

bool is_block_diagonal(const SuperMatrix& a,
                       const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<std::size_t> label(a.dim(), partition.size());
  for (std::size_t k = 0; k < partition.size(); ++k)
    for (auto i : partition[k]) label[i] = k;
  return off_diagonal_degree(a, label) > a.generators();
}

SuperMatrix SpectralDecomposition::assemble() const {
  const std::size_t n = shape.dim();
  std::vector<Grassmann> e(n * n, Grassmann(generators));
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& idx = partition[k];
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) e[idx[i] * n + idx[j]] = blocks[k].block(i, j);
  }
  return SuperMatrix(shape, parity, generators, std::move(e));
}

SpectralDecomposition block_diagonalize(const SuperMatrix& a, const ReductionOptions& opts) {
  require_block_input(a);
  const Shape shape = a.shape();
  const std::size_t n = shape.dim();
  const unsigned q = a.generators();
  const RationalMatrix body = a.body();
  std::optional<Sampler> mixer;
  if (opts.basis_seed) mixer.emplace(*opts.basis_seed);
  Sampler* mix = mixer ? &*mixer : nullptr;

  // Body stage: columns of P span the generalized eigenspaces, grouped by
  // eigenvalue. Standard input keeps the even and odd coordinates apart.
  RationalMatrix p(n, n);
  std::vector<Rational> eigen;
  std::vector<std::vector<std::size_t>> partition;
  if (shape.is_queer()) {
    const auto spectrum = rational_spectrum(body);
    std::size_t col = 0;
    for (const auto& [lambda, m] : spectrum.eigenvalues) {
      eigen.push_back(lambda);
      partition.emplace_back();
      for (const auto& v : generalized_eigenspace(body, lambda, m, mix)) {
        for (std::size_t i = 0; i < n; ++i) p(i, col) = v[i];
        partition.back().push_back(col++);
      }
    }
  } else {
    const std::size_t pe = shape.p, po = shape.q;
    const RationalMatrix bx = body.block(0, 0, pe, pe);
    const RationalMatrix bt = body.block(pe, pe, po, po);
    const RationalSpectrum sx = pe ? rational_spectrum(bx) : RationalSpectrum{};
    const RationalSpectrum st = po ? rational_spectrum(bt) : RationalSpectrum{};
    std::vector<Rational> all;
    for (const auto& e : sx.eigenvalues) all.push_back(e.first);
    for (const auto& e : st.eigenvalues) all.push_back(e.first);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::size_t cx = 0, ct = pe;
    for (const auto& lambda : all) {
      eigen.push_back(lambda);
      partition.emplace_back();
      if (unsigned m = sx.multiplicity(lambda)) {
        for (const auto& v : generalized_eigenspace(bx, lambda, m, mix)) {
          for (std::size_t i = 0; i < pe; ++i) p(i, cx) = v[i];
          partition.back().push_back(cx++);
        }
      }
      if (unsigned m = st.multiplicity(lambda)) {
        for (const auto& v : generalized_eigenspace(bt, lambda, m, mix)) {
          for (std::size_t i = 0; i < po; ++i) p(pe + i, ct) = v[i];
          partition.back().push_back(ct++);
        }
      }
    }
    for (auto& part : partition) std::sort(part.begin(), part.end());
  }

  const ParityClass even = shape.is_queer() ? ParityClass::Any : ParityClass::Even;
  GroupElement g(SuperMatrix::from_rational(shape, even, q, p));
  SuperMatrix cur = conjugate(a, g);

  std::vector<std::size_t> label(n);
  for (std::size_t k = 0; k < partition.size(); ++k)
    for (auto i : partition[k]) label[i] = k;

  const RationalMatrix cur_body = cur.body();
  std::vector<RationalMatrix> block_body;
  for (const auto& part : partition) block_body.push_back(body_submatrix(cur_body, part));
  std::map<std::pair<std::size_t, std::size_t>, SylvesterSolver> solvers;
  for (std::size_t x = 0; x < partition.size(); ++x)
    for (std::size_t y = 0; y < partition.size(); ++y)
      if (x != y) solvers.emplace(std::pair{x, y}, SylvesterSolver(block_body[x], block_body[y]));

  // Soul stage: the degree-i off-diagonal part O is removed by 1 + Delta with
  // B_x Delta_xy - Delta_xy B_y = -O_xy, one monomial at a time.
  SpectralDecomposition out;
  for (unsigned deg = 1; deg <= q; ++deg) {
    std::vector<Grassmann> delta(n * n, Grassmann(q));
    bool any = false;
    for (auto& [xy, solver] : solvers) {
      const auto& rows = partition[xy.first];
      const auto& cols = partition[xy.second];
      std::map<Mask, RationalMatrix> by_mask;
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
          for (const auto& t : cur(rows[i], cols[j]).terms()) {
            if (mask_degree(t.mask) != deg) continue;
            auto it = by_mask.try_emplace(t.mask, rows.size(), cols.size()).first;
            it->second(i, j) = -t.coeff;
          }
      for (const auto& [mask, rhs] : by_mask) {
        const RationalMatrix x = solver(rhs);
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < cols.size(); ++j)
            if (sgn(x(i, j)) != 0) {
              delta[rows[i] * n + cols[j]] += Grassmann::monomial(q, mask, x(i, j));
              any = true;
            }
      }
    }
    if (any) {
      SuperMatrix step = SuperMatrix::identity(shape, q) + SuperMatrix(shape, even, q, std::move(delta));
      GroupElement h(std::move(step));
      cur = conjugate(cur, h);
      g = g * h;
    }
    const unsigned reached = off_diagonal_degree(cur, label);
    out.filtration.push_back(reached);
    if (reached < deg + 1) throw std::logic_error("filtration step failed");
  }

  out.shape = shape;
  out.parity = a.parity();
  out.generators = q;
  out.conjugator = std::move(g);
  for (std::size_t k = 0; k < partition.size(); ++k)
    out.blocks.push_back({eigen[k], cur.principal_submatrix(partition[k])});
  out.partition = std::move(partition);
  return out;
}

SpectralDecomposition diagonalize(const SuperMatrix& a, const ReductionOptions& opts) {
  require_block_input(a);
  const RationalMatrix body = a.body();
  auto check = [](const RationalSpectrum& s, std::vector<Rational>& seen) {
    for (const auto& [lambda, m] : s.eigenvalues) {
      if (m > 1 || std::find(seen.begin(), seen.end(), lambda) != seen.end()) {
        throw Error(Errc::MultipleEigenvalue, "eigenvalue " + to_string(lambda) + " repeats");
      }
      seen.push_back(lambda);
    }
  };
  std::vector<Rational> seen;
  const Shape& s = a.shape();
  if (s.is_queer()) {
    check(rational_spectrum(body), seen);
  } else {
    if (s.p) check(rational_spectrum(body.block(0, 0, s.p, s.p)), seen);
    if (s.q) check(rational_spectrum(body.block(s.p, s.p, s.q, s.q)), seen);
  }
  return block_diagonalize(a, opts);
}

SpectralDecomposition reduce_odd(const SuperMatrix& a, const ReductionOptions& opts) {
  const Shape& s = a.shape();
  if (!s.is_standard() || s.p != s.q) throw Error(Errc::WrongShape, "reduce_odd needs Standard(n|n)");
  if (a.parity() != ParityClass::Odd) throw Error(Errc::WrongParity, "reduce_odd needs an odd matrix");
  const std::size_t n = s.p;
  const unsigned q = a.generators();
  const SuperMatrix square = a * a;
  const RationalMatrix sb = square.body();
  const RationalSpectrum spectrum = rational_spectrum(sb.block(0, 0, n, n));
  for (const auto& [lambda, m] : spectrum.eigenvalues) {
    if (sgn(lambda) == 0) throw Error(Errc::ZeroEigenvalue, "A^2 has eigenvalue 0");
    if (m > 1) throw Error(Errc::MultipleEigenvalue, "eigenvalue " + to_string(lambda) + " of A^2 repeats");
  }

  SpectralDecomposition sq = block_diagonalize(square, opts);
  for (const auto& part : sq.partition) {
    if (part.size() != 2 || part[0] >= n || part[1] < n) {
      throw std::logic_error("reduce_odd: unexpected block structure of A^2");
    }
  }
  const SuperMatrix a1 = conjugate(a, sq.conjugator);
  if (!is_block_diagonal(a1, sq.partition)) {
    throw std::logic_error("reduce_odd: A is not block diagonal where A^2 is");
  }

  // Each 1|1 block (x y; z t) goes to (x+t, yz-xt; 1, 0) under (1 -t; 0 z).
  std::vector<Grassmann> k = SuperMatrix::identity(s, q).entries();
  const std::size_t dim = 2 * n;
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t i = sq.partition[b][0], j = sq.partition[b][1];
    k[i * dim + j] = -a1(j, j);
    k[j * dim + j] = a1(j, i);
  }
  const GroupElement g = sq.conjugator * GroupElement(SuperMatrix(s, ParityClass::Even, q, std::move(k)));
  const SuperMatrix r = conjugate(a, g);

  SpectralDecomposition out;
  out.shape = s;
  out.parity = ParityClass::Odd;
  out.generators = q;
  out.conjugator = g;
  out.filtration = sq.filtration;
  for (std::size_t b = 0; b < n; ++b) {
    out.partition.push_back({b, n + b});
    out.blocks.push_back({sq.blocks[b].eigenvalue, r.principal_submatrix({b, n + b})});
  }
  // The permutation to (R T; 1 0) layout is the identity because the blocks
  // of A^2 are sorted and occupy positions b and n + b.
  for (std::size_t b = 0; b < n; ++b) {
    if (sq.partition[b][0] != b || sq.partition[b][1] != n + b) {
      throw std::logic_error("reduce_odd: blocks out of order");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Grassmann expect(q, i == j ? 1 : 0);
      if (!(r(n + i, j) == expect) || !r(n + i, n + j).is_zero()) {
        throw std::logic_error("reduce_odd: lower blocks not (1 0)");
      }
    }
  return out;
}

GroupElement antidiagonalize(const SuperMatrix& a) {
  const Shape& s = a.shape();
  if (!s.is_standard() || s.p != s.q) throw Error(Errc::WrongShape, "antidiagonalize needs Standard(n|n)");
  if (a.parity() != ParityClass::Odd) throw Error(Errc::WrongParity, "antidiagonalize needs an odd matrix");
  const std::size_t n = s.p;
  const unsigned q = a.generators();
  const SuperMatrix square = a * a;
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (s.odd_index(i) != s.odd_index(j) && !square(i, j).is_zero()) {
        throw Error(Errc::NotBlockDiagonalSquare,
                    "A^2 has a nonzero off-diagonal block entry at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
  const RationalMatrix zb = a.body().block(n, 0, n, n);
  if (sgn(determinant(zb)) == 0) throw Error(Errc::SingularZ, "Z block has singular body");

  // D = diag(1, Z) turns Z into 1 and forces T = -X; then (1 X; 0 1) clears X.
  std::vector<Grassmann> d = SuperMatrix::identity(s, q).entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[(n + i) * 2 * n + n + j] = a(n + i, j);
  GroupElement g(SuperMatrix(s, ParityClass::Even, q, std::move(d)));
  const SuperMatrix a1 = conjugate(a, g);
  std::vector<Grassmann> e = SuperMatrix::identity(s, q).entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * 2 * n + n + j] = a1(i, j);
  g = g * GroupElement(SuperMatrix(s, ParityClass::Even, q, std::move(e)));

  const SuperMatrix r = conjugate(a, g);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!r(i, j).is_zero() || !r(n + i, n + j).is_zero() || !(r(n + i, j) == Grassmann(q, i == j ? 1 : 0))) {
        throw std::logic_error("antidiagonalize: result is not (0 Y; 1 0)");
      }
    }
  return g;
}

}  // namespace superinv
