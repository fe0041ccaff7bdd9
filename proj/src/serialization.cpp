#include "superinv/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace superinv {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::Parse, path + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t as_size(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Rational coeff_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "coefficient must be a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::vector<unsigned> index_list(const Json& j, const std::string& path, unsigned upper,
                                 const char* what) {
  std::vector<unsigned> idx;
  for (std::size_t k = 0; k < as_array(j, path).size(); ++k) {
    const std::size_t v = as_size(j[k], path + "[" + std::to_string(k) + "]");
    if (v < 1 || v > upper) fail(path, std::string(what) + " index out of range");
    if (!idx.empty() && v <= idx.back()) fail(path, std::string(what) + " indices must increase");
    idx.push_back(static_cast<unsigned>(v));
  }
  return idx;
}

Json indices_json(Mask m) {
  Json out = Json::array();
  for (unsigned i : mask_to_indices(m)) out.push_back(i);
  return out;
}

}  // namespace

Json scalar_to_json(const Grassmann& x) {
  Json terms = Json::array();
  for (const auto& t : x.terms()) {
    terms.push_back(Json{{"idx", indices_json(t.mask)}, {"coeff", to_string(t.coeff)}});
  }
  return Json{{"q", x.generators()}, {"terms", terms}};
}

Grassmann scalar_from_json(const Json& j) {
  const std::size_t q = as_size(member(j, "q", "scalar"), "scalar.q");
  if (q > generator_cap()) {
    throw Error(Errc::GeneratorCap, "scalar.q = " + std::to_string(q) + " exceeds the cap " +
                                        std::to_string(generator_cap()));
  }
  const Json& terms = as_array(member(j, "terms", "scalar"), "scalar.terms");
  std::vector<Grassmann::Term> out;
  std::set<Mask> seen;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string path = "scalar.terms[" + std::to_string(k) + "]";
    const auto idx = index_list(member(terms[k], "idx", path), path + ".idx",
                                static_cast<unsigned>(q), "generator");
    const Mask m = indices_to_mask(idx, static_cast<unsigned>(q));
    if (!seen.insert(m).second) fail(path, "repeated monomial");
    Rational c = coeff_from_json(member(terms[k], "coeff", path), path + ".coeff");
    if (sgn(c) != 0) out.push_back({m, std::move(c)});
  }
  return Grassmann::from_terms(static_cast<unsigned>(q), std::move(out));
}

Json shape_to_json(const Shape& s) {
  if (s.is_queer()) return Json{{"kind", "queer"}, {"n", s.p}};
  return Json{{"kind", "standard"}, {"p", s.p}, {"q_odd", s.q}};
}

Shape shape_from_json(const Json& j) {
  const Json& kind = member(j, "kind", "shape");
  if (kind == "queer") return Shape::queer(as_size(member(j, "n", "shape"), "shape.n"));
  if (kind == "standard") {
    return Shape::standard(as_size(member(j, "p", "shape"), "shape.p"),
                           as_size(member(j, "q_odd", "shape"), "shape.q_odd"));
  }
  fail("shape.kind", "expected \"queer\" or \"standard\"");
}

Json matrix_to_json(const SuperMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"shape", shape_to_json(m.shape())},
              {"parity", to_string(m.parity())},
              {"grassmann_q", m.generators()},
              {"entries", rows}};
}

SuperMatrix matrix_from_json(const Json& j) {
  const Shape shape = shape_from_json(member(j, "shape", "matrix"));
  const Json& pj = member(j, "parity", "matrix");
  ParityClass parity;
  if (pj == "even") {
    parity = ParityClass::Even;
  } else if (pj == "odd") {
    parity = ParityClass::Odd;
  } else if (pj == "any") {
    parity = ParityClass::Any;
  } else {
    fail("matrix.parity", "expected \"even\", \"odd\" or \"any\"");
  }
  const std::size_t q = as_size(member(j, "grassmann_q", "matrix"), "matrix.grassmann_q");
  if (q > generator_cap()) {
    throw Error(Errc::GeneratorCap, "grassmann_q = " + std::to_string(q) + " exceeds the cap " +
                                        std::to_string(generator_cap()));
  }
  const Json& rows = as_array(member(j, "entries", "matrix"), "matrix.entries");
  const std::size_t n = shape.dim();
  if (rows.size() != n) fail("matrix.entries", "expected " + std::to_string(n) + " rows");
  std::vector<Grassmann> e;
  e.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rpath = "matrix.entries[" + std::to_string(r) + "]";
    if (as_array(rows[r], rpath).size() != n) fail(rpath, "expected " + std::to_string(n) + " cells");
    for (std::size_t c = 0; c < n; ++c) {
      const std::string cpath = rpath + "[" + std::to_string(c) + "]";
      Grassmann x;
      try {
        x = scalar_from_json(rows[r][c]);
      } catch (const Error& err) {
        throw Error(err.code(), cpath + ": " + err.what());
      }
      if (x.generators() != q) {
        throw Error(Errc::GeneratorMismatch,
                    cpath + ": scalar has q = " + std::to_string(x.generators()) +
                        ", matrix has grassmann_q = " + std::to_string(q));
      }
      e.push_back(std::move(x));
    }
  }
  return SuperMatrix(shape, parity, static_cast<unsigned>(q), std::move(e));
}

Json polynomial_to_json(const SuperPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back(Json{{"even", m.even}, {"odd", indices_json(m.odd)}, {"coeff", to_string(c)}});
  }
  Json out{{"n", p.even_count()}};
  if (p.odd_count() != p.even_count()) out["odd_range"] = p.odd_count();
  out["terms"] = terms;
  return out;
}

SuperPolynomial polynomial_from_json(const Json& j) {
  const std::size_t n = as_size(member(j, "n", "polynomial"), "polynomial.n");
  std::size_t odd = n;
  if (j.contains("odd_range")) odd = as_size(j["odd_range"], "polynomial.odd_range");
  if (odd > kMaxGenerators) fail("polynomial.odd_range", "at most 32 odd symbols");
  SuperPolynomial p(n, odd);
  const Json& terms = as_array(member(j, "terms", "polynomial"), "polynomial.terms");
  std::set<SuperPolynomial::Monomial> seen;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string path = "polynomial.terms[" + std::to_string(k) + "]";
    const Json& ej = as_array(member(terms[k], "even", path), path + ".even");
    if (ej.size() != n) fail(path + ".even", "expected " + std::to_string(n) + " exponents");
    SuperPolynomial::Monomial m;
    for (std::size_t i = 0; i < n; ++i) {
      m.even.push_back(static_cast<unsigned>(as_size(ej[i], path + ".even[" + std::to_string(i) + "]")));
    }
    const auto idx = index_list(member(terms[k], "odd", path), path + ".odd",
                                static_cast<unsigned>(odd), "odd symbol");
    m.odd = indices_to_mask(idx, static_cast<unsigned>(odd));
    if (!seen.insert(m).second) fail(path, "repeated monomial");
    p.add_term(std::move(m), coeff_from_json(member(terms[k], "coeff", path), path + ".coeff"));
  }
  return p;
}

Json balanced_to_json(const BalancedExpression& f) {
  return Json{{"numerator", polynomial_to_json(f.numerator)},
              {"denominator", polynomial_to_json(f.denominator)}};
}

BalancedExpression balanced_from_json(const Json& j) {
  if (j.is_object() && j.contains("numerator")) {
    auto num = polynomial_from_json(j["numerator"]);
    if (!j.contains("denominator")) return make_balanced(std::move(num));
    return make_balanced(std::move(num), polynomial_from_json(j["denominator"]));
  }
  return make_balanced(polynomial_from_json(j));
}

std::string to_string(ReduceMode m) {
  switch (m) {
    case ReduceMode::BlockDiag: return "blockdiag";
    case ReduceMode::Diagonalize: return "diagonalize";
    case ReduceMode::Odd: return "odd";
    case ReduceMode::Antidiag: return "antidiag";
  }
  return "?";
}

ReduceMode reduce_mode_from_string(const std::string& s) {
  for (auto m : {ReduceMode::BlockDiag, ReduceMode::Diagonalize, ReduceMode::Odd, ReduceMode::Antidiag}) {
    if (to_string(m) == s) return m;
  }
  fail("mode", "unknown reduction mode \"" + s + "\"");
}

DecompositionRecord run_reduction(const SuperMatrix& a, ReduceMode mode) {
  DecompositionRecord r{mode, a, {}};
  switch (mode) {
    case ReduceMode::BlockDiag: r.decomposition = block_diagonalize(a); break;
    case ReduceMode::Diagonalize: r.decomposition = diagonalize(a); break;
    case ReduceMode::Odd: r.decomposition = reduce_odd(a); break;
    case ReduceMode::Antidiag: {
      GroupElement g = antidiagonalize(a);
      SpectralDecomposition& d = r.decomposition;
      d.shape = a.shape();
      d.parity = a.parity();
      d.generators = a.generators();
      d.blocks.push_back({Rational(0), conjugate(a, g)});
      d.conjugator = std::move(g);
      std::vector<std::size_t> all(a.dim());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      d.partition.push_back(std::move(all));
      break;
    }
  }
  return r;
}

Json decomposition_to_json(const DecompositionRecord& r) {
  const SpectralDecomposition& d = r.decomposition;
  Json partition = Json::array();
  for (const auto& set : d.partition) {
    Json s = Json::array();
    for (std::size_t i : set) s.push_back(i + 1);
    partition.push_back(std::move(s));
  }
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json bj = Json::object();
    if (r.mode != ReduceMode::Antidiag) bj["eigenvalue"] = to_string(b.eigenvalue);
    bj["block"] = matrix_to_json(b.block);
    blocks.push_back(std::move(bj));
  }
  Json out{{"mode", to_string(r.mode)},
           {"input", matrix_to_json(r.input)},
           {"conjugator", matrix_to_json(d.conjugator.matrix())},
           {"partition", partition},
           {"blocks", blocks}};
  if (!d.filtration.empty()) out["filtration"] = d.filtration;
  return out;
}

DecompositionRecord decomposition_from_json(const Json& j) {
  DecompositionRecord r;
  const Json& mj = member(j, "mode", "decomposition");
  if (!mj.is_string()) fail("decomposition.mode", "expected a string");
  r.mode = reduce_mode_from_string(mj.get<std::string>());
  r.input = matrix_from_json(member(j, "input", "decomposition"));
  SpectralDecomposition& d = r.decomposition;
  d.shape = r.input.shape();
  d.parity = r.input.parity();
  d.generators = r.input.generators();
  SuperMatrix g = matrix_from_json(member(j, "conjugator", "decomposition"));
  if (!(g.shape() == d.shape) || g.generators() != d.generators) {
    fail("decomposition.conjugator", "shape or generator count differs from the input");
  }
  d.conjugator = GroupElement(std::move(g));

  const Json& pj = as_array(member(j, "partition", "decomposition"), "decomposition.partition");
  for (std::size_t k = 0; k < pj.size(); ++k) {
    const std::string path = "decomposition.partition[" + std::to_string(k) + "]";
    std::vector<std::size_t> set;
    for (unsigned i : index_list(pj[k], path, static_cast<unsigned>(d.shape.dim()), "basis")) {
      set.push_back(i - 1);
    }
    d.partition.push_back(std::move(set));
  }
  const Json& bj = as_array(member(j, "blocks", "decomposition"), "decomposition.blocks");
  if (bj.size() != d.partition.size()) fail("decomposition.blocks", "one block per partition set");
  for (std::size_t k = 0; k < bj.size(); ++k) {
    const std::string path = "decomposition.blocks[" + std::to_string(k) + "]";
    SpectralBlock b;
    if (r.mode != ReduceMode::Antidiag) {
      b.eigenvalue = coeff_from_json(member(bj[k], "eigenvalue", path), path + ".eigenvalue");
    }
    b.block = matrix_from_json(member(bj[k], "block", path));
    if (b.block.dim() != d.partition[k].size() || b.block.generators() != d.generators) {
      fail(path, "block size or generator count does not match its partition set");
    }
    d.blocks.push_back(std::move(b));
  }
  if (j.contains("filtration")) {
    const Json& fj = as_array(j["filtration"], "decomposition.filtration");
    for (std::size_t k = 0; k < fj.size(); ++k) {
      d.filtration.push_back(static_cast<unsigned>(
          as_size(fj[k], "decomposition.filtration[" + std::to_string(k) + "]")));
    }
  }
  return r;
}

bool verify_decomposition(const DecompositionRecord& r) {
  const SpectralDecomposition& d = r.decomposition;
  std::vector<int> hits(d.shape.dim(), 0);
  for (const auto& set : d.partition)
    for (std::size_t i : set) ++hits.at(i);
  if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) return false;
  if (d.blocks.size() != d.partition.size()) return false;
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    if (d.blocks[k].block.dim() != d.partition[k].size()) return false;
  }
  return conjugate(r.input, d.conjugator) == d.assemble();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

}  // namespace superinv
