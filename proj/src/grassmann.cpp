#include "superinv/grassmann.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>

namespace superinv {

namespace {

std::atomic<unsigned> g_generator_cap{16};

void check_q(unsigned q) {
  if (q > generator_cap()) {
    throw Error(Errc::GeneratorCap, "q = " + std::to_string(q) +
                                        " exceeds cap " +
                                        std::to_string(generator_cap()));
  }
}

void check_same(const Grassmann& x, const Grassmann& y) {
  if (x.generators() != y.generators()) {
    throw Error(Errc::GeneratorMismatch,
                "q = " + std::to_string(x.generators()) + " vs q = " +
                    std::to_string(y.generators()));
  }
}

// Sort by mask, merge equal masks, drop zeros.
std::vector<Grassmann::Term> normalize(std::vector<Grassmann::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.mask < b.mask; });
  std::vector<Grassmann::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mask == t.mask) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return out;
}

}  // namespace

unsigned generator_cap() { return g_generator_cap.load(); }

void set_generator_cap(unsigned cap) {
  if (cap > kMaxGenerators) {
    throw Error(Errc::GeneratorCap, "cap may not exceed " +
                                        std::to_string(kMaxGenerators));
  }
  g_generator_cap.store(cap);
}

int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  unsigned swaps = 0;
  for (Mask x = a >> 1; x; x >>= 1) swaps += mask_degree(x & b);
  return (swaps & 1u) ? -1 : 1;
}

std::vector<unsigned> mask_to_indices(Mask m) {
  std::vector<unsigned> idx;
  for (unsigned i = 0; m; ++i, m >>= 1) {
    if (m & 1u) idx.push_back(i + 1);
  }
  return idx;
}

Mask indices_to_mask(std::span<const unsigned> idx, unsigned q) {
  Mask m = 0;
  unsigned prev = 0;
  for (unsigned i : idx) {
    if (i <= prev || i > q) {
      throw Error(Errc::Parse, "index subset must be strictly increasing in 1.." +
                                   std::to_string(q));
    }
    m |= Mask{1} << (i - 1);
    prev = i;
  }
  return m;
}

Grassmann::Grassmann(unsigned q) : q_(q) { check_q(q); }

Grassmann::Grassmann(unsigned q, const Rational& c) : q_(q) {
  check_q(q);
  if (sgn(c) != 0) terms_.push_back({0, c});
}

Grassmann Grassmann::generator(unsigned q, unsigned i) {
  if (i < 1 || i > q) {
    throw Error(Errc::GeneratorMismatch,
                "generator " + std::to_string(i) + " outside 1.." + std::to_string(q));
  }
  return monomial(q, Mask{1} << (i - 1));
}

Grassmann Grassmann::monomial(unsigned q, Mask m, const Rational& c) {
  Grassmann x(q);
  if (q < 32 && (m >> q) != 0) {
    throw Error(Errc::GeneratorMismatch, "monomial uses generator beyond q");
  }
  if (sgn(c) != 0) x.terms_.push_back({m, c});
  return x;
}

Grassmann Grassmann::from_terms(unsigned q, std::vector<Term> terms) {
  Grassmann x(q);
  for (const auto& t : terms) {
    if (q < 32 && (t.mask >> q) != 0) {
      throw Error(Errc::GeneratorMismatch, "monomial uses generator beyond q");
    }
  }
  x.terms_ = normalize(std::move(terms));
  return x;
}

bool Grassmann::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return mask_degree(t.mask) % 2 == 0; });
}

bool Grassmann::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return mask_degree(t.mask) % 2 == 1; });
}

Rational Grassmann::body() const {
  if (!terms_.empty() && terms_.front().mask == 0) return terms_.front().coeff;
  return 0;
}

Rational Grassmann::coefficient(Mask m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Mask v) { return t.mask < v; });
  if (it != terms_.end() && it->mask == m) return it->coeff;
  return 0;
}

unsigned Grassmann::min_degree() const {
  unsigned d = q_ + 1;
  for (const auto& t : terms_) d = std::min(d, mask_degree(t.mask));
  return d;
}

std::pair<Grassmann, Grassmann> Grassmann::parity_split() const {
  Grassmann even(q_), odd(q_);
  for (const auto& t : terms_) {
    (mask_degree(t.mask) % 2 ? odd : even).terms_.push_back(t);
  }
  return {std::move(even), std::move(odd)};
}

Grassmann Grassmann::soul() const {
  Grassmann s(q_);
  for (const auto& t : terms_) {
    if (t.mask != 0) s.terms_.push_back(t);
  }
  return s;
}

Grassmann Grassmann::component(unsigned degree) const {
  Grassmann c(q_);
  for (const auto& t : terms_) {
    if (mask_degree(t.mask) == degree) c.terms_.push_back(t);
  }
  return c;
}

Grassmann Grassmann::inverse() const {
  const Rational b = body();
  if (sgn(b) == 0) throw Error(Errc::ZeroBody, "cannot invert " + to_string(*this));
  // x = b(1 + n), x^{-1} = b^{-1} sum_{k<=q} (-n)^k with n = soul/b nilpotent.
  const Rational binv = 1 / b;
  const Grassmann minus_n = soul() * Rational(-binv);
  Grassmann result(q_, 1);
  Grassmann power(q_, 1);
  for (unsigned k = 1; k <= q_; ++k) {
    power = power * minus_n;
    if (power.is_zero()) break;
    result += power;
  }
  return result * binv;
}

Grassmann Grassmann::pow(unsigned k) const {
  Grassmann result(q_, 1);
  Grassmann base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Grassmann Grassmann::operator-() const {
  Grassmann r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Grassmann& Grassmann::operator+=(const Grassmann& y) {
  check_same(*this, y);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + y.terms_.size());
  auto a = terms_.begin();
  auto b = y.terms_.begin();
  while (a != terms_.end() || b != y.terms_.end()) {
    if (b == y.terms_.end() || (a != terms_.end() && a->mask < b->mask)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->mask < a->mask) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (sgn(c) != 0) merged.push_back({a->mask, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Grassmann& Grassmann::operator-=(const Grassmann& y) { return *this += -y; }

Grassmann& Grassmann::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Grassmann operator*(const Grassmann& x, const Grassmann& y) {
  GrassmannAccumulator acc(x.generators());
  acc.add_product(x, y);
  return acc.finish();
}

bool operator==(const Grassmann& x, const Grassmann& y) {
  if (x.q_ != y.q_ || x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].mask != y.terms_[i].mask ||
        x.terms_[i].coeff != y.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

void GrassmannAccumulator::check(const Grassmann& x) const {
  if (x.generators() != q_) {
    throw Error(Errc::GeneratorMismatch,
                "q = " + std::to_string(x.generators()) + " vs q = " +
                    std::to_string(q_));
  }
}

void GrassmannAccumulator::add(const Grassmann& x) {
  check(x);
  pending_.insert(pending_.end(), x.terms_.begin(), x.terms_.end());
}

void GrassmannAccumulator::add_product(const Grassmann& x, const Grassmann& y) {
  check(x);
  check(y);
  for (const auto& s : x.terms_) {
    for (const auto& t : y.terms_) {
      const int sign = merge_sign(s.mask, t.mask);
      if (sign == 0) continue;
      Rational c = s.coeff * t.coeff;
      if (sign < 0) c = -c;
      pending_.push_back({s.mask | t.mask, std::move(c)});
    }
  }
}

void GrassmannAccumulator::sub_product(const Grassmann& x, const Grassmann& y) {
  check(x);
  check(y);
  for (const auto& s : x.terms_) {
    for (const auto& t : y.terms_) {
      const int sign = merge_sign(s.mask, t.mask);
      if (sign == 0) continue;
      Rational c = s.coeff * t.coeff;
      if (sign > 0) c = -c;
      pending_.push_back({s.mask | t.mask, std::move(c)});
    }
  }
}

Grassmann GrassmannAccumulator::finish() {
  Grassmann r(q_);
  r.terms_ = normalize(std::move(pending_));
  pending_.clear();
  return r;
}

std::string to_string(const Grassmann& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : x.terms()) {
    Rational c = t.coeff;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    } else if (sgn(c) < 0 && t.mask != 0 && c == -1) {
      os << "-";
      c = 1;
    }
    first = false;
    if (t.mask == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    bool firstg = true;
    for (unsigned i : mask_to_indices(t.mask)) {
      if (!firstg) os << "*";
      os << "x" << i;
      firstg = false;
    }
  }
  return os.str();
}

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  }
  Integer d{std::string(den)};
  if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(Integer{std::string(num)}, d);
  r.canonicalize();
  if (text.front() == '-') r = -r;
  return r;
}

}  // namespace superinv
