// superinv: invariants, canonical forms and seeded property checks for
// supermatrices over finite Grassmann algebras.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "superinv/semi_invariants.hpp"
#include "superinv/serialization.hpp"
#include "superinv/verification.hpp"

using namespace superinv;

namespace {

enum Exit { kPass = 0, kFailure = 1, kUsage = 2, kInvalid = 3, kPrecondition = 4 };

struct Output {
  std::string path;
  bool text = false;

  void write(const std::string& body) const {
    if (path.empty() || path == "-") {
      std::cout << body;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Error(Errc::Parse, path + ": cannot write");
    out << body;
  }
  void write(const Json& j) const { write(j.dump() + "\n"); }
};

std::string scalar_text(const Grassmann& x) { return to_string(x); }

Json invariants_report(const SuperMatrix& a) {
  Json out{{"shape", shape_to_json(a.shape())}, {"parity", to_string(a.parity())}};
  if (a.shape().is_queer()) {
    out["qtr"] = scalar_to_json(qtr(a));
    // qet needs an invertible body of the even part.
    if (sgn(determinant(a.body())) != 0) out["qet"] = scalar_to_json(qet(a));
  } else if (a.parity() != ParityClass::Any) {
    out["str"] = scalar_to_json(supertrace(a));
  }
  if (has_tau_family(a)) {
    Json t = Json::array();
    for (const auto& v : taus(a, 2 * static_cast<unsigned>(family_rank(a)))) t.push_back(scalar_to_json(v));
    out["tau"] = t;
  }
  return out;
}

std::string invariants_text(const SuperMatrix& a) {
  std::ostringstream os;
  os << to_string(a.shape()) << " " << to_string(a.parity()) << "\n";
  if (a.shape().is_queer()) {
    os << "qtr = " << scalar_text(qtr(a)) << "\n";
    if (sgn(determinant(a.body())) != 0) os << "qet = " << scalar_text(qet(a)) << "\n";
  } else if (a.parity() != ParityClass::Any) {
    os << "str = " << scalar_text(supertrace(a)) << "\n";
  }
  if (has_tau_family(a)) {
    const auto t = taus(a, 2 * static_cast<unsigned>(family_rank(a)));
    for (std::size_t k = 0; k < t.size(); ++k) os << "tau_" << k + 1 << " = " << scalar_text(t[k]) << "\n";
  }
  return os.str();
}

std::string decomposition_text(const DecompositionRecord& r) {
  std::ostringstream os;
  const auto& d = r.decomposition;
  os << "mode " << to_string(r.mode) << "\nconjugator\n" << to_string(d.conjugator.matrix());
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    os << "block " << k + 1 << " on {";
    for (std::size_t i = 0; i < d.partition[k].size(); ++i) os << (i ? "," : "") << d.partition[k][i] + 1;
    os << "}";
    if (r.mode != ReduceMode::Antidiag) os << " eigenvalue " << to_string(d.blocks[k].eigenvalue);
    os << "\n" << to_string(d.blocks[k].block);
  }
  return os.str();
}

Json semi_report(const SuperMatrix& a) {
  const EigenData e = eigendata(a);
  Json pairs = Json::array();
  for (const auto& [x, al] : e.pairs) pairs.push_back(Json{{"a", scalar_to_json(x)}, {"alpha", scalar_to_json(al)}});
  Json s = Json::array();
  for (const auto& v : compute_s(a).s) s.push_back(scalar_to_json(v));
  const SignConventions c = s_body_conventions(a);
  Json rec = Json::array(), chr = Json::array();
  for (const auto& v : c.recurrence) rec.push_back(to_string(v));
  for (const auto& v : c.characteristic) chr.push_back(to_string(v));
  return Json{{"eigendata", pairs},
              {"s", s},
              {"body_conventions",
               {{"recurrence", rec},
                {"characteristic", chr},
                {"recurrence_matches", c.recurrence_matches},
                {"characteristic_matches", c.characteristic_matches}}}};
}

void apply_q_cap() {
  if (const char* env = std::getenv("SUPERINV_Q_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > static_cast<long>(kMaxGenerators)) {
      throw Error(Errc::GeneratorCap, "SUPERINV_Q_CAP must be an integer in 0..32");
    }
    set_generator_cap(static_cast<unsigned>(v));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants and canonical forms of supermatrices over Grassmann algebras"};
  app.require_subcommand(1);
  Output out;
  std::string format = "json";
  app.add_option("--out,-o", out.path, "Output file (default: standard output)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::string input, second;
  auto* inv = app.add_subcommand("invariants", "qtr, qet, str and tau_1..tau_2n of a matrix file");
  inv->add_option("matrix", input, "Matrix JSON file")->required();

  std::string mode = "blockdiag";
  auto* red = app.add_subcommand("reduce", "Canonical form of a matrix file");
  red->add_option("matrix", input, "Matrix JSON file")->required();
  red->add_option("--mode", mode, "Reduction")->check(CLI::IsMember({"blockdiag", "diagonalize", "odd", "antidiag"}));

  auto* chk = app.add_subcommand("check-decomposition", "Re-verify a decomposition file");
  chk->add_option("decomposition", input, "Decomposition JSON file")->required();

  auto* semi = app.add_subcommand("semi-invariants", "Eigendata and s_1..s_n of a matrix file");
  semi->add_option("matrix", input, "Matrix JSON file")->required();

  auto* eval = app.add_subcommand("evaluate", "Value of a balanced expression on a matrix");
  eval->add_option("matrix", input, "Matrix JSON file")->required();
  eval->add_option("expression", second, "Balanced expression JSON file")->required();

  auto* rw = app.add_subcommand("rewrite", "Express a symmetric polynomial in t_k and tau_k");
  rw->add_option("polynomial", input, "Polynomial JSON file")->required();

  auto* nf = app.add_subcommand("normal-form", "tau-monomial normal form of an invariant polynomial");
  nf->add_option("polynomial", input, "Polynomial JSON file")->required();

  auto* bal = app.add_subcommand("balanced", "Check the balance conditions of an expression in (u, xi)");
  bal->add_option("expression", input, "Expression JSON file")->required();
  std::size_t bal_n = 0;
  bal->add_option("--n", bal_n, "Number of variables (default: the expression's n)");

  VerifyOptions vopts;
  std::string suite;
  bool list = false;
  auto* ver = app.add_subcommand("verify", "Run a seeded property suite");
  ver->add_option("suite", suite, "Suite name or \"all\"");
  ver->add_option("--seed", vopts.seed, "Base seed");
  ver->add_option("--trials", vopts.trials, "Trials per randomized claim")->check(CLI::PositiveNumber);
  ver->add_option("--workers", vopts.workers, "Worker threads (default: SUPERINV_WORKERS or all cores)");
  ver->add_flag("--list", list, "List suites and claims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  out.text = format == "text";

  try {
    apply_q_cap();
    if (*inv) {
      const SuperMatrix a = matrix_from_json(read_json_file(input));
      out.text ? out.write(invariants_text(a)) : out.write(invariants_report(a));
    } else if (*red) {
      const SuperMatrix a = matrix_from_json(read_json_file(input));
      const DecompositionRecord r = run_reduction(a, reduce_mode_from_string(mode));
      const Json j = decomposition_to_json(r);
      // The emitted document must load back and re-verify.
      const DecompositionRecord back = decomposition_from_json(Json::parse(j.dump()));
      if (!verify_decomposition(back) || decomposition_to_json(back) != j) {
        std::cerr << "error: emitted decomposition does not re-verify\n";
        return kFailure;
      }
      out.text ? out.write(decomposition_text(r)) : out.write(j);
    } else if (*chk) {
      const DecompositionRecord r = decomposition_from_json(read_json_file(input));
      const bool ok = verify_decomposition(r);
      out.text ? out.write(std::string(ok ? "ok\n" : "mismatch\n"))
               : out.write(Json{{"mode", to_string(r.mode)}, {"verified", ok}});
      return ok ? kPass : kFailure;
    } else if (*semi) {
      const SuperMatrix a = matrix_from_json(read_json_file(input));
      const Json j = semi_report(a);
      if (out.text) {
        std::ostringstream os;
        const EigenData e = eigendata(a);
        for (std::size_t i = 0; i < e.pairs.size(); ++i) {
          os << "a_" << i + 1 << " = " << to_string(e.pairs[i].first) << ", alpha_" << i + 1 << " = "
             << to_string(e.pairs[i].second) << "\n";
        }
        const auto s = compute_s(a).s;
        for (std::size_t i = 0; i < s.size(); ++i) os << "s_" << i + 1 << " = " << to_string(s[i]) << "\n";
        out.write(os.str());
      } else {
        out.write(j);
      }
    } else if (*eval) {
      const SuperMatrix a = matrix_from_json(read_json_file(input));
      const BalancedExpression f = balanced_from_json(read_json_file(second));
      const Grassmann v = evaluate_invariant(a, f);
      out.text ? out.write(to_string(v) + "\n") : out.write(Json{{"value", scalar_to_json(v)}});
    } else if (*rw) {
      const SuperPolynomial f = polynomial_from_json(read_json_file(input));
      const TTauExpression g = rewrite_symmetric(f);
      out.text ? out.write(to_string(g, "u", "xi") + "\n") : out.write(polynomial_to_json(g));
    } else if (*nf) {
      const SuperPolynomial f = polynomial_from_json(read_json_file(input));
      const TauNormalForm form = invariant_normal_form(f);
      if (out.text) {
        std::ostringstream os;
        for (const auto& [idx, c] : form) {
          os << to_string(c);
          for (unsigned i : idx) os << " tau" << i;
          os << "\n";
        }
        out.write(os.str());
      } else {
        Json terms = Json::array();
        for (const auto& [idx, c] : form) terms.push_back(Json{{"tau", idx}, {"coeff", to_string(c)}});
        out.write(Json{{"n", f.even_count()}, {"terms", terms}});
      }
    } else if (*bal) {
      const TTauExpression h = polynomial_from_json(read_json_file(input));
      const std::size_t n = bal_n ? bal_n : h.even_count();
      const BalanceWitness w = is_balanced(h, n);
      if (out.text) {
        out.write(w.balanced ? std::string("balanced\n")
                             : "condition " + std::to_string(w.condition) + " fails: " + to_string(w.residual) + "\n");
      } else {
        Json j{{"balanced", w.balanced}};
        if (!w.balanced) {
          j["condition"] = w.condition;
          j["residual"] = polynomial_to_json(w.residual);
        }
        out.write(j);
      }
      return w.balanced ? kPass : kFailure;
    } else if (*ver) {
      if (list) {
        std::ostringstream os;
        for (const auto& s : suites()) {
          os << s.name << ": " << s.description << "\n";
          for (const auto& c : s.claims) os << "  " << c.id << ": " << c.description << "\n";
        }
        out.write(os.str());
        return kPass;
      }
      if (suite.empty()) {
        std::cerr << "error: verify needs a suite name (see --list)\n";
        return kUsage;
      }
      if (!is_suite(suite)) {
        std::cerr << "error: unknown suite \"" << suite << "\" (see --list)\n";
        return kUsage;
      }
      const auto results = run_suite(suite, vopts);
      out.write(render_report(suite, results, vopts, !out.text));
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
      return ok ? kPass : kFailure;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_precondition(e.code()) ? kPrecondition : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailure;
  }
  return kPass;
}
