// Acceptance run: each criterion is a set of verification claims with a trial
// budget and a wall-clock limit. Prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "superinv/verification.hpp"

using namespace superinv;

namespace {

struct Item {
  std::string suite;
  std::string claim;
  unsigned trials;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::vector<Item> items;
};

const std::vector<Criterion> kCriteria = {
    {1, "Grassmann kernel, 1000 samples per identity, q <= 8", 10,
     {{"grassmann-kernel", "supercommutativity", 1000},
      {"grassmann-kernel", "associativity", 1000},
      {"grassmann-kernel", "body-homomorphism", 1000},
      {"grassmann-kernel", "invert-multiply-back", 1000}}},
    {2, "qtr, qet, tau invariance under 200 conjugations each", 60,
     {{"invariance", "qtr-conjugation", 200},
      {"invariance", "qet-conjugation", 200},
      {"invariance", "tau-queer-conjugation", 200},
      {"invariance", "tau-odd-conjugation", 200}}},
    {3, "block_diagonalize, diagonalize, reduce_odd plug-back on 100 matrices each", 120,
     {{"block-diagonalization", "block-diagonalize-queer", 100},
      {"block-diagonalization", "diagonalize-queer", 100},
      {"block-diagonalization", "reduce-odd", 100},
      {"block-diagonalization", "odd-1x1-identity", 1}}},
    {4, "Vandermonde adjoint identity, symbolic n <= 4 and 100 numeric tuples", 5,
     {{"vandermonde-adjoint", "symbolic", 1}, {"vandermonde-adjoint", "numeric", 100}}},
    {5, "(t, tau) rewrite round trip on 50 symmetric polynomials with double solve", 60,
     {{"symmetric-rewrite", "worked-examples", 1},
      {"symmetric-rewrite", "round-trip-symmetrized", 50},
      {"symmetric-rewrite", "uniqueness", 50}}},
    {6, "tau products of length n+1 vanish; tau monomials are independent", 30,
     {{"tau-relations", "product-vanishing", 1}, {"tau-relations", "linear-independence", 1}}},
    {7, "recurrence on 100 matrices, closed form agrees over the corpus, n = 2 qet", 120,
     {{"semi-invariants", "recurrence", 100},
      {"semi-invariants", "closed-form-dual-route", 50},
      {"semi-invariants", "qet-two-example", 1}}},
    {8, "matching pairs indistinguishable, mismatching pairs distinguished, 50 each", 60,
     {{"indistinguishability", "matching-pairs", 50},
      {"indistinguishability", "odd-rank-one", 50},
      {"indistinguishability", "mismatching-pairs", 50}}},
    {9, "antidiagonalization on 50 random conjugates plus the displayed identity", 30,
     {{"antidiagonalization", "displayed-identities", 1}, {"antidiagonalization", "random-conjugates", 50}}},
    {10, "l-invariants fixed under 50 conjugations, n <= 3", 30, {{"l-invariants", "conjugation", 50}}},
    {11, "span of tau_1..tau_2n products grows with n", 30, {{"tau-relations", "span-dimension-growth", 1}}},
};

std::pair<const Suite*, const Claim*> find(const Item& it) {
  for (const auto& s : suites()) {
    if (s.name != it.suite) continue;
    for (const auto& c : s.claims)
      if (c.id == it.claim) return {&s, &c};
  }
  throw std::invalid_argument("no claim " + it.suite + "/" + it.claim);
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20241;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  const auto total_start = std::chrono::steady_clock::now();
  for (const auto& cr : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> problems;
    unsigned trials = 0;
    for (const auto& it : cr.items) {
      const auto [suite, claim] = find(it);
      VerifyOptions opts;
      opts.seed = seed;
      opts.trials = it.trials;
      const ClaimResult r = run_claim(*suite, *claim, opts);
      trials += r.trials;
      if (!r.passed) problems.push_back(it.suite + "/" + it.claim + ": " + r.counterexample.value_or("failed"));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= cr.limit_seconds) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "took %.2f s, limit %.0f s", secs, cr.limit_seconds);
      problems.emplace_back(buf);
    }
    const bool ok = problems.empty();
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s (%u trials, %.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", cr.id,
                cr.title.c_str(), trials, secs, cr.limit_seconds);
    for (const auto& p : problems) std::printf("     %s\n", p.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - total_start).count();
  std::printf("%zu/%zu criteria passed, seed %llu, %.2f s\n", kCriteria.size() - failed, kCriteria.size(),
              static_cast<unsigned long long>(seed), total);
  return failed ? 1 : 0;
}
