#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "superinv/sampling.hpp"
#include "superinv/serialization.hpp"

namespace superinv {

// A property checked over seeded random trials. `check` returns a
// counterexample description, or nullopt when the trial passes. Claims
// without randomness run a single trial.
struct Claim {
  std::string id;
  std::string description;
  bool randomized = true;
  std::function<std::optional<std::string>(Sampler&)> check;
};

struct Suite {
  std::string name;
  std::string description;
  std::vector<Claim> claims;
};

struct ClaimResult {
  std::string suite;
  std::string claim;
  unsigned trials = 0;
  std::uint64_t seed = 0;
  bool passed = true;
  std::optional<std::string> counterexample;  // first failing trial
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned trials = 25;
  unsigned workers = 0;  // 0: SUPERINV_WORKERS, else hardware concurrency
};

const std::vector<Suite>& suites();
// Suite names in run order; "all" is accepted by run_suite as well.
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

// Seed of trial i of one claim; independent of worker scheduling.
std::uint64_t trial_seed(std::uint64_t seed, const std::string& claim, std::uint64_t trial);

ClaimResult run_claim(const Suite& suite, const Claim& claim, const VerifyOptions& opts);
// Throws std::invalid_argument for an unknown suite.
std::vector<ClaimResult> run_suite(const std::string& name, const VerifyOptions& opts);

Json claim_to_json(const ClaimResult& r);
Json summary_to_json(const std::string& suite, const std::vector<ClaimResult>& results,
                     const VerifyOptions& opts);
// One JSON record per line followed by the summary, or aligned text lines.
std::string render_report(const std::string& suite, const std::vector<ClaimResult>& results,
                          const VerifyOptions& opts, bool json);

// Laurent coefficients of lambda^{-1}..lambda^{-count} of qet(lambda - A) for
// queer A, computed by direct series arithmetic on matrices.
std::vector<Grassmann> qet_series_coefficients(const SuperMatrix& a, unsigned count);
// Coefficients of -str (lambda - A)^{-1} for odd A, from powers of A.
std::vector<Grassmann> odd_resolvent_coefficients(const SuperMatrix& a, unsigned count);

}  // namespace superinv
