#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moi/json_io.hpp"
#include "moi/linalg.hpp"
#include "moi/moi_eval.hpp"

namespace moi {

struct CampaignConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 20;
  Eigen::Index max_dim = 6;
  Eigen::Index max_width = 3;
  std::vector<std::size_t> arities = {2, 3, 4};
  /// Exponents fed to the projective, Haagerup-main and lemma-row suites.
  std::vector<SchattenExponent> exponents = {SchattenExponent(2.0), SchattenExponent(3.0), SchattenExponent(4.0),
                                             SchattenExponent::infinity()};
  double tol = 1e-9;
  std::size_t duality_queries = 10;
};

/// InvalidInput for empty or degenerate ranges; RangeError when an exponent
/// falls outside a suite's hypotheses. Nothing runs on a rejected config.
void validate(const CampaignConfig& cfg);

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  /// Largest relative error (equivalence suites) or largest ratio (bound suites).
  double worst = 0.0;
  bool pass = true;
  std::optional<std::size_t> failing_trial;
  /// Reproduction document for the first failing trial: an instance file
  /// with extra "suite", "seed" and "trial" keys.
  Json repro;
};

SuiteResult run_oracle_suite(const CampaignConfig& cfg);
SuiteResult run_duality_suite(const CampaignConfig& cfg);
SuiteResult run_projective_suite(const CampaignConfig& cfg);
SuiteResult run_haagerup_main_suite(const CampaignConfig& cfg);
SuiteResult run_haagerup_like_suite(const CampaignConfig& cfg);
SuiteResult run_lemma_row_suite(const CampaignConfig& cfg);
SuiteResult run_representation_suite(const CampaignConfig& cfg);

/// Every suite, in a fixed order. Validates the config first.
std::vector<SuiteResult> run_campaign(const CampaignConfig& cfg);

/// In-range (p, q) pairs for a Haagerup-like kind, drawn from a fixed grid.
std::vector<std::pair<SchattenExponent, SchattenExponent>> haagerup_like_exponent_pairs(HaagerupLikeKind kind);

}  // namespace moi
