// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vlprep::pref {

inline constexpr double kDefaultBeta = 0.1;

struct PromptRecord {
  std::string prompt_id;
  std::string prompt;
  bool augmented = false;
};

struct ResponseSample {
  std::string prompt_id;
  std::int64_t seed = 0;
  std::string text;
  std::optional<double> score;
  std::optional<double> logp_policy;
  std::optional<double> logp_ref;
};

struct PreferencePair {
  std::string prompt_id;
  ResponseSample chosen;
  ResponseSample rejected;
  double gap = 0.0;
};

struct PairingResult {
  std::vector<PreferencePair> pairs;  // sorted by prompt_id
  std::vector<std::string> diagnostics;
};

// Scores ahead of log-probabilities: per prompt the best-scored sample is
// chosen and the worst rejected, ties going to the smaller seed. A pair is
// emitted when the gap reaches min_gap.
PairingResult build_pairs(std::span<const ResponseSample> samples,
                          double min_gap);

struct DpoResult {
  double loss = 0.0;
  double z = 0.0;  // beta * (chosen log-ratio - rejected log-ratio)
  double grad_policy_chosen = 0.0;
  double grad_policy_rejected = 0.0;
  double reward_chosen = 0.0;
  double reward_rejected = 0.0;
};

// softplus(t) = ln(1 + e^t), evaluated without overflow.
double softplus(double t);
double sigmoid(double t);

DpoResult dpo_loss(double logp_policy_chosen, double logp_ref_chosen,
                   double logp_policy_rejected, double logp_ref_rejected,
                   double beta);

DpoResult dpo_loss(const PreferencePair& pair, double beta);

struct BatchStats {
  std::size_t count = 0;
  double mean_loss = 0.0;
  double accuracy = 0.0;
  double mean_margin = 0.0;
};

BatchStats dpo_batch(std::span<const PreferencePair> pairs, double beta);

struct DpoPoint {
  double logp_policy_chosen = 0.0;
  double logp_ref_chosen = 0.0;
  double logp_policy_rejected = 0.0;
  double logp_ref_rejected = 0.0;
};

// Max relative deviation between the analytic policy gradients and central
// finite differences of the loss.
double grad_check(const DpoPoint& point, double beta, double step = 1e-5);

// Throws InputError when a sample breaks the dataset invariants.
void validate_sample(const ResponseSample& sample);

}  // namespace vlprep::pref
