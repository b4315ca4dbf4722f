// SPDX-License-Identifier: Apache-2.0

#include "vlprep/prefalign.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "vlprep/error.hpp"

namespace vlprep::pref {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InputError(std::string(what) + " must be finite");
  }
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InputError("beta must be finite and > 0");
  }
}

}  // namespace

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void validate_sample(const ResponseSample& sample) {
  if (sample.prompt_id.empty()) {
    throw InputError("sample without prompt_id");
  }
  for (const auto& [value, name] :
       {std::pair{sample.logp_policy, "logp_policy"},
        std::pair{sample.logp_ref, "logp_ref"}}) {
    if (value && (!std::isfinite(*value) || *value > 0.0)) {
      throw InputError(std::string(name) + " of " + sample.prompt_id +
                       " must be finite and <= 0");
    }
  }
  if (sample.score && !std::isfinite(*sample.score)) {
    throw InputError("score of " + sample.prompt_id + " must be finite");
  }
}

PairingResult build_pairs(std::span<const ResponseSample> samples,
                          double min_gap) {
  require_finite(min_gap, "min_gap");
  PairingResult result;
  std::map<std::string, std::vector<const ResponseSample*>> by_prompt;
  std::set<std::pair<std::string, std::int64_t>> seen;
  for (const auto& s : samples) {
    validate_sample(s);
    if (!seen.emplace(s.prompt_id, s.seed).second) {
      throw InputError("duplicate sample (" + s.prompt_id + ", seed " +
                       std::to_string(s.seed) + ")");
    }
    if (!s.score) {
      result.diagnostics.push_back("prompt " + s.prompt_id + " seed " +
                                   std::to_string(s.seed) +
                                   ": no score, sample ignored");
      continue;
    }
    by_prompt[s.prompt_id].push_back(&s);
  }

  for (auto& [prompt_id, group] : by_prompt) {
    if (group.size() < 2) {
      result.diagnostics.push_back("prompt " + prompt_id +
                                   ": fewer than 2 scored samples, skipped");
      continue;
    }
    std::sort(group.begin(), group.end(),
              [](const ResponseSample* a, const ResponseSample* b) {
                return a->seed < b->seed;
              });
    const ResponseSample* best = group.front();
    const ResponseSample* worst = group.front();
    for (const ResponseSample* s : group) {
      if (*s->score > *best->score) best = s;
      if (*s->score < *worst->score) worst = s;
    }
    const double gap = *best->score - *worst->score;
    if (best == worst || gap < min_gap) {
      continue;
    }
    result.pairs.push_back({prompt_id, *best, *worst, gap});
  }
  return result;
}

DpoResult dpo_loss(double logp_policy_chosen, double logp_ref_chosen,
                   double logp_policy_rejected, double logp_ref_rejected,
                   double beta) {
  require_finite(logp_policy_chosen, "logp_policy_chosen");
  require_finite(logp_ref_chosen, "logp_ref_chosen");
  require_finite(logp_policy_rejected, "logp_policy_rejected");
  require_finite(logp_ref_rejected, "logp_ref_rejected");
  require_beta(beta);

  DpoResult r;
  const double ratio_chosen = logp_policy_chosen - logp_ref_chosen;
  const double ratio_rejected = logp_policy_rejected - logp_ref_rejected;
  r.z = beta * (ratio_chosen - ratio_rejected);
  r.loss = softplus(-r.z);
  // d/dz softplus(-z) = -sigmoid(-z) = sigmoid(z) - 1.
  const double slope = sigmoid(-r.z);
  r.grad_policy_chosen = -beta * slope;
  r.grad_policy_rejected = beta * slope;
  r.reward_chosen = beta * ratio_chosen;
  r.reward_rejected = beta * ratio_rejected;
  return r;
}

DpoResult dpo_loss(const PreferencePair& pair, double beta) {
  const auto& w = pair.chosen;
  const auto& l = pair.rejected;
  if (!w.logp_policy || !w.logp_ref || !l.logp_policy || !l.logp_ref) {
    throw InputError("pair for prompt " + pair.prompt_id +
                     " is missing log-probabilities");
  }
  return dpo_loss(*w.logp_policy, *w.logp_ref, *l.logp_policy, *l.logp_ref,
                  beta);
}

BatchStats dpo_batch(std::span<const PreferencePair> pairs, double beta) {
  if (pairs.empty()) {
    throw InputError("empty batch");
  }
  require_beta(beta);
  BatchStats stats;
  stats.count = pairs.size();
  double loss_sum = 0.0;
  double margin_sum = 0.0;
  std::size_t correct = 0;
  for (const auto& pair : pairs) {
    const DpoResult r = dpo_loss(pair, beta);
    loss_sum += r.loss;
    margin_sum += r.z / beta;
    if (r.z > 0.0) ++correct;
  }
  const double n = static_cast<double>(pairs.size());
  stats.mean_loss = loss_sum / n;
  stats.accuracy = static_cast<double>(correct) / n;
  stats.mean_margin = margin_sum / n;
  return stats;
}

double grad_check(const DpoPoint& p, double beta, double step) {
  if (!(step > 0.0)) {
    throw InputError("finite-difference step must be > 0");
  }
  const DpoResult analytic =
      dpo_loss(p.logp_policy_chosen, p.logp_ref_chosen, p.logp_policy_rejected,
               p.logp_ref_rejected, beta);
  auto loss_at = [&](double chosen, double rejected) {
    return dpo_loss(chosen, p.logp_ref_chosen, rejected, p.logp_ref_rejected,
                    beta)
        .loss;
  };
  const double fd_chosen = (loss_at(p.logp_policy_chosen + step, p.logp_policy_rejected) -
                            loss_at(p.logp_policy_chosen - step, p.logp_policy_rejected)) /
                           (2.0 * step);
  const double fd_rejected = (loss_at(p.logp_policy_chosen, p.logp_policy_rejected + step) -
                              loss_at(p.logp_policy_chosen, p.logp_policy_rejected - step)) /
                             (2.0 * step);
  auto rel = [](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
  };
  return std::max(rel(analytic.grad_policy_chosen, fd_chosen),
                  rel(analytic.grad_policy_rejected, fd_rejected));
}

}  // namespace vlprep::pref
