// Pluggable truth aggregation over verifier panels, plus Monte-Carlo
// consensus estimation with replicated panel draws.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "veritas/core.hpp"
#include "veritas/rng.hpp"
#include "veritas/types.hpp"

namespace veritas {

enum class OutcomeStance : std::uint8_t { Top, Bottom, Contested };

inline std::string_view to_string(OutcomeStance s) {
  switch (s) {
    case OutcomeStance::Top: return "top";
    case OutcomeStance::Bottom: return "bottom";
    default: return "contested";
  }
}

// Panel verdict.  margin is the winning weight share rescaled to [0, 1]
// (2 * share - 1); Contested outcomes always carry margin 0.
struct AggregateOutcome {
  OutcomeStance stance = OutcomeStance::Contested;
  double margin = 0.0;
};

struct AggregationRule {
  enum class Kind { Majority, SuperMajority, Unanimous, ReputationWeighted, Bayesian };

  Kind kind = Kind::Majority;
  double quota = 0.75;    // SuperMajority: winning share must reach this
  double damping = 0.5;   // ReputationWeighted fixed point step size
  int max_iters = 50;     // ReputationWeighted iteration cap
  double tol = 1e-6;      // ReputationWeighted convergence tolerance
  double alpha0 = 1.0;    // Bayesian Beta prior
  double beta0 = 1.0;

  static AggregationRule majority() { return {}; }

  static AggregationRule supermajority(double quota) {
    AggregationRule r;
    r.kind = Kind::SuperMajority;
    r.quota = quota;
    return r;
  }

  static AggregationRule unanimous() {
    AggregationRule r;
    r.kind = Kind::Unanimous;
    return r;
  }

  static AggregationRule reputation_weighted(double damping = 0.5, int max_iters = 50,
                                             double tol = 1e-6) {
    AggregationRule r;
    r.kind = Kind::ReputationWeighted;
    r.damping = damping;
    r.max_iters = max_iters;
    r.tol = tol;
    return r;
  }

  static AggregationRule bayesian(double alpha0 = 1.0, double beta0 = 1.0) {
    AggregationRule r;
    r.kind = Kind::Bayesian;
    r.alpha0 = alpha0;
    r.beta0 = beta0;
    return r;
  }

  void validate(const std::string& field = "rule") const {
    switch (kind) {
      case Kind::SuperMajority:
        detail::require(quota > 0.5 && quota <= 1.0, field + ".quota",
                        "must lie in (0.5, 1]");
        break;
      case Kind::ReputationWeighted:
        detail::require(damping > 0.0 && damping <= 1.0, field + ".damping",
                        "must lie in (0, 1]");
        detail::require(max_iters >= 1, field + ".max_iters", "must be at least 1");
        detail::require(tol > 0.0, field + ".tol", "must be positive");
        break;
      case Kind::Bayesian:
        detail::require(alpha0 > 0.0, field + ".alpha0", "must be positive");
        detail::require(beta0 > 0.0, field + ".beta0", "must be positive");
        break;
      default:
        break;
    }
  }
};

inline std::string_view rule_name(AggregationRule::Kind kind) {
  switch (kind) {
    case AggregationRule::Kind::Majority: return "majority";
    case AggregationRule::Kind::SuperMajority: return "supermajority";
    case AggregationRule::Kind::Unanimous: return "unanimous";
    case AggregationRule::Kind::ReputationWeighted: return "reputation_weighted";
    default: return "bayesian";
  }
}

inline AggregationRule::Kind rule_kind_from_string(std::string_view name) {
  if (name == "majority") return AggregationRule::Kind::Majority;
  if (name == "supermajority") return AggregationRule::Kind::SuperMajority;
  if (name == "unanimous") return AggregationRule::Kind::Unanimous;
  if (name == "reputation_weighted") return AggregationRule::Kind::ReputationWeighted;
  if (name == "bayesian") return AggregationRule::Kind::Bayesian;
  throw ValidationError("rule.kind", "unknown aggregation rule '" + std::string(name) + "'");
}

// Agreement in half-units so replicate tallies stay exact integers:
// 2 = agree, 1 = Contested on one side, 0 = disagree.
inline int agreement2(Stance stance, const AggregateOutcome& outcome) {
  if (outcome.stance == OutcomeStance::Contested) return 1;
  bool top = outcome.stance == OutcomeStance::Top;
  return (stance == Stance::Top) == top ? 2 : 0;
}

// Same scale for outcome-vs-outcome agreement; two Contested outcomes agree.
inline int outcome_agreement2(const AggregateOutcome& a, const AggregateOutcome& b) {
  if (a.stance == b.stance) return 2;
  if (a.stance == OutcomeStance::Contested || b.stance == OutcomeStance::Contested) return 1;
  return 0;
}

// Half-units of "outcome is Top": Top = 2, Contested = 1, Bottom = 0.
inline int outcome_top2(const AggregateOutcome& outcome) {
  switch (outcome.stance) {
    case OutcomeStance::Top: return 2;
    case OutcomeStance::Contested: return 1;
    default: return 0;
  }
}

namespace detail {

inline AggregateOutcome weighted_verdict(double weight_top, double weight_bottom,
                                         const AggregationRule& rule) {
  double total = weight_top + weight_bottom;
  if (total <= 0.0) return {OutcomeStance::Contested, 0.0};

  auto winner = [&](OutcomeStance stance, double share) {
    return AggregateOutcome{stance, std::clamp(2.0 * share - 1.0, 0.0, 1.0)};
  };

  switch (rule.kind) {
    case AggregationRule::Kind::SuperMajority: {
      if (weight_top / total >= rule.quota)
        return winner(OutcomeStance::Top, weight_top / total);
      if (weight_bottom / total >= rule.quota)
        return winner(OutcomeStance::Bottom, weight_bottom / total);
      return {OutcomeStance::Contested, 0.0};
    }
    case AggregationRule::Kind::Unanimous: {
      if (weight_bottom == 0.0) return winner(OutcomeStance::Top, 1.0);
      if (weight_top == 0.0) return winner(OutcomeStance::Bottom, 1.0);
      return {OutcomeStance::Contested, 0.0};
    }
    default: {  // Majority and weighted variants
      if (weight_top > weight_bottom) return winner(OutcomeStance::Top, weight_top / total);
      if (weight_bottom > weight_top)
        return winner(OutcomeStance::Bottom, weight_bottom / total);
      return {OutcomeStance::Contested, 0.0};
    }
  }
}

}  // namespace detail

// Fold a vote list into a verdict.  Weights, when given, must be
// non-negative and one per vote; they are required for ReputationWeighted
// (which then behaves as a weighted majority) and ignored by Bayesian,
// whose posterior is over raw vote counts.
inline AggregateOutcome aggregate_votes(std::span<const Stance> votes,
                                        const AggregationRule& rule,
                                        std::span<const double> weights = {}) {
  rule.validate();
  if (!weights.empty() && weights.size() != votes.size())
    throw std::invalid_argument("aggregate_votes: weights must match votes one to one");
  for (double w : weights)
    if (w < 0.0 || !std::isfinite(w))
      throw std::invalid_argument("aggregate_votes: weights must be finite and non-negative");
  if (rule.kind == AggregationRule::Kind::ReputationWeighted && weights.empty())
    throw std::invalid_argument("aggregate_votes: reputation_weighted requires weights");

  if (rule.kind == AggregationRule::Kind::Bayesian) {
    double alpha = rule.alpha0;
    double beta = rule.beta0;
    for (Stance v : votes) (v == Stance::Top ? alpha : beta) += 1.0;
    double mean = alpha / (alpha + beta);
    if (mean > 0.5) return {OutcomeStance::Top, 2.0 * mean - 1.0};
    if (mean < 0.5) return {OutcomeStance::Bottom, 1.0 - 2.0 * mean};
    return {OutcomeStance::Contested, 0.0};
  }

  double weight_top = 0.0;
  double weight_bottom = 0.0;
  for (std::size_t i = 0; i < votes.size(); ++i) {
    double w = weights.empty() ? 1.0 : weights[i];
    (votes[i] == Stance::Top ? weight_top : weight_bottom) += w;
  }
  return detail::weighted_verdict(weight_top, weight_bottom, rule);
}

// Weighted majority over named votes with externally supplied reputations.
// Reputations map to weights via max(0, R); a vote whose source has no
// reputation entry is an error, and all-zero weight mass is Contested.
inline AggregateOutcome reputation_weighted_consensus(
    std::span<const std::pair<std::string, Stance>> votes,
    const std::map<std::string, double>& reputations) {
  std::vector<Stance> stances;
  std::vector<double> weights;
  stances.reserve(votes.size());
  weights.reserve(votes.size());
  for (const auto& [id, stance] : votes) {
    auto it = reputations.find(id);
    if (it == reputations.end())
      throw std::invalid_argument("reputation_weighted_consensus: no reputation for '" + id +
                                  "'");
    stances.push_back(stance);
    weights.push_back(std::max(0.0, it->second));
  }
  return aggregate_votes(stances, AggregationRule::majority(), weights);
}

// Self-referential reputation weighting for a single anonymous panel:
// start every voter at weight 1, take the weighted majority, move each
// reputation toward +1/-1 by agreement (0 when Contested) with the rule's
// damping, and repeat until the largest step falls under tol.
struct FixedPointReport {
  AggregateOutcome outcome;
  bool converged = false;
  int iterations = 0;
  std::vector<double> reputations;
};

inline FixedPointReport reputation_weighted_fixed_point(std::span<const Stance> votes,
                                                        const AggregationRule& rule) {
  rule.validate();
  std::vector<double> reputation(votes.size(), 1.0);
  std::vector<double> weights(votes.size(), 1.0);
  AggregationRule majority = AggregationRule::majority();

  bool converged = votes.empty();
  int iterations = 0;
  for (int iter = 1; iter <= rule.max_iters && !converged; ++iter) {
    iterations = iter;
    AggregateOutcome outcome = aggregate_votes(votes, majority, weights);
    double step = 0.0;
    for (std::size_t i = 0; i < votes.size(); ++i) {
      double raw = 0.0;
      if (outcome.stance != OutcomeStance::Contested)
        raw = agreement2(votes[i], outcome) == 2 ? 1.0 : -1.0;
      double next = (1.0 - rule.damping) * reputation[i] + rule.damping * raw;
      step = std::max(step, std::abs(next - reputation[i]));
      reputation[i] = next;
      weights[i] = std::max(0.0, next);
    }
    converged = step <= rule.tol;
  }

  FixedPointReport report;
  report.converged = converged;
  report.iterations = iterations;
  report.reputations = std::move(reputation);
  report.outcome = converged ? aggregate_votes(votes, majority, weights)
                             : AggregateOutcome{OutcomeStance::Contested, 0.0};
  return report;
}

// One panel, one verdict: every panelist votes on the bundle's pooled
// evidence, then the rule folds the votes.
inline AggregateOutcome estimate_truth_n(const Bundle& bundle,
                                         std::span<const VerifierSpec> panel,
                                         const AggregationRule& rule, const World& world,
                                         RngStream& rng) {
  if (panel.empty()) throw std::invalid_argument("estimate_truth_n: panel is empty");
  double evidence = bundle_evidence(bundle, world);
  std::vector<Stance> votes;
  votes.reserve(panel.size());
  for (const VerifierSpec& v : panel)
    votes.push_back(rng.bernoulli(vote_probability(v, evidence)) ? Stance::Top
                                                                 : Stance::Bottom);
  if (rule.kind == AggregationRule::Kind::ReputationWeighted)
    return reputation_weighted_fixed_point(votes, rule).outcome;
  return aggregate_votes(votes, rule);
}

// Monte-Carlo estimate of Pr{panel verdict = Top} with Contested counted
// as half a Top.
struct ConsensusEstimate {
  double p_top = 0.0;
  int replicates = 0;
  double standard_error = 0.0;
};

inline ConsensusEstimate make_consensus_estimate(long top2, int replicates) {
  double p = double(top2) / (2.0 * replicates);
  return ConsensusEstimate{p, replicates, std::sqrt(p * (1.0 - p) / replicates)};
}

// Replicated estimation: each replicate draws a fresh i.i.d. panel of
// `panel_size` from the world's verifier population and re-votes.
inline ConsensusEstimate estimate_consensus(const Bundle& bundle, int panel_size,
                                            const AggregationRule& rule, int replicates,
                                            const World& world, RngStream& rng) {
  if (panel_size < 1) throw std::invalid_argument("estimate_consensus: panel_size < 1");
  if (replicates < 1) throw std::invalid_argument("estimate_consensus: replicates < 1");
  if (world.verifiers.empty())
    throw std::invalid_argument("estimate_consensus: world has no verifiers");

  double evidence = bundle_evidence(bundle, world);
  std::vector<Stance> votes(panel_size);
  long top2 = 0;
  for (int m = 0; m < replicates; ++m) {
    RngStream rep = rng.child("replicate", {}, std::uint64_t(m));
    for (int j = 0; j < panel_size; ++j) {
      const VerifierSpec& v = world.verifiers[rep.uniform_index(world.verifiers.size())];
      votes[j] = rep.bernoulli(vote_probability(v, evidence)) ? Stance::Top : Stance::Bottom;
    }
    AggregateOutcome outcome =
        rule.kind == AggregationRule::Kind::ReputationWeighted
            ? reputation_weighted_fixed_point(votes, rule).outcome
            : aggregate_votes(votes, rule);
    top2 += outcome_top2(outcome);
  }
  return make_consensus_estimate(top2, replicates);
}

}  // namespace veritas
