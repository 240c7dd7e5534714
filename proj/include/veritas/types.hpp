// Value types for synthetic worlds: claims, sources, verifiers,
// perception artifacts, and assessment bundles.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "veritas/stance.hpp"

namespace veritas {

// Thrown whenever a config or parameter fails validation; `field` names
// the offending entry (dotted path for nested config keys).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ValidationError(field, message);
}

}  // namespace detail

// A ground-truth proposition.  `evidence` is the latent signal strength a
// perfectly faithful observer would see; its sign need not match `truth`,
// which is how imperceptible or contested truths arise.
struct LatentClaim {
  std::string id;
  std::string realm;
  Stance truth = Stance::Bottom;
  double evidence = 0.0;

  void validate(const std::string& field = "claim") const {
    detail::require(!id.empty(), field + ".id", "must be non-empty");
    detail::require(!realm.empty(), field + ".realm", "must be non-empty");
    detail::require(evidence >= -1.0 && evidence <= 1.0, field + ".evidence",
                    "must lie in [-1, 1]");
  }
};

// A stochastic observer/reporter channel.
struct SourceSpec {
  std::string id;
  double fidelity = 1.0;           // phi in [0,1]: how much latent evidence survives
  double augmentation = 0.0;       // a in [0,1]: evidence manufactured toward the truth
  double bias = 0.0;               // b in [-1,1]: additive slant
  double completeness = 1.0;       // c in [0,1]: weight of the artifact absent its claim
  double stance_noise = 0.0;       // eta in [0,0.5]: stance flip probability
  double perception_jitter = 0.0;  // sigma >= 0 of the additive perception noise

  void validate(const std::string& field = "source") const {
    detail::require(!id.empty(), field + ".id", "must be non-empty");
    detail::require(fidelity >= 0.0 && fidelity <= 1.0, field + ".fidelity",
                    "must lie in [0, 1]");
    detail::require(augmentation >= 0.0 && augmentation <= 1.0, field + ".augmentation",
                    "must lie in [0, 1]");
    detail::require(bias >= -1.0 && bias <= 1.0, field + ".bias", "must lie in [-1, 1]");
    detail::require(completeness >= 0.0 && completeness <= 1.0, field + ".completeness",
                    "must lie in [0, 1]");
    detail::require(stance_noise >= 0.0 && stance_noise <= 0.5, field + ".stance_noise",
                    "must lie in [0, 0.5]");
    detail::require(perception_jitter >= 0.0, field + ".perception_jitter",
                    "must be non-negative");
  }
};

// A panel member.  Votes Top with probability clamp(logistic(acuity *
// (evidence + bias)), clamp_eps, 1 - clamp_eps).
struct VerifierSpec {
  std::string id;
  double acuity = 1.0;      // kappa > 0
  double bias = 0.0;        // beta in [-1, 1]
  double clamp_eps = 0.01;  // epsilon in (0, 0.5): floor/ceiling on the vote probability

  void validate(const std::string& field = "verifier") const {
    detail::require(!id.empty(), field + ".id", "must be non-empty");
    detail::require(acuity > 0.0, field + ".acuity", "must be positive");
    detail::require(bias >= -1.0 && bias <= 1.0, field + ".bias", "must lie in [-1, 1]");
    detail::require(clamp_eps > 0.0 && clamp_eps < 0.5, field + ".clamp_eps",
                    "must lie in (0, 0.5)");
  }
};

// What a source actually reports about a claim.
struct PerceptionArtifact {
  std::string source_id;
  std::string claim_id;
  double evidence = 0.0;      // distorted evidence in [-1, 1]
  double completeness = 0.0;  // carried over from the source
};

// What a panel is shown: at most one bare claim plus any number of
// perception artifacts.  Must be non-empty to be assessable.
struct Bundle {
  std::optional<std::string> claim_id;
  std::vector<PerceptionArtifact> artifacts;

  bool empty() const { return !claim_id.has_value() && artifacts.empty(); }

  static Bundle of_claim(std::string id) {
    Bundle b;
    b.claim_id = std::move(id);
    return b;
  }

  static Bundle of_artifact(PerceptionArtifact a) {
    Bundle b;
    b.artifacts.push_back(std::move(a));
    return b;
  }

  static Bundle joint(std::string id, PerceptionArtifact a) {
    Bundle b;
    b.claim_id = std::move(id);
    b.artifacts.push_back(std::move(a));
    return b;
  }
};

struct World {
  std::vector<LatentClaim> claims;
  std::vector<SourceSpec> sources;
  std::vector<VerifierSpec> verifiers;

  const LatentClaim& claim(const std::string& id) const {
    auto it = claim_index_.find(id);
    if (it == claim_index_.end())
      throw std::invalid_argument("World::claim: unknown claim '" + id + "'");
    return claims[it->second];
  }

  // Call after mutating `claims` in bulk.
  void reindex() {
    claim_index_.clear();
    claim_index_.reserve(claims.size());
    for (std::size_t i = 0; i < claims.size(); ++i) claim_index_[claims[i].id] = i;
  }

 private:
  std::unordered_map<std::string, std::size_t> claim_index_;
};

}  // namespace veritas
