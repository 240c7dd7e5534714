// Perception, self-assessment, and single-verifier vote primitives.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "veritas/rng.hpp"
#include "veritas/types.hpp"

namespace veritas {

// Distort a claim through a source's channel:
//   e' = clamp(fidelity * e + augmentation * tau + bias + jitter, -1, +1)
// where tau is +1/-1 for a Top/Bottom truth.  Always consumes the same
// number of draws regardless of parameters, so streams stay aligned.
inline PerceptionArtifact perceive(const SourceSpec& source, const LatentClaim& claim,
                                   RngStream& rng) {
  double tau = stance_sign(claim.truth);
  double jitter = source.perception_jitter * rng.gaussian();
  double distorted = std::clamp(
      source.fidelity * claim.evidence + source.augmentation * tau + source.bias + jitter,
      -1.0, 1.0);
  return PerceptionArtifact{source.id, claim.id, distorted, source.completeness};
}

// The source's own declared stance: the sign of its perceived evidence,
// flipped with probability stance_noise.
inline Stance self_assess(const SourceSpec& source, const PerceptionArtifact& artifact,
                          RngStream& rng) {
  if (artifact.source_id != source.id)
    throw std::invalid_argument("self_assess: artifact was not produced by this source");
  Stance stance = sign_stance(artifact.evidence);
  return rng.bernoulli(source.stance_noise) ? negate(stance) : stance;
}

// Total evidence a panel sees in a bundle.  A bare claim contributes its
// latent evidence; artifacts contribute their full distorted evidence when
// the bare claim accompanies them, and only completeness * evidence alone.
inline double bundle_evidence(const Bundle& bundle, const World& world) {
  if (bundle.empty()) throw std::invalid_argument("bundle_evidence: bundle is empty");
  double total = 0.0;
  bool has_claim = bundle.claim_id.has_value();
  if (has_claim) total += world.claim(*bundle.claim_id).evidence;
  for (const PerceptionArtifact& a : bundle.artifacts)
    total += has_claim ? a.evidence : a.completeness * a.evidence;
  return total;
}

// Probability that a verifier votes Top given total bundle evidence E:
//   clamp(logistic(acuity * (E + bias)), eps, 1 - eps).
inline double vote_probability(const VerifierSpec& verifier, double evidence) {
  double p = 1.0 / (1.0 + std::exp(-verifier.acuity * (evidence + verifier.bias)));
  return std::clamp(p, verifier.clamp_eps, 1.0 - verifier.clamp_eps);
}

inline Stance verifier_assess(const VerifierSpec& verifier, const Bundle& bundle,
                              const World& world, RngStream& rng) {
  double p = vote_probability(verifier, bundle_evidence(bundle, world));
  return rng.bernoulli(p) ? Stance::Top : Stance::Bottom;
}

}  // namespace veritas
