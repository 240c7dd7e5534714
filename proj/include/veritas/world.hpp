// Deterministic synthetic world generation from a scenario config.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "veritas/config.hpp"
#include "veritas/rng.hpp"
#include "veritas/types.hpp"

namespace veritas {

namespace detail {

inline std::string padded_id(char prefix, std::size_t index, std::size_t count) {
  std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(index);
  return prefix + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

inline double draw_evidence(const EvidenceConfig& cfg, Stance truth, RngStream& rng) {
  double e = cfg.kind == EvidenceConfig::Kind::Gaussian
                 ? cfg.mean + cfg.stddev * rng.gaussian()
                 : rng.uniform(cfg.lo, cfg.hi);
  e = std::clamp(e, -1.0, 1.0);
  // With probability `align`, force the evidence to support the truth.
  if (rng.bernoulli(cfg.align)) e = std::abs(e) * stance_sign(truth);
  return e;
}

}  // namespace detail

// Build the full synthetic world for (config, seed).  The same inputs
// always produce a byte-identical world; claims are assigned to realms
// round-robin in declaration order.
inline World generate_world(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();

  World world;
  RngStream root(seed);

  std::size_t n_claims = std::size_t(config.world.claims);
  world.claims.reserve(n_claims);
  RngStream claim_gen = root.child("world", "claims");
  for (std::size_t i = 0; i < n_claims; ++i) {
    const RealmConfig& realm = config.world.realms[i % config.world.realms.size()];
    LatentClaim claim;
    claim.id = detail::padded_id('c', i, n_claims);
    claim.realm = realm.name;
    RngStream rng = claim_gen.child("claim", claim.id);
    claim.truth = rng.bernoulli(realm.truth_marginal) ? Stance::Top : Stance::Bottom;
    claim.evidence = detail::draw_evidence(realm.evidence, claim.truth, rng);
    world.claims.push_back(std::move(claim));
  }
  world.reindex();

  world.sources = config.sources;

  std::size_t n_verifiers = std::size_t(config.verifiers.count);
  world.verifiers.reserve(n_verifiers);
  RngStream verifier_gen = root.child("world", "verifiers");
  for (std::size_t i = 0; i < n_verifiers; ++i) {
    VerifierSpec v;
    v.id = detail::padded_id('v', i, n_verifiers);
    RngStream rng = verifier_gen.child("verifier", v.id);
    v.acuity = rng.uniform(config.verifiers.acuity_min, config.verifiers.acuity_max);
    v.bias = rng.uniform(config.verifiers.bias_min, config.verifiers.bias_max);
    v.clamp_eps = config.verifiers.clamp;
    world.verifiers.push_back(std::move(v));
  }

  return world;
}

// Canonical JSON snapshot of a world; equal worlds serialize to equal bytes.
inline nlohmann::json world_to_json(const World& world) {
  nlohmann::json claims = nlohmann::json::array();
  for (const LatentClaim& c : world.claims)
    claims.push_back({{"id", c.id},
                      {"realm", c.realm},
                      {"truth", std::string(to_string(c.truth))},
                      {"evidence", c.evidence}});
  nlohmann::json sources = nlohmann::json::array();
  for (const SourceSpec& s : world.sources)
    sources.push_back({{"id", s.id},
                       {"fidelity", s.fidelity},
                       {"augmentation", s.augmentation},
                       {"bias", s.bias},
                       {"completeness", s.completeness},
                       {"stance_noise", s.stance_noise},
                       {"perception_jitter", s.perception_jitter}});
  nlohmann::json verifiers = nlohmann::json::array();
  for (const VerifierSpec& v : world.verifiers)
    verifiers.push_back({{"id", v.id},
                         {"acuity", v.acuity},
                         {"bias", v.bias},
                         {"clamp_eps", v.clamp_eps}});
  return {{"claims", claims}, {"sources", sources}, {"verifiers", verifiers}};
}

}  // namespace veritas
