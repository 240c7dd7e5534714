// Scenario configuration: JSON schema, strict parsing, and validation.
// Unknown keys are rejected and every error names the offending field.
#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "veritas/aggregate.hpp"
#include "veritas/types.hpp"

namespace veritas {

namespace detail {

inline void check_keys(const nlohmann::json& obj,
                       std::initializer_list<std::string_view> allowed,
                       const std::string& context) {
  if (!obj.is_object()) throw ValidationError(context, "must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (std::string_view k : allowed)
      if (key == k) {
        known = true;
        break;
      }
    if (!known) throw ValidationError(context + "." + key, "unknown key");
  }
}

inline const nlohmann::json& member(const nlohmann::json& obj, const char* key,
                                    const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(context + "." + key, "is required");
  return *it;
}

inline double as_double(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "must be a number");
  return j.get<double>();
}

inline std::int64_t as_int(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(field, "must be an integer");
  return j.get<std::int64_t>();
}

inline bool as_bool(const nlohmann::json& j, const std::string& field) {
  if (!j.is_boolean()) throw ValidationError(field, "must be a boolean");
  return j.get<bool>();
}

inline std::string as_string(const nlohmann::json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "must be a string");
  return j.get<std::string>();
}

inline double opt_double(const nlohmann::json& obj, const char* key, double fallback,
                         const std::string& context) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_double(*it, context + "." + key);
}

}  // namespace detail

// How latent claim evidence is drawn inside one realm.
struct EvidenceConfig {
  enum class Kind { Gaussian, Uniform };

  Kind kind = Kind::Gaussian;
  double mean = 0.0;    // Gaussian location
  double stddev = 0.5;  // Gaussian spread, >= 0
  double lo = -1.0;     // Uniform support
  double hi = 1.0;
  double align = 1.0;   // probability the evidence sign is forced to match the truth

  void validate(const std::string& field) const {
    if (kind == Kind::Gaussian) {
      detail::require(mean >= -1.0 && mean <= 1.0, field + ".mean", "must lie in [-1, 1]");
      detail::require(stddev >= 0.0, field + ".stddev", "must be non-negative");
    } else {
      detail::require(lo >= -1.0 && lo <= 1.0, field + ".lo", "must lie in [-1, 1]");
      detail::require(hi >= -1.0 && hi <= 1.0, field + ".hi", "must lie in [-1, 1]");
      detail::require(lo <= hi, field + ".lo", "must not exceed hi");
    }
    detail::require(align >= 0.0 && align <= 1.0, field + ".align", "must lie in [0, 1]");
  }
};

struct RealmConfig {
  std::string name;
  double truth_marginal = 0.5;  // Pr{truth = Top} for claims in this realm
  EvidenceConfig evidence;

  void validate(const std::string& field) const {
    detail::require(!name.empty(), field + ".name", "must be non-empty");
    detail::require(truth_marginal >= 0.0 && truth_marginal <= 1.0, field + ".truth_marginal",
                    "must lie in [0, 1]");
    evidence.validate(field + ".evidence");
  }
};

struct WorldConfig {
  int claims = 0;
  std::vector<RealmConfig> realms;

  void validate() const {
    detail::require(claims >= 1, "world.claims", "must be at least 1");
    detail::require(!realms.empty(), "world.realms", "must be non-empty");
    std::set<std::string> names;
    for (std::size_t i = 0; i < realms.size(); ++i) {
      std::string field = "world.realms[" + std::to_string(i) + "]";
      realms[i].validate(field);
      detail::require(names.insert(realms[i].name).second, field + ".name",
                      "duplicates another realm name");
    }
  }
};

// Verifier population: acuity and bias drawn uniformly per verifier.
struct VerifierPopulationConfig {
  int count = 0;
  double acuity_min = 1.0;
  double acuity_max = 1.0;
  double bias_min = 0.0;
  double bias_max = 0.0;
  double clamp = 0.01;

  void validate() const {
    detail::require(count >= 1, "verifiers.count", "must be at least 1");
    detail::require(acuity_min > 0.0, "verifiers.acuity_min", "must be positive");
    detail::require(acuity_max >= acuity_min, "verifiers.acuity_max",
                    "must be at least acuity_min");
    detail::require(bias_min >= -1.0 && bias_min <= 1.0, "verifiers.bias_min",
                    "must lie in [-1, 1]");
    detail::require(bias_max >= bias_min && bias_max <= 1.0, "verifiers.bias_max",
                    "must lie in [bias_min, 1]");
    detail::require(clamp > 0.0 && clamp < 0.5, "verifiers.clamp", "must lie in (0, 0.5)");
  }
};

struct EstimationConfig {
  int panel = 11;             // verifiers per panel draw
  int replicates = 200;       // Monte-Carlo replicates per estimate
  AggregationRule rule;       // how panel votes fold into a verdict
  bool stance_modal = false;  // commit the modal stance instead of the first draw
  int resolution_rounds = 1;  // extra consensus refinement rounds per pair
  double panel_growth = 2.0;  // panel size multiplier per extra round

  void validate() const {
    detail::require(panel >= 1, "estimation.panel", "must be at least 1");
    detail::require(replicates >= 1, "estimation.replicates", "must be at least 1");
    rule.validate("estimation.rule");
    detail::require(resolution_rounds >= 1, "estimation.resolution_rounds",
                    "must be at least 1");
    detail::require(panel_growth >= 1.0, "estimation.panel_growth", "must be at least 1");
  }
};

struct ReputationConfig {
  double region_inner = 0.25;   // |gap| below this is Obvious/Sensible
  double region_outer = 0.5;    // |gap| at or above this is Incredible
  double obvious_corner = 0.75; // prior cutoff separating Obvious from Sensible
  double conviction_band = 0.5; // |signed conviction| at or above this is High/Low
  double tau_agree = 0.05;      // interaction agreement tolerance

  void validate() const {
    detail::require(region_inner > 0.0, "reputation.region_inner", "must be positive");
    detail::require(region_outer > region_inner, "reputation.region_outer",
                    "must exceed region_inner");
    detail::require(region_outer <= 1.0, "reputation.region_outer", "must not exceed 1");
    detail::require(obvious_corner > 0.5 && obvious_corner <= 1.0, "reputation.obvious_corner",
                    "must lie in (0.5, 1]");
    detail::require(conviction_band > 0.0 && conviction_band <= 1.0,
                    "reputation.conviction_band", "must lie in (0, 1]");
    detail::require(tau_agree > 0.0 && tau_agree < 1.0, "reputation.tau_agree",
                    "must lie in (0, 1)");
  }
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  WorldConfig world;
  std::vector<SourceSpec> sources;
  VerifierPopulationConfig verifiers;
  EstimationConfig estimation;
  ReputationConfig reputation;

  void validate() const {
    world.validate();
    detail::require(!sources.empty(), "sources", "must be non-empty");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      std::string field = "sources[" + std::to_string(i) + "]";
      sources[i].validate(field);
      detail::require(ids.insert(sources[i].id).second, field + ".id",
                      "duplicates another source id");
    }
    verifiers.validate();
    estimation.validate();
    reputation.validate();
  }

  static ScenarioConfig from_json(const nlohmann::json& root);
  static ScenarioConfig from_file(const std::string& path);
};

namespace detail {

inline EvidenceConfig parse_evidence(const nlohmann::json& j, const std::string& field) {
  EvidenceConfig e;
  std::string kind = "gaussian";
  if (auto it = j.find("kind"); it != j.end()) kind = as_string(*it, field + ".kind");
  if (kind == "gaussian") {
    e.kind = EvidenceConfig::Kind::Gaussian;
    check_keys(j, {"kind", "mean", "stddev", "align"}, field);
    e.mean = opt_double(j, "mean", e.mean, field);
    e.stddev = opt_double(j, "stddev", e.stddev, field);
  } else if (kind == "uniform") {
    e.kind = EvidenceConfig::Kind::Uniform;
    check_keys(j, {"kind", "lo", "hi", "align"}, field);
    e.lo = as_double(member(j, "lo", field), field + ".lo");
    e.hi = as_double(member(j, "hi", field), field + ".hi");
  } else {
    throw ValidationError(field + ".kind", "must be 'gaussian' or 'uniform'");
  }
  e.align = opt_double(j, "align", e.align, field);
  return e;
}

inline AggregationRule parse_rule(const nlohmann::json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field, "must be an object");
  AggregationRule rule;
  rule.kind = rule_kind_from_string(as_string(member(j, "kind", field), field + ".kind"));
  switch (rule.kind) {
    case AggregationRule::Kind::SuperMajority:
      check_keys(j, {"kind", "quota"}, field);
      rule.quota = as_double(member(j, "quota", field), field + ".quota");
      break;
    case AggregationRule::Kind::ReputationWeighted:
      check_keys(j, {"kind", "damping", "max_iters", "tol"}, field);
      rule.damping = opt_double(j, "damping", rule.damping, field);
      if (auto it = j.find("max_iters"); it != j.end())
        rule.max_iters = int(as_int(*it, field + ".max_iters"));
      rule.tol = opt_double(j, "tol", rule.tol, field);
      break;
    case AggregationRule::Kind::Bayesian:
      check_keys(j, {"kind", "alpha0", "beta0"}, field);
      rule.alpha0 = opt_double(j, "alpha0", rule.alpha0, field);
      rule.beta0 = opt_double(j, "beta0", rule.beta0, field);
      break;
    default:
      check_keys(j, {"kind"}, field);
      break;
  }
  return rule;
}

}  // namespace detail

inline ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& root) {
  using namespace detail;
  check_keys(root, {"seed", "world", "sources", "verifiers", "estimation", "reputation"},
             "config");

  ScenarioConfig cfg;
  const nlohmann::json& seed = member(root, "seed", "config");
  if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() &&
                                    seed.get<std::int64_t>() < 0))
    throw ValidationError("config.seed", "must be a non-negative integer");
  cfg.seed = seed.get<std::uint64_t>();

  const nlohmann::json& world = member(root, "world", "config");
  check_keys(world, {"claims", "realms"}, "world");
  cfg.world.claims = int(as_int(member(world, "claims", "world"), "world.claims"));
  const nlohmann::json& realms = member(world, "realms", "world");
  if (!realms.is_array()) throw ValidationError("world.realms", "must be an array");
  for (std::size_t i = 0; i < realms.size(); ++i) {
    std::string field = "world.realms[" + std::to_string(i) + "]";
    const nlohmann::json& rj = realms[i];
    check_keys(rj, {"name", "truth_marginal", "evidence"}, field);
    RealmConfig realm;
    realm.name = as_string(member(rj, "name", field), field + ".name");
    realm.truth_marginal =
        as_double(member(rj, "truth_marginal", field), field + ".truth_marginal");
    realm.evidence = parse_evidence(member(rj, "evidence", field), field + ".evidence");
    cfg.world.realms.push_back(std::move(realm));
  }

  const nlohmann::json& sources = member(root, "sources", "config");
  if (!sources.is_array()) throw ValidationError("sources", "must be an array");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    std::string field = "sources[" + std::to_string(i) + "]";
    const nlohmann::json& sj = sources[i];
    check_keys(sj,
               {"id", "fidelity", "augmentation", "bias", "completeness", "stance_noise",
                "perception_jitter"},
               field);
    SourceSpec s;
    s.id = as_string(member(sj, "id", field), field + ".id");
    s.fidelity = opt_double(sj, "fidelity", s.fidelity, field);
    s.augmentation = opt_double(sj, "augmentation", s.augmentation, field);
    s.bias = opt_double(sj, "bias", s.bias, field);
    s.completeness = opt_double(sj, "completeness", s.completeness, field);
    s.stance_noise = opt_double(sj, "stance_noise", s.stance_noise, field);
    s.perception_jitter = opt_double(sj, "perception_jitter", s.perception_jitter, field);
    cfg.sources.push_back(std::move(s));
  }

  const nlohmann::json& verifiers = member(root, "verifiers", "config");
  check_keys(verifiers,
             {"count", "acuity_min", "acuity_max", "bias_min", "bias_max", "clamp"},
             "verifiers");
  cfg.verifiers.count =
      int(as_int(member(verifiers, "count", "verifiers"), "verifiers.count"));
  cfg.verifiers.acuity_min = opt_double(verifiers, "acuity_min", 1.0, "verifiers");
  cfg.verifiers.acuity_max =
      opt_double(verifiers, "acuity_max", cfg.verifiers.acuity_min, "verifiers");
  cfg.verifiers.bias_min = opt_double(verifiers, "bias_min", 0.0, "verifiers");
  cfg.verifiers.bias_max = opt_double(verifiers, "bias_max", cfg.verifiers.bias_min, "verifiers");
  cfg.verifiers.clamp = opt_double(verifiers, "clamp", 0.01, "verifiers");

  const nlohmann::json& estimation = member(root, "estimation", "config");
  check_keys(estimation,
             {"panel", "replicates", "rule", "stance_modal", "resolution_rounds",
              "panel_growth"},
             "estimation");
  cfg.estimation.panel =
      int(as_int(member(estimation, "panel", "estimation"), "estimation.panel"));
  cfg.estimation.replicates =
      int(as_int(member(estimation, "replicates", "estimation"), "estimation.replicates"));
  cfg.estimation.rule = parse_rule(member(estimation, "rule", "estimation"), "estimation.rule");
  if (auto it = estimation.find("stance_modal"); it != estimation.end())
    cfg.estimation.stance_modal = as_bool(*it, "estimation.stance_modal");
  if (auto it = estimation.find("resolution_rounds"); it != estimation.end())
    cfg.estimation.resolution_rounds = int(as_int(*it, "estimation.resolution_rounds"));
  cfg.estimation.panel_growth =
      opt_double(estimation, "panel_growth", cfg.estimation.panel_growth, "estimation");

  if (auto it = root.find("reputation"); it != root.end()) {
    const nlohmann::json& reputation = *it;
    check_keys(reputation,
               {"region_inner", "region_outer", "obvious_corner", "conviction_band",
                "tau_agree"},
               "reputation");
    cfg.reputation.region_inner =
        opt_double(reputation, "region_inner", cfg.reputation.region_inner, "reputation");
    cfg.reputation.region_outer =
        opt_double(reputation, "region_outer", cfg.reputation.region_outer, "reputation");
    cfg.reputation.obvious_corner =
        opt_double(reputation, "obvious_corner", cfg.reputation.obvious_corner, "reputation");
    cfg.reputation.conviction_band =
        opt_double(reputation, "conviction_band", cfg.reputation.conviction_band, "reputation");
    cfg.reputation.tau_agree =
        opt_double(reputation, "tau_agree", cfg.reputation.tau_agree, "reputation");
  }

  cfg.validate();
  return cfg;
}

inline ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  return from_json(root);
}

}  // namespace veritas
