// Entropy-weighted signed-conviction reputation: certitude weights,
// novelty regions, the contribution regime table, and the fold ledger.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "veritas/aggregate.hpp"
#include "veritas/stance.hpp"

namespace veritas {

// Shannon entropy of a Bernoulli(p), in bits.  Exact at the anchors:
// H(0) = H(1) = 0 and H(1/2) = 1 (log2(1/2) is exactly -1).
inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

// Certitude weight 1 - H(p): 0 at a coin-flip estimate, 1 at certainty.
inline double certitude_weight(double p) { return 1.0 - binary_entropy(p); }

// Certitude pair for one claim: w_minus from the bare-claim (prior)
// estimate, w_plus from the claim-plus-artifact (posterior) estimate.
struct ClaimWeight {
  double w_minus = 0.0;
  double w_plus = 0.0;
  double w = 0.0;

  static ClaimWeight from_probabilities(double p_orig, double p_joint) {
    ClaimWeight cw;
    cw.w_minus = certitude_weight(p_orig);
    cw.w_plus = certitude_weight(p_joint);
    cw.w = cw.w_minus * cw.w_plus;
    return cw;
  }
};

// Map conviction C in [0,1] to the signed scale [-1, +1].
inline double signed_conviction(double conviction) {
  if (!(conviction >= 0.0 && conviction <= 1.0))
    throw std::domain_error("signed_conviction: conviction outside [0, 1]");
  return 2.0 * conviction - 1.0;
}

// ---------------------------------------------------------------------------
// Novelty regions in the (prior, posterior) unit square.

enum class RegionLabel : std::uint8_t { Obvious, Sensible, NonIntuitive, Incredible };

inline std::string_view to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Obvious: return "obvious";
    case RegionLabel::Sensible: return "sensible";
    case RegionLabel::NonIntuitive: return "non-intuitive";
    default: return "incredible";
  }
}

inline RegionLabel region_from_string(std::string_view text) {
  if (text == "obvious") return RegionLabel::Obvious;
  if (text == "sensible") return RegionLabel::Sensible;
  if (text == "non-intuitive") return RegionLabel::NonIntuitive;
  if (text == "incredible") return RegionLabel::Incredible;
  throw std::invalid_argument("region_from_string: unknown region '" + std::string(text) + "'");
}

struct RegionGeometry {
  double inner = 0.25;   // |posterior - prior| below this: Obvious or Sensible
  double outer = 0.5;    // |posterior - prior| at or above this: Incredible
  double corner = 0.75;  // prior cutoff separating Obvious from Sensible

  void validate() const {
    if (!(inner > 0.0 && outer > inner && outer <= 1.0))
      throw std::domain_error("RegionGeometry: need 0 < inner < outer <= 1");
    if (!(corner > 0.5 && corner <= 1.0))
      throw std::domain_error("RegionGeometry: corner must lie in (0.5, 1]");
  }
};

// Comparisons snap to the boundary within this slack so that grid points
// landing within float dust of a threshold classify consistently on both
// sides of the point reflection (p, q) -> (1-p, 1-q).
inline constexpr double kRegionSnap = 1e-12;

// Classify where a claim sits for a source: prior = Pr{bare-claim verdict
// is Top}, posterior = the same with the source's artifact added.  The
// map is symmetric under the point reflection (p, q) -> (1-p, 1-q): small
// shifts are Obvious only in the corners where the prior already sits at
// an extreme on the side the shift pushes toward, else Sensible.
inline RegionLabel classify_region(double prior, double posterior,
                                   const RegionGeometry& geometry = {}) {
  if (!(prior >= 0.0 && prior <= 1.0))
    throw std::domain_error("classify_region: prior outside [0, 1]");
  if (!(posterior >= 0.0 && posterior <= 1.0))
    throw std::domain_error("classify_region: posterior outside [0, 1]");
  geometry.validate();

  double gap = posterior - prior;
  double size = std::abs(gap);
  if (size >= geometry.outer - kRegionSnap) return RegionLabel::Incredible;
  if (size >= geometry.inner - kRegionSnap) return RegionLabel::NonIntuitive;
  bool upward_corner = gap >= -kRegionSnap && prior >= geometry.corner - kRegionSnap;
  bool downward_corner = gap <= kRegionSnap && prior <= (1.0 - geometry.corner) + kRegionSnap;
  return (upward_corner || downward_corner) ? RegionLabel::Obvious : RegionLabel::Sensible;
}

// ---------------------------------------------------------------------------
// Conviction bands and the contribution regime table.

enum class ConvictionBand : std::uint8_t { High, Medium, Low };

inline std::string_view to_string(ConvictionBand b) {
  switch (b) {
    case ConvictionBand::High: return "high";
    case ConvictionBand::Medium: return "medium";
    default: return "low";
  }
}

inline ConvictionBand conviction_band(double signed_conviction, double threshold = 0.5) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::domain_error("conviction_band: threshold outside (0, 1]");
  if (signed_conviction >= threshold) return ConvictionBand::High;
  if (signed_conviction <= -threshold) return ConvictionBand::Low;
  return ConvictionBand::Medium;
}

enum class DiscountProfile : std::uint8_t { None, Discounted, HeavyInitial };

inline std::string_view to_string(DiscountProfile d) {
  switch (d) {
    case DiscountProfile::None: return "none";
    case DiscountProfile::Discounted: return "discounted";
    default: return "heavy-initial";
  }
}

// One cell of the region x conviction-band regime table.
struct RegimeCell {
  RegionLabel region = RegionLabel::Obvious;
  ConvictionBand band = ConvictionBand::Medium;
  std::string_view contribution;
  std::string_view label;
  DiscountProfile discount = DiscountProfile::None;
};

// The full 4 x 3 table.  Medium cells in the outer regions carry the
// synthetic "unresolved-trajectory" label: a weak stance on a novel claim
// resolves only as the posterior trajectory unfolds.
inline const std::array<RegimeCell, 12>& regime_table() {
  static const std::array<RegimeCell, 12> table = {{
      {RegionLabel::Obvious, ConvictionBand::High, "Strong positive",
       "Reinforcing assimilative source", DiscountProfile::None},
      {RegionLabel::Obvious, ConvictionBand::Medium, "Withheld", "Doubt introducer",
       DiscountProfile::None},
      {RegionLabel::Obvious, ConvictionBand::Low, "Strong negative", "Nonconformist",
       DiscountProfile::None},
      {RegionLabel::Sensible, ConvictionBand::High, "Positive, discounted",
       "Selective augmentative contributor", DiscountProfile::Discounted},
      {RegionLabel::Sensible, ConvictionBand::Medium, "Withheld", "Feather-ruffler",
       DiscountProfile::None},
      {RegionLabel::Sensible, ConvictionBand::Low, "Negative, discounted",
       "Selective destabilizer", DiscountProfile::Discounted},
      {RegionLabel::NonIntuitive, ConvictionBand::High,
       "Strong positive, heavily discounted initially", "Genuine innovator",
       DiscountProfile::HeavyInitial},
      {RegionLabel::NonIntuitive, ConvictionBand::Medium, "Withheld", "unresolved-trajectory",
       DiscountProfile::None},
      {RegionLabel::NonIntuitive, ConvictionBand::Low,
       "Strong negative, heavily discounted initially", "Inadvertent contributor",
       DiscountProfile::HeavyInitial},
      {RegionLabel::Incredible, ConvictionBand::High,
       "Maximum positive, most heavily discounted initially", "Paradigm-defining innovator",
       DiscountProfile::HeavyInitial},
      {RegionLabel::Incredible, ConvictionBand::Medium, "Withheld", "unresolved-trajectory",
       DiscountProfile::None},
      {RegionLabel::Incredible, ConvictionBand::Low,
       "Maximum negative, most heavily discounted initially",
       "Consequential inadvertent contributor", DiscountProfile::HeavyInitial},
  }};
  return table;
}

inline const RegimeCell& regime_cell(RegionLabel region, ConvictionBand band) {
  for (const RegimeCell& cell : regime_table())
    if (cell.region == region && cell.band == band) return cell;
  throw std::logic_error("regime_cell: table is missing a cell");
}

inline const RegimeCell& regime_contribution(RegionLabel region, double signed_conviction,
                                             double band_threshold = 0.5) {
  return regime_cell(region, conviction_band(signed_conviction, band_threshold));
}

inline nlohmann::json regime_table_json() {
  nlohmann::json cells = nlohmann::json::array();
  for (const RegimeCell& cell : regime_table())
    cells.push_back({{"region", std::string(to_string(cell.region))},
                     {"conviction_band", std::string(to_string(cell.band))},
                     {"contribution", std::string(cell.contribution)},
                     {"label", std::string(cell.label)},
                     {"discount", std::string(to_string(cell.discount))}});
  return {{"regime_table", cells}};
}

// ---------------------------------------------------------------------------
// Reputation over a resolved corpus.

// One resolved claim for a source: its committed stance, the realized
// joint verdict, and the certitude weight at resolution time.
struct ResolvedClaim {
  Stance stance = Stance::Bottom;
  AggregateOutcome outcome;
  double weight = 0.0;
};

// Mean of (agree - disagree) * weight over the corpus; Contested verdicts
// contribute zero sign.  An empty corpus has no defined reputation, which
// is distinct from a reputation of 0.
inline std::optional<double> reputation_estimate(std::span<const ResolvedClaim> corpus) {
  if (corpus.empty()) return std::nullopt;
  double sum = 0.0;
  for (const ResolvedClaim& rc : corpus)
    sum += double(agreement2(rc.stance, rc.outcome) - 1) * rc.weight;
  return sum / double(corpus.size());
}

// ---------------------------------------------------------------------------
// Fold ledger: per (source, realm) reputation state with per-claim records.

class ReputationLedger {
 public:
  struct Entry {
    double c_tilde = 0.0;
    double w_minus = 0.0;
    double w_plus = 0.0;
    double w = 0.0;
    RegionLabel region = RegionLabel::Sensible;
    ConvictionBand band = ConvictionBand::Medium;
    double conviction = 0.5;
    std::vector<double> w_plus_history;  // posterior certitude trajectory

    double contribution() const {
      double c = c_tilde * w;
      return c == 0.0 ? 0.0 : c;  // normalize -0.0
    }
  };

  using ClaimMap = std::map<std::string, Entry>;
  using RealmMap = std::map<std::string, ClaimMap>;
  using SourceMap = std::map<std::string, RealmMap>;

  // Fold (or refold) one resolved claim.  A claim keeps one realm for its
  // lifetime; folding it under a different realm is a contract violation.
  Entry& fold(const std::string& source, const std::string& realm, const std::string& claim,
              double conviction, double w_minus, double w_plus, RegionLabel region,
              ConvictionBand band) {
    bind_realm(claim, realm);
    Entry& e = ledgers_[source][realm][claim];
    e.conviction = conviction;
    e.c_tilde = signed_conviction(conviction);
    e.w_minus = w_minus;
    e.w_plus = w_plus;
    e.w = w_minus * w_plus;
    e.region = region;
    e.band = band;
    e.w_plus_history.push_back(w_plus);
    return e;
  }

  // Posterior estimate moved (a joint consensus update): recompute w_plus
  // and extend the trajectory.  No-op if the claim was never folded.
  void update_posterior(const std::string& source, const std::string& realm,
                        const std::string& claim, double p_joint) {
    Entry* e = find_mutable(source, realm, claim);
    if (!e) return;
    e->w_plus = certitude_weight(p_joint);
    e->w = e->w_minus * e->w_plus;
    e->w_plus_history.push_back(e->w_plus);
  }

  // Prior estimate moved (a bare-claim consensus update): recompute w_minus.
  void update_prior(const std::string& source, const std::string& realm,
                    const std::string& claim, double p_orig) {
    Entry* e = find_mutable(source, realm, claim);
    if (!e) return;
    e->w_minus = certitude_weight(p_orig);
    e->w = e->w_minus * e->w_plus;
  }

  std::size_t count(const std::string& source, const std::string& realm) const {
    const ClaimMap* claims = find_claims(source, realm);
    return claims ? claims->size() : 0;
  }

  // Claims iterate in sorted id order, so the sum (and the reputation) is
  // bit-identical regardless of fold order.
  double sum_contributions(const std::string& source, const std::string& realm) const {
    const ClaimMap* claims = find_claims(source, realm);
    double sum = 0.0;
    if (claims)
      for (const auto& [id, entry] : *claims) sum += entry.contribution();
    return sum;
  }

  std::optional<double> reputation(const std::string& source, const std::string& realm) const {
    std::size_t n = count(source, realm);
    if (n == 0) return std::nullopt;
    return sum_contributions(source, realm) / double(n);
  }

  const Entry* find(const std::string& source, const std::string& realm,
                    const std::string& claim) const {
    const ClaimMap* claims = find_claims(source, realm);
    if (!claims) return nullptr;
    auto it = claims->find(claim);
    return it == claims->end() ? nullptr : &it->second;
  }

  const SourceMap& ledgers() const { return ledgers_; }

  bool empty() const { return ledgers_.empty(); }

  // Canonical snapshot; two ledgers with equal state dump to equal bytes.
  nlohmann::json to_json() const {
    nlohmann::json sources = nlohmann::json::object();
    for (const auto& [source, realms] : ledgers_) {
      nlohmann::json realm_obj = nlohmann::json::object();
      for (const auto& [realm, claims] : realms) {
        nlohmann::json claim_obj = nlohmann::json::object();
        for (const auto& [claim, e] : claims)
          claim_obj[claim] = {{"conviction", e.conviction},
                              {"signed_conviction", e.c_tilde},
                              {"w_minus", e.w_minus},
                              {"w_plus", e.w_plus},
                              {"w", e.w},
                              {"region", std::string(to_string(e.region))},
                              {"conviction_band", std::string(to_string(e.band))},
                              {"contribution", e.contribution()},
                              {"w_plus_history", e.w_plus_history}};
        realm_obj[realm] = {{"claims", claim_obj},
                            {"count", count(source, realm)},
                            {"sum_contributions", sum_contributions(source, realm)},
                            {"reputation", *reputation(source, realm)}};
      }
      sources[source] = std::move(realm_obj);
    }
    return sources;
  }

 private:
  void bind_realm(const std::string& claim, const std::string& realm) {
    auto [it, inserted] = claim_realms_.emplace(claim, realm);
    if (!inserted && it->second != realm)
      throw std::invalid_argument("ReputationLedger: claim '" + claim +
                                  "' is tagged realm '" + it->second +
                                  "', cannot fold under '" + realm + "'");
  }

  const ClaimMap* find_claims(const std::string& source, const std::string& realm) const {
    auto s = ledgers_.find(source);
    if (s == ledgers_.end()) return nullptr;
    auto r = s->second.find(realm);
    return r == s->second.end() ? nullptr : &r->second;
  }

  Entry* find_mutable(const std::string& source, const std::string& realm,
                      const std::string& claim) {
    auto s = ledgers_.find(source);
    if (s == ledgers_.end()) return nullptr;
    auto r = s->second.find(realm);
    if (r == s->second.end()) return nullptr;
    auto c = r->second.find(claim);
    return c == r->second.end() ? nullptr : &c->second;
  }

  SourceMap ledgers_;
  std::map<std::string, std::string> claim_realms_;
};

}  // namespace veritas
