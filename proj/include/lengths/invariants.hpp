#pragma once

// Family-level invariants derived from profiles and member samples: the
// distance set and its minimum (computed two independent ways and
// cross-checked), elasticity reporting, and the equivalent formulations of
// accepted elasticity evaluated on observed data.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lengths/family.hpp"
#include "lengths/natset.hpp"
#include "lengths/profile.hpp"

namespace lengths {

struct DeltaReport {
  NatSet family_distances;   // union of member delta sets (budget-bounded sample)
  NatSet union_distances;    // union of the profile's per-k delta sets
  uint64_t family_gcd = 0;   // gcd route: gcd of family_distances (0 when empty)
  ExtNat delta;              // authoritative: min over union_distances (inf when empty)
  bool stabilized = false;   // the two routes agree
  bool consistent = true;    // no route disagreement (must always hold)
};

// delta is approached from above by both routes: every observed distance is
// a multiple of the true minimal distance, the member route converges to it
// as gcd, the union route as min.  Inconsistency (union minimum not a
// multiple of the member gcd) would mean a computation bug, not a small
// budget, for the bundled backends.
inline DeltaReport delta_report(const LengthSystem& system, const UnionsProfile& profile) {
  DeltaReport rep;
  for (const NatSet& m : system.sample_members()) rep.family_distances.unite(m.delta_set());
  for (const ProfileRow& r : profile.rows) rep.union_distances.unite(r.unions.delta_set());
  rep.family_gcd = 0;
  for (uint32_t d : rep.family_distances.values())
    rep.family_gcd = std::gcd(rep.family_gcd, static_cast<uint64_t>(d));
  rep.delta = rep.union_distances.inf();
  if (rep.family_distances.empty() && rep.union_distances.empty()) {
    rep.stabilized = true;  // both routes see a gap-free family
  } else if (rep.family_gcd != 0 && !rep.delta.is_infinite()) {
    rep.stabilized = rep.delta.value() == rep.family_gcd;
    rep.consistent = rep.delta.value() % rep.family_gcd == 0;
  } else {
    rep.stabilized = false;  // one route has not seen a distance yet
  }
  return rep;
}

inline ElasticityReport elasticity_report(const LengthSystem& system) {
  return system.elasticity();
}

inline FinitenessReport rho_infinite_detect(const LengthSystem& system) {
  return system.elasticity_finiteness();
}

// The five equivalent formulations of accepted elasticity, each evaluated
// against observed profile data for a family with finite non-zero rho:
//  (a) a member attaining rho was exhibited;
//  (b) some n has upper(n*k) = n*k*rho for every multiple in range;
//  (c) some n has upper(n) = n*rho;
//  (d) some n with n*rho integral has lower(n*k*rho) = n*k for all in range;
//  (e) some n with n*rho integral has lower(n*rho) = n.
struct AcceptedConditions {
  bool witness = false;
  bool upper_all_multiples = false;
  bool upper_single = false;
  bool lower_all_multiples = false;
  bool lower_single = false;

  bool all_agree() const {
    return witness == upper_all_multiples && witness == upper_single &&
           witness == lower_all_multiples && witness == lower_single;
  }
};

inline AcceptedConditions evaluate_accepted_conditions(const UnionsProfile& profile,
                                                       const ElasticityReport& el) {
  AcceptedConditions out;
  if (el.rho.is_infinite() || el.rho.is_zero())
    throw std::invalid_argument("conditions need finite non-zero elasticity");
  out.witness = el.accepted == Accepted::yes && el.witness.has_value();
  uint32_t horizon = profile.k_horizon;

  auto upper_matches = [&](uint32_t n) {
    return !profile.row(n).unions.empty() && profile.row(n).upper == ExtNat(n) * el.rho;
  };
  auto lower_matches = [&](uint32_t n) {
    // n*rho integral; check lower(n*rho) == n
    ExtRat target = ExtNat(n) * el.rho;
    if (!target.is_integer()) return false;
    uint64_t idx = target.integer_value();
    if (idx > horizon) return false;
    return !profile.row(static_cast<uint32_t>(idx)).unions.empty() &&
           profile.row(static_cast<uint32_t>(idx)).lower == ExtNat(n);
  };

  for (uint32_t n = 1; n <= horizon && !out.upper_single; ++n)
    if (upper_matches(n)) out.upper_single = true;
  for (uint32_t n = 1; n <= horizon && !out.lower_single; ++n) {
    ExtRat target = ExtNat(n) * el.rho;
    if (target.is_integer() && target.integer_value() <= horizon && lower_matches(n))
      out.lower_single = true;
  }
  // Multiples versions: require every multiple inside the horizon to match,
  // with at least two checkable multiples so the claim is not vacuous.
  for (uint32_t n = 1; 2 * n <= horizon && !out.upper_all_multiples; ++n) {
    bool ok = true;
    uint32_t checked = 0;
    for (uint32_t nk = n; nk <= horizon; nk += n) {
      if (!upper_matches(nk)) {
        ok = false;
        break;
      }
      ++checked;
    }
    if (ok && checked >= 2) out.upper_all_multiples = true;
  }
  for (uint32_t n = 1; 2 * n <= horizon && !out.lower_all_multiples; ++n) {
    ExtRat step = ExtNat(n) * el.rho;
    if (!step.is_integer()) continue;
    bool ok = true;
    uint32_t checked = 0;
    for (uint32_t k = 1;; ++k) {
      ExtRat target = ExtNat(n * k) * el.rho;
      if (!target.is_integer()) throw std::logic_error("integrality must propagate");
      if (target.integer_value() > horizon) break;
      if (!lower_matches(n * k)) {
        ok = false;
        break;
      }
      ++checked;
    }
    if (ok && checked >= 2) out.lower_all_multiples = true;
  }
  return out;
}

// Search for a member carrying an arithmetic progression start + d*[0..q]
// inside it (which then sits inside the union at its own start point).
struct ProgressionWitness {
  uint32_t start = 0;
  NatSet member;
};

inline std::optional<ProgressionWitness> find_progression_member(const LengthSystem& system,
                                                                 uint32_t d, uint32_t q) {
  if (d == 0) throw std::invalid_argument("progression difference must be positive");
  for (const NatSet& m : system.sample_members()) {
    for (uint32_t start : m.values()) {
      bool ok = true;
      for (uint32_t j = 1; j <= q; ++j)
        if (!m.contains(start + d * j)) {
          ok = false;
          break;
        }
      if (ok) return ProgressionWitness{start, m};
    }
  }
  return std::nullopt;
}

}  // namespace lengths
