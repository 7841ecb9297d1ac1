#pragma once

// Machine-checkable certificates over profiles: almost-arithmetic-progression
// decompositions of single sets, two-sided structure certificates for the
// whole union sequence, end-pattern period certificates, growth bounds, and
// the value-periodicity identities tied to accepted elasticity.
//
// Finite-horizon conventions shared by all producers: a certificate must
// hold from its onset through the horizon, and the onset must lie in the
// lower half of the horizon (a property visible only on a thin top slice is
// reported as a refusal, not a certificate).  Producers search bounds and
// onsets in ascending order, so reported constants are minimal for the given
// horizon.  Verifiers recompute every claim from the profile alone.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lengths/invariants.hpp"
#include "lengths/natset.hpp"
#include "lengths/profile.hpp"

namespace lengths {

// --- single-set AAP decomposition ---

struct AapDecomposition {
  bool ok = false;
  uint32_t difference = 1;
  uint32_t residue = 0;  // class of the set mod difference
  uint32_t bound = 0;    // minimal M
  uint32_t clash_a = 0, clash_b = 0;  // two elements in distinct classes when !ok
};

inline AapDecomposition aap_decompose(const NatSet& l, uint32_t d) {
  if (d == 0) throw std::invalid_argument("difference must be positive");
  if (l.empty()) throw std::invalid_argument("cannot decompose an empty set");
  AapDecomposition out;
  out.difference = d;
  std::vector<uint32_t> v = l.values();
  out.residue = v.front() % d;
  for (uint32_t x : v)
    if (x % d != out.residue) {
      out.clash_a = v.front();
      out.clash_b = x;
      return out;
    }
  uint32_t lo = v.front(), hi = v.back();
  for (uint32_t m = 0;; ++m) {
    bool good = true;
    for (uint64_t x = lo + m; x + m <= hi; ++x)
      if (x % d == out.residue && !l.contains(static_cast<uint32_t>(x))) {
        good = false;
        break;
      }
    if (good) {
      out.ok = true;
      out.bound = m;
      return out;
    }
  }
}

inline bool verify_aap(const NatSet& l, uint32_t d, uint32_t residue, uint32_t bound) {
  if (d == 0 || l.empty()) return false;
  for (uint32_t x : l.values())
    if (x % d != residue) return false;
  uint32_t lo = l.min(), hi = l.max();
  for (uint64_t x = lo + bound; x + bound <= hi; ++x)
    if (x % d == residue && !l.contains(static_cast<uint32_t>(x))) return false;
  return true;
}

// --- two-sided structure certificate ---

struct StructureCertificate {
  uint32_t difference = 1;
  uint32_t bound = 0;  // M
  uint32_t onset = 0;
  uint32_t horizon = 0;
  bool trivial = false;  // gap-free family: every union is {k}
  // Diagnostic triple (observed gap cap D, progression anchor, one-sided
  // upper bound N) when the search finds one.
  std::optional<uint32_t> diag_gap_cap;
  std::optional<uint32_t> diag_anchor;
  std::optional<uint32_t> diag_upper_bound;
};

struct StructureRefusal {
  uint32_t difference = 1;
  uint32_t best_bound = 0;
  uint32_t best_onset = 0;
  uint32_t blocking_k = 0;  // the violation pinning the best onset
};

namespace detail {

// Two-sided condition at one k: U_k subset of k + dZ, and every point of
// the class inside [lower+M, upper-M] present.  Empty unions pass vacuously.
inline bool structure_row_ok(const ProfileRow& r, uint32_t d, uint32_t m) {
  if (r.unions.empty()) return true;
  uint32_t residue = r.k % d;
  for (uint32_t v : r.unions.values())
    if (v % d != residue) return false;
  int64_t lo = static_cast<int64_t>(r.lower.value()) + m;
  int64_t hi = static_cast<int64_t>(r.upper.value()) - m;
  if (lo < 0) lo = 0;
  for (int64_t v = lo; v <= hi; ++v) {
    if (v % d != residue) continue;
    if (!r.unions.contains(static_cast<uint32_t>(v))) return false;
  }
  return true;
}

// Latest k in [0, horizon] violating the condition, or -1 if none.
inline int64_t structure_latest_violation(const UnionsProfile& p, uint32_t d, uint32_t m) {
  for (int64_t k = p.k_horizon; k >= 0; --k)
    if (!structure_row_ok(p.rows[k], d, m)) return k;
  return -1;
}

// The certified interval must be non-empty somewhere on the top half,
// otherwise the inner containment says nothing at this horizon.
inline bool structure_nonvacuous(const UnionsProfile& p, uint32_t m) {
  for (uint32_t k = (p.k_horizon + 1) / 2; k <= p.k_horizon; ++k) {
    const ProfileRow& r = p.rows[k];
    if (r.unions.empty()) continue;
    if (static_cast<int64_t>(r.upper.value()) - m >=
        static_cast<int64_t>(r.lower.value()) + m)
      return true;
  }
  return false;
}

}  // namespace detail

inline void attach_structure_diagnostics(const UnionsProfile& profile,
                                         StructureCertificate& cert);

inline std::variant<StructureCertificate, StructureRefusal> certify_structure(
    const UnionsProfile& profile, const DeltaReport& deltas) {
  if (!profile.all_exact)
    throw std::invalid_argument("structure certificates need an exact profile");
  StructureCertificate cert;
  cert.horizon = profile.k_horizon;
  if (deltas.delta.is_infinite()) {
    // Gap-free: every non-empty union is the singleton {k}, so the two-sided
    // condition holds verbatim with difference 1 and bound 0.
    for (const ProfileRow& r : profile.rows)
      if (!r.unions.empty() && r.unions != NatSet{r.k})
        throw std::logic_error("gap-free profile with a non-singleton union");
    cert.trivial = true;
    return cert;
  }
  uint32_t d = static_cast<uint32_t>(deltas.delta.value());
  cert.difference = d;
  uint32_t m_max = 0;
  for (const ProfileRow& r : profile.rows)
    if (!r.unions.empty()) {
      uint32_t spread = static_cast<uint32_t>(r.upper.value() - r.lower.value());
      m_max = std::max(m_max, spread / 2 + 1);
    }
  std::optional<StructureRefusal> best;
  for (uint32_t m = 0; m <= m_max; ++m) {
    int64_t viol = detail::structure_latest_violation(profile, d, m);
    uint32_t onset = static_cast<uint32_t>(viol + 1);
    if (onset <= profile.k_horizon / 2 && detail::structure_nonvacuous(profile, m)) {
      cert.bound = m;
      cert.onset = onset;
      attach_structure_diagnostics(profile, cert);
      return cert;
    }
    if (!best || onset < best->best_onset) {
      best = StructureRefusal{d, m, onset, static_cast<uint32_t>(viol < 0 ? 0 : viol)};
    }
  }
  return *best;
}

// Diagnostic triple: cap on union gaps over the top half, the smallest
// anchor carrying a full progression of that many steps inside its own
// union, and the least one-sided upper bound valid from a low onset.
inline void attach_structure_diagnostics(const UnionsProfile& profile,
                                         StructureCertificate& cert) {
  uint32_t d = cert.difference;
  uint32_t gap_cap = 0;
  for (uint32_t k = (profile.k_horizon + 1) / 2; k <= profile.k_horizon; ++k)
    if (!profile.rows[k].gap_set_empty)
      gap_cap = std::max(gap_cap, static_cast<uint32_t>(profile.rows[k].sup_gap.value()));
  if (gap_cap == 0) return;
  cert.diag_gap_cap = gap_cap;
  for (uint32_t ell = 1; ell <= profile.k_horizon; ++ell) {
    const NatSet& u = profile.rows[ell].unions;
    if (!u.contains(ell)) continue;
    bool ok = true;
    for (uint32_t j = 1; j * d <= static_cast<uint64_t>(gap_cap); ++j)
      if (!u.contains(ell + j * d)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    cert.diag_anchor = ell;
    break;
  }
  if (!cert.diag_anchor) return;
  uint32_t ell = *cert.diag_anchor;
  uint32_t n_max = 0;
  for (const ProfileRow& r : profile.rows)
    if (!r.unions.empty())
      n_max = std::max(n_max,
                       static_cast<uint32_t>(r.upper.value() - r.lower.value()) / 2 + 1);
  for (uint32_t n = 0; n <= n_max; ++n) {
    int64_t latest = -1;
    for (int64_t k = profile.k_horizon; k >= ell; --k) {
      const ProfileRow& r = profile.rows[k];
      if (r.unions.empty()) continue;
      uint32_t residue = r.k % d;
      int64_t lo = static_cast<int64_t>(profile.rows[k - ell].upper.value()) + ell;
      int64_t hi = static_cast<int64_t>(r.upper.value()) - n;
      bool ok = true;
      for (int64_t v = lo; v <= hi; ++v) {
        if (v % d != residue) continue;
        if (!r.unions.contains(static_cast<uint32_t>(v))) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        latest = k;
        break;
      }
    }
    if (latest < 0 || latest + 1 <= profile.k_horizon / 2) {
      cert.diag_upper_bound = n;
      return;
    }
  }
}

struct VerifyResult {
  bool ok = true;
  std::string reason;
};

inline VerifyResult verify_structure(const UnionsProfile& profile,
                                     const StructureCertificate& cert) {
  if (!profile.all_exact) return {false, "profile is not exact"};
  if (cert.horizon != profile.k_horizon) return {false, "horizon mismatch"};
  ExtNat delta = profile.min_union_gap();
  if (cert.trivial) {
    if (!delta.is_infinite()) return {false, "trivial certificate but unions have gaps"};
    for (const ProfileRow& r : profile.rows)
      if (!r.unions.empty() && r.unions != NatSet{r.k})
        return {false, "non-singleton union in gap-free profile"};
    return {};
  }
  if (delta.is_infinite()) return {false, "gap-free profile needs a trivial certificate"};
  if (cert.difference != delta.value())
    return {false, "difference " + std::to_string(cert.difference) +
                       " is not the minimal union gap " + std::to_string(delta.value())};
  if (cert.onset > profile.k_horizon / 2) return {false, "onset beyond half the horizon"};
  for (uint32_t k = cert.onset; k <= profile.k_horizon; ++k)
    if (!detail::structure_row_ok(profile.rows[k], cert.difference, cert.bound))
      return {false, "condition fails at k=" + std::to_string(k)};
  return {};
}

// --- end-pattern period certificate ---

struct PeriodCertificate {
  uint32_t period = 1;
  uint32_t onset = 0;
  uint32_t window = 0;
  uint32_t horizon = 0;
  std::vector<NatSet> left_patterns;   // entry r: pattern of k = onset + r
  std::vector<NatSet> right_patterns;
};

struct PeriodRefusal {
  uint32_t best_period = 1;
  uint32_t best_onset = 0;
  uint32_t blocking_k = 0;
};

namespace detail {

inline NatSet left_pattern(const ProfileRow& r, uint32_t window) {
  NatSet out;
  if (r.unions.empty()) return out;
  uint32_t lo = static_cast<uint32_t>(r.lower.value());
  for (uint32_t v : r.unions.values()) {
    if (v - lo > window) break;
    out.insert(v - lo);
  }
  return out;
}

inline NatSet right_pattern(const ProfileRow& r, uint32_t window) {
  NatSet out;
  if (r.unions.empty()) return out;
  uint32_t hi = static_cast<uint32_t>(r.upper.value());
  for (uint32_t v : r.unions.values())
    if (hi - v <= window) out.insert(hi - v);
  return out;
}

}  // namespace detail

inline std::variant<PeriodCertificate, PeriodRefusal> certify_period(
    const UnionsProfile& profile, uint32_t window) {
  if (!profile.all_exact)
    throw std::invalid_argument("period certificates need an exact profile");
  uint32_t h = profile.k_horizon;
  std::vector<NatSet> left(h + 1), right(h + 1);
  for (uint32_t k = 0; k <= h; ++k) {
    left[k] = detail::left_pattern(profile.rows[k], window);
    right[k] = detail::right_pattern(profile.rows[k], window);
  }
  std::optional<PeriodRefusal> best;
  for (uint32_t mu = 1; mu <= h / 2; ++mu) {
    int64_t viol = -1;
    for (int64_t k = h - mu; k >= 0; --k)
      if (left[k] != left[k + mu] || right[k] != right[k + mu]) {
        viol = k;
        break;
      }
    uint32_t onset = static_cast<uint32_t>(viol + 1);
    if (onset <= h / 2) {
      PeriodCertificate cert;
      cert.period = mu;
      cert.onset = onset;
      cert.window = window;
      cert.horizon = h;
      for (uint32_t r = 0; r < mu; ++r) {
        cert.left_patterns.push_back(left[onset + r]);
        cert.right_patterns.push_back(right[onset + r]);
      }
      return cert;
    }
    if (!best || onset < best->best_onset)
      best = PeriodRefusal{mu, onset, static_cast<uint32_t>(viol < 0 ? 0 : viol)};
  }
  return *best;
}

inline VerifyResult verify_period(const UnionsProfile& profile, const PeriodCertificate& cert) {
  if (!profile.all_exact) return {false, "profile is not exact"};
  if (cert.horizon != profile.k_horizon) return {false, "horizon mismatch"};
  if (cert.period == 0 || cert.period > profile.k_horizon / 2)
    return {false, "period outside [1, horizon/2]"};
  if (cert.onset > profile.k_horizon / 2) return {false, "onset beyond half the horizon"};
  if (cert.left_patterns.size() != cert.period || cert.right_patterns.size() != cert.period)
    return {false, "pattern list does not match the period"};
  for (uint32_t k = cert.onset; k <= profile.k_horizon; ++k) {
    uint32_t r = (k - cert.onset) % cert.period;
    if (detail::left_pattern(profile.rows[k], cert.window) != cert.left_patterns[r])
      return {false, "left pattern mismatch at k=" + std::to_string(k)};
    if (detail::right_pattern(profile.rows[k], cert.window) != cert.right_patterns[r])
      return {false, "right pattern mismatch at k=" + std::to_string(k)};
  }
  return {};
}

// --- one-step growth certificate ---

struct GrowthCertificate {
  uint32_t step_bound = 0;  // K: upper(k+1) <= upper(k) + K, lower dually
  uint32_t onset = 0;
  uint32_t horizon = 0;
  // Minimal q-step bounds on the same range, exercising the equivalence of
  // one-step and q-step growth control.
  std::vector<std::pair<uint32_t, uint32_t>> multi_step;
};

namespace detail {

inline int64_t growth_increment(const ProfileRow& a, const ProfileRow& b) {
  // max growth of the upper end and decay of the lower end from row a to b
  int64_t up = static_cast<int64_t>(b.upper.value()) - static_cast<int64_t>(a.upper.value());
  int64_t down = static_cast<int64_t>(a.lower.value()) - static_cast<int64_t>(b.lower.value());
  return std::max<int64_t>({up, down, 0});
}

}  // namespace detail

inline GrowthCertificate certify_growth(const UnionsProfile& profile) {
  if (!profile.all_exact)
    throw std::invalid_argument("growth certificates need an exact profile");
  GrowthCertificate cert;
  cert.horizon = profile.k_horizon;
  uint32_t h = profile.k_horizon;
  uint32_t tail = h + 1;  // first k of the all-non-empty suffix
  for (int64_t k = h; k >= 0 && !profile.rows[k].unions.empty(); --k)
    tail = static_cast<uint32_t>(k);
  if (tail > h) {  // no non-empty suffix at all
    cert.onset = h;
    return cert;
  }
  uint32_t mid = std::max(tail, h / 2);
  int64_t bound = 0;
  for (uint32_t k = mid; k < h; ++k)
    bound = std::max(bound, detail::growth_increment(profile.rows[k], profile.rows[k + 1]));
  cert.step_bound = static_cast<uint32_t>(bound);
  uint32_t onset = mid;
  while (onset > tail &&
         detail::growth_increment(profile.rows[onset - 1], profile.rows[onset]) <= bound)
    --onset;
  cert.onset = onset;
  for (uint32_t q = 2; q <= 3; ++q) {
    int64_t nq = 0;
    for (uint32_t k = cert.onset; k + q <= h; ++k)
      nq = std::max(nq, detail::growth_increment(profile.rows[k], profile.rows[k + q]));
    cert.multi_step.emplace_back(q, static_cast<uint32_t>(nq));
  }
  return cert;
}

inline VerifyResult verify_growth(const UnionsProfile& profile, const GrowthCertificate& cert) {
  if (!profile.all_exact) return {false, "profile is not exact"};
  if (cert.horizon != profile.k_horizon) return {false, "horizon mismatch"};
  for (uint32_t k = cert.onset; k < profile.k_horizon; ++k) {
    if (profile.rows[k].unions.empty() || profile.rows[k + 1].unions.empty())
      return {false, "empty union inside the certified range at k=" + std::to_string(k)};
    if (detail::growth_increment(profile.rows[k], profile.rows[k + 1]) > cert.step_bound)
      return {false, "one-step bound fails at k=" + std::to_string(k)};
  }
  for (auto [q, nq] : cert.multi_step)
    for (uint32_t k = cert.onset; k + q <= profile.k_horizon; ++k)
      if (detail::growth_increment(profile.rows[k], profile.rows[k + q]) > nq)
        return {false, "multi-step bound fails at k=" + std::to_string(k)};
  return {};
}

// --- value-periodicity identities ---

struct PeriodicityIdentities {
  bool ok = false;
  uint32_t m = 0;
  uint32_t onset = 0;
  uint64_t checked = 0;         // identities actually evaluated on the range
  std::string counterexample;   // first failure for the best candidate when !ok
};

// Search the least m (with m*rho and m*lambda integral) such that from some
// onset in the lower half of the horizon, min/max and all nested min/max of
// the unions advance by exactly m*lambda / m*rho per period.  Depths where
// both nested unions are empty are skipped; a depth that is empty on one
// side only counts as a violation (the nesting structure must align).
inline PeriodicityIdentities verify_key_periodicity(const UnionsProfile& profile,
                                                    const ElasticityReport& el) {
  if (!profile.all_exact)
    throw std::invalid_argument("value periodicity needs an exact profile");
  if (el.rho.is_infinite() || el.rho.is_zero())
    throw std::invalid_argument("value periodicity needs finite non-zero elasticity");
  if (el.accepted != Accepted::yes)
    throw std::invalid_argument("value periodicity needs accepted elasticity");
  uint32_t h = profile.k_horizon;
  PeriodicityIdentities best;
  for (uint32_t m = 1; m <= h / 2; ++m) {
    ExtRat m_rho = ExtNat(m) * el.rho;
    ExtRat m_lambda = ExtNat(m) * el.lambda;
    if (!m_rho.is_integer() || !m_lambda.is_integer()) continue;
    uint64_t up_step = m_rho.integer_value();
    uint64_t down_step = m_lambda.integer_value();
    int64_t viol = -1;
    std::string reason;
    uint64_t checked = 0;
    for (int64_t k = h - m; k >= 0 && viol < 0; --k) {
      const ProfileRow& a = profile.rows[k];
      const ProfileRow& b = profile.rows[k + m];
      bool a_empty = a.unions.empty(), b_empty = b.unions.empty();
      if (a_empty && b_empty) continue;
      if (a_empty != b_empty) {
        viol = k;
        reason = "emptiness mismatch at k=" + std::to_string(k);
        break;
      }
      if (b.upper != a.upper + ExtNat(up_step) || b.lower != a.lower + ExtNat(down_step)) {
        viol = k;
        reason = "endpoint step mismatch at k=" + std::to_string(k);
        break;
      }
      checked += 2;
      for (uint32_t i = 2; i <= profile.i_max; ++i) {
        ExtNat al = a.nested_lower[i - 1], au = a.nested_upper[i - 1];
        ExtNat bl = b.nested_lower[i - 1], bu = b.nested_upper[i - 1];
        bool ae = al.is_infinite(), be = bl.is_infinite();  // empty nested union
        if (ae && be) continue;
        if (ae != be) {
          viol = k;
          reason = "nested emptiness mismatch at k=" + std::to_string(k) +
                   " depth=" + std::to_string(i);
          break;
        }
        // Steps of the nested ends, and invariance of the end offsets.
        if (bu != au + ExtNat(up_step) || bl != al + ExtNat(down_step) ||
            b.upper - bu != a.upper - au || bl - b.lower != al - a.lower) {
          viol = k;
          reason = "nested step mismatch at k=" + std::to_string(k) +
                   " depth=" + std::to_string(i);
          break;
        }
        checked += 4;
      }
    }
    uint32_t onset = static_cast<uint32_t>(viol + 1);
    if (onset <= h / 2 && checked > 0) {
      PeriodicityIdentities out;
      out.ok = true;
      out.m = m;
      out.onset = onset;
      out.checked = checked;
      return out;
    }
    if (!best.m || onset < best.onset) {
      best.m = m;
      best.onset = onset;
      best.checked = checked;
      best.counterexample = reason;
    }
  }
  return best;
}

// Bound from the certified structure data under which every union in range
// decomposes as an AAP: the certificate bound on the certified suffix, and
// one more than the largest union max before the onset.
inline uint32_t aap_bound_from_certificate(const UnionsProfile& profile,
                                           const StructureCertificate& cert) {
  uint64_t n = 0;
  for (uint32_t k = 0; k < cert.onset; ++k)
    if (!profile.rows[k].unions.empty())
      n = std::max(n, profile.rows[k].upper.value() + 1);
  return static_cast<uint32_t>(std::max<uint64_t>(cert.bound, n));
}

// One-sided upper variant: least M' such that from a low onset every class
// point in [k, upper(k) - M'] lies in the union.  Feeds the equivalence with
// the two-sided certificate.
inline std::optional<std::pair<uint32_t, uint32_t>> certify_upper_only(
    const UnionsProfile& profile, uint32_t d) {
  uint32_t m_max = 0;
  for (const ProfileRow& r : profile.rows)
    if (!r.unions.empty())
      m_max = std::max(m_max,
                       static_cast<uint32_t>(r.upper.value() - r.lower.value()) / 2 + 1);
  for (uint32_t m = 0; m <= m_max; ++m) {
    int64_t viol = -1;
    for (int64_t k = profile.k_horizon; k >= 0; --k) {
      const ProfileRow& r = profile.rows[k];
      if (r.unions.empty()) continue;
      uint32_t residue = r.k % d;
      bool ok = true;
      for (int64_t v = k; v <= static_cast<int64_t>(r.upper.value()) - m; ++v) {
        if (v % d != residue) continue;
        if (!r.unions.contains(static_cast<uint32_t>(v))) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        viol = k;
        break;
      }
    }
    uint32_t onset = static_cast<uint32_t>(viol + 1);
    if (onset <= profile.k_horizon / 2) return std::make_pair(m, onset);
  }
  return std::nullopt;
}

}  // namespace lengths
