#pragma once

// Per-k profile of a length system: the union of length sets containing k,
// its min/max, the nested unions obtained by stripping extremes, and the
// gap structure.  Rows are independent, so construction parallelizes over k.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "lengths/family.hpp"
#include "lengths/natset.hpp"

namespace lengths {

// i-th nested union: strip the current min and max (i-1) times.
inline NatSet nested_unions(const NatSet& u, uint32_t i) {
  NatSet s = u;
  for (uint32_t step = 1; step < i; ++step) {
    if (s.empty()) break;
    uint32_t lo = s.min(), hi = s.max();
    s.erase(lo);
    s.erase(hi);
  }
  return s;
}

struct ProfileRow {
  uint32_t k = 0;
  NatSet unions;
  bool exact = true;
  ExtNat lower;                       // min of the union (inf when empty)
  ExtNat upper;                       // max of the union (0 when empty; inf when pumped)
  std::vector<ExtNat> nested_lower;   // index i-1 holds the i-th nested min
  std::vector<ExtNat> nested_upper;
  ExtNat sup_gap;                     // sup of the union's delta set (0 when empty)
  bool gap_set_empty = true;
};

struct UnionsProfile {
  uint32_t k_horizon = 0;
  uint32_t i_max = 8;
  bool all_exact = true;
  std::vector<ProfileRow> rows;  // index k = 0..k_horizon

  const ProfileRow& row(uint32_t k) const { return rows.at(k); }

  // Observed minimal gap across all unions up to the horizon (the
  // authoritative route to the family's minimal distance).
  ExtNat min_union_gap() const {
    ExtNat best = ExtNat::infinity();
    for (const ProfileRow& r : rows) {
      NatSet d = r.unions.delta_set();
      if (!d.empty() && ExtNat(d.min()) < best) best = ExtNat(d.min());
    }
    return best;
  }

  static UnionsProfile build(const LengthSystem& system, uint32_t k_horizon,
                             uint32_t i_max = 8, unsigned threads = 1);
};

inline ProfileRow build_row(const LengthSystem& system, uint32_t k, uint32_t i_max) {
  ProfileRow row;
  row.k = k;
  TaggedSet u = system.unions(k);
  row.unions = u.set;
  row.exact = u.exact;
  row.lower = row.unions.inf();
  row.upper = row.unions.sup();
  if (system.pumping_infinite() && !row.unions.empty()) {
    row.upper = ExtNat::infinity();  // unions of pumping families are infinite
    row.exact = false;
  }
  for (uint32_t i = 1; i <= i_max; ++i) {
    NatSet nested = nested_unions(row.unions, i);
    row.nested_lower.push_back(nested.inf());
    ExtNat up = nested.sup();
    if (system.pumping_infinite() && !nested.empty()) up = ExtNat::infinity();
    row.nested_upper.push_back(up);
  }
  NatSet gaps = row.unions.delta_set();
  row.gap_set_empty = gaps.empty();
  row.sup_gap = gaps.sup();
  return row;
}

inline UnionsProfile UnionsProfile::build(const LengthSystem& system, uint32_t k_horizon,
                                          uint32_t i_max, unsigned threads) {
  UnionsProfile profile;
  profile.k_horizon = k_horizon;
  profile.i_max = i_max;
  profile.rows.resize(static_cast<size_t>(k_horizon) + 1);
  if (threads <= 1) {
    for (uint32_t k = 0; k <= k_horizon; ++k)
      profile.rows[k] = build_row(system, k, i_max);
  } else {
    // Rows are pure functions of (system, k); workers write disjoint slots,
    // so the result is identical to the sequential build.
    std::vector<std::thread> pool;
    std::atomic<uint32_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        while (true) {
          uint32_t k = next.fetch_add(1);
          if (k > k_horizon) return;
          profile.rows[k] = build_row(system, k, i_max);
        }
      });
    for (std::thread& t : pool) t.join();
  }
  for (const ProfileRow& r : profile.rows)
    if (!r.exact) profile.all_exact = false;
  return profile;
}

}  // namespace lengths
