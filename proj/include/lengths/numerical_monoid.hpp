#pragma once

// Numerical monoid <g1,...,gr>: the additive submonoid of N generated by a
// minimal system of generators with gcd 1.  Length sets are computed by a
// dynamic program over values; unions of length sets by scanning the exact
// value window [g_min*k, g_max*k].

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lengths/natset.hpp"

namespace lengths {

class NumericalMonoid {
 public:
  explicit NumericalMonoid(std::vector<uint32_t> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw std::invalid_argument("generators must be non-empty");
    for (size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i] == 0) throw std::invalid_argument("generators must be positive");
      if (i && gens_[i] <= gens_[i - 1])
        throw std::invalid_argument("generators must be strictly ascending");
    }
    uint64_t g = 0;
    for (uint32_t v : gens_) g = std::gcd(g, static_cast<uint64_t>(v));
    if (g != 1) throw std::invalid_argument("gcd(generators) != 1");
    check_minimality();
  }

  const std::vector<uint32_t>& generators() const { return gens_; }
  uint32_t min_generator() const { return gens_.front(); }
  uint32_t max_generator() const { return gens_.back(); }

  // Achievable factorization lengths for every value up to max_value.
  // table[x] is empty exactly when x is a gap of the monoid.
  std::vector<NatSet> length_table(uint32_t max_value) const {
    std::vector<NatSet> table(static_cast<size_t>(max_value) + 1);
    table[0].insert(0);
    for (uint32_t x = 1; x <= max_value; ++x) {
      for (uint32_t g : gens_) {
        if (g > x) break;
        if (!table[x - g].empty()) table[x].unite(table[x - g].shifted(1));
      }
    }
    return table;
  }

  // Weighted variant: lengths are sums of per-generator weights instead of
  // plain counts.  weights must align with generators().
  std::vector<NatSet> length_table(uint32_t max_value,
                                   const std::vector<uint32_t>& weights) const {
    if (weights.size() != gens_.size())
      throw std::invalid_argument("weights must align with generators");
    std::vector<NatSet> table(static_cast<size_t>(max_value) + 1);
    table[0].insert(0);
    for (uint32_t x = 1; x <= max_value; ++x) {
      for (size_t i = 0; i < gens_.size(); ++i) {
        uint32_t g = gens_[i];
        if (g > x) break;
        if (!table[x - g].empty()) table[x].unite(table[x - g].shifted(weights[i]));
      }
    }
    return table;
  }

  // Set of lengths L(x); empty when x is not in the monoid, L(0) = {0}.
  NatSet length_set(uint32_t x) const { return length_table(x)[x]; }

  // Union over all L(x) containing k.  A length-k factorization of x forces
  // g_min*k <= x <= g_max*k, so scanning that window is exact.
  NatSet unions(uint32_t k) const {
    uint64_t hi = static_cast<uint64_t>(max_generator()) * k;
    std::vector<NatSet> table = length_table(static_cast<uint32_t>(hi));
    NatSet out;
    for (uint64_t x = static_cast<uint64_t>(min_generator()) * k; x <= hi; ++x)
      if (table[x].contains(k)) out.unite(table[x]);
    return out;
  }

  // Distinct length sets containing k, ascending by the value x that
  // produced them (duplicates removed).
  std::vector<NatSet> members_containing(uint32_t k) const {
    uint64_t hi = static_cast<uint64_t>(max_generator()) * k;
    std::vector<NatSet> table = length_table(static_cast<uint32_t>(hi));
    std::vector<NatSet> out;
    for (uint64_t x = static_cast<uint64_t>(min_generator()) * k; x <= hi; ++x) {
      if (!table[x].contains(k)) continue;
      bool seen = false;
      for (const NatSet& s : out)
        if (s == table[x]) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(table[x]);
    }
    return out;
  }

 private:
  // Each generator must be irreducible over the others: g_j representable
  // as an N-combination of the remaining generators is rejected.
  void check_minimality() const {
    for (size_t j = 0; j < gens_.size(); ++j) {
      uint32_t target = gens_[j];
      std::vector<char> reach(target + 1, 0);
      reach[0] = 1;
      for (uint32_t x = 1; x <= target; ++x)
        for (size_t i = 0; i < gens_.size(); ++i)
          if (i != j && gens_[i] <= x && reach[x - gens_[i]]) reach[x] = 1;
      if (reach[target])
        throw std::invalid_argument("generator " + std::to_string(target) +
                                    " is redundant");
    }
  }

  std::vector<uint32_t> gens_;
};

}  // namespace lengths
