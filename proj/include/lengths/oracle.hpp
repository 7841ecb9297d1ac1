#pragma once

// Slow reference implementations used to cross-check the fast paths.  Every
// routine here recomputes its answer directly from the definitions — plain
// pairwise set sums, unmemoized factorization recursions, literal
// enumeration of atom multisets — sharing only the set container and the
// backend presentations (generator lists, atom lists) with the main code.
// No dynamic programming, no memoization, no doubling.
//
// The recursions are exponential, so calls are bounded by an explicit
// budget checked up front: the oracle refuses (throws OracleExhausted)
// rather than silently truncating.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lengths/block_monoid.hpp"
#include "lengths/family.hpp"
#include "lengths/natset.hpp"
#include "lengths/numerical_monoid.hpp"

namespace lengths {

class OracleExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  uint32_t max_atoms_product = 64;  // atoms per product / coefficient sums
  uint32_t max_value = 4096;        // element values / sequence letters
  uint32_t max_k = 64;              // union index

  void need_product(uint64_t n) const {
    if (n > max_atoms_product)
      throw OracleExhausted("oracle: product of " + std::to_string(n) +
                            " atoms exceeds the budget");
  }
  void need_value(uint64_t v) const {
    if (v > max_value)
      throw OracleExhausted("oracle: value " + std::to_string(v) + " exceeds the budget");
  }
  void need_k(uint64_t k) const {
    if (k > max_k)
      throw OracleExhausted("oracle: index " + std::to_string(k) + " exceeds the budget");
  }
};

namespace oracle {

// Pairwise sum of two sets by double loop.
inline NatSet slow_sum(const NatSet& a, const NatSet& b) {
  NatSet out;
  for (uint32_t x : a.values())
    for (uint32_t y : b.values()) out.insert(x + y);
  return out;
}

namespace detail {

inline void numerical_lengths_rec(const std::vector<uint32_t>& gens,
                                  const std::vector<uint32_t>& weights, uint32_t remaining,
                                  size_t max_idx, uint64_t count, NatSet& out) {
  if (remaining == 0) {
    out.insert(static_cast<uint32_t>(count));
    return;
  }
  for (size_t i = 0; i <= max_idx; ++i)
    if (gens[i] <= remaining)
      numerical_lengths_rec(gens, weights, remaining - gens[i], i, count + weights[i], out);
}

inline bool atom_fits(const ZeroSumSeq& atom, const std::vector<uint32_t>& rem) {
  for (size_t j = 0; j < rem.size(); ++j)
    if (atom.mult[j] > rem[j]) return false;
  return true;
}

inline void block_lengths_rec(const std::vector<ZeroSumSeq>& atoms,
                              const std::vector<uint32_t>& weights,
                              std::vector<uint32_t>& rem, size_t min_idx, uint64_t count,
                              NatSet& out) {
  bool done = true;
  for (uint32_t r : rem)
    if (r) {
      done = false;
      break;
    }
  if (done) {
    out.insert(static_cast<uint32_t>(count));
    return;
  }
  for (size_t i = min_idx; i < atoms.size(); ++i) {
    if (!atom_fits(atoms[i], rem)) continue;
    for (size_t j = 0; j < rem.size(); ++j) rem[j] -= atoms[i].mult[j];
    block_lengths_rec(atoms, weights, rem, i, count + weights[i], out);
    for (size_t j = 0; j < rem.size(); ++j) rem[j] += atoms[i].mult[j];
  }
}

// Exponent vectors over the generators with prescribed total weight.
template <typename Fn>
void numerical_exponents_rec(const std::vector<uint32_t>& gens,
                             const std::vector<uint32_t>& weights, size_t idx,
                             uint32_t weight_left, uint64_t value, Fn&& visit) {
  if (idx == gens.size()) {
    if (weight_left == 0) visit(value);
    return;
  }
  for (uint64_t a = 0; a * weights[idx] <= weight_left; ++a)
    numerical_exponents_rec(gens, weights, idx + 1,
                            static_cast<uint32_t>(weight_left - a * weights[idx]),
                            value + a * gens[idx], visit);
}

template <typename Fn>
void block_products_rec(const std::vector<ZeroSumSeq>& atoms,
                        const std::vector<uint32_t>& weights, size_t idx,
                        uint32_t weight_left, std::vector<uint32_t>& acc, Fn&& visit) {
  if (idx == atoms.size()) {
    if (weight_left == 0) visit(acc);
    return;
  }
  uint64_t added = 0;
  for (uint64_t a = 0; a * weights[idx] <= weight_left; ++a) {
    block_products_rec(atoms, weights, idx + 1,
                       static_cast<uint32_t>(weight_left - a * weights[idx]), acc, visit);
    for (size_t j = 0; j < acc.size(); ++j) acc[j] += atoms[idx].mult[j];
    ++added;
  }
  for (size_t j = 0; j < acc.size(); ++j)
    acc[j] -= static_cast<uint32_t>(added) * atoms[idx].mult[j];
}

inline std::vector<uint32_t> unit_weights_checked(size_t n, const std::vector<uint32_t>& w,
                                                  const char* what) {
  if (w.empty()) return std::vector<uint32_t>(n, 1);
  if (w.size() != n) throw std::invalid_argument(std::string("one weight per ") + what);
  for (uint32_t wi : w)
    if (wi == 0) throw std::invalid_argument("oracle needs positive weights");
  return w;
}

// Compositions of exactly `total` into the remaining positions, earlier
// positions taking larger parts first.
template <typename Fn>
void generated_compositions_rec(std::vector<uint32_t>& coeff, size_t idx, uint32_t total,
                                Fn&& visit) {
  if (idx + 1 == coeff.size()) {
    coeff[idx] = total;
    visit(coeff);
    return;
  }
  for (uint32_t a = total;; --a) {
    coeff[idx] = a;
    generated_compositions_rec(coeff, idx + 1, total - a, visit);
    if (a == 0) break;
  }
  coeff[idx] = 0;
}

}  // namespace detail

// Length set of x by plain recursion over non-increasing generator choices.
inline NatSet slow_numerical_length_set(const NumericalMonoid& m, uint32_t x,
                                        const OracleBudget& budget,
                                        const std::vector<uint32_t>& weights = {}) {
  budget.need_value(x);
  const std::vector<uint32_t>& gens = m.generators();
  std::vector<uint32_t> w = detail::unit_weights_checked(gens.size(), weights, "generator");
  NatSet out;
  detail::numerical_lengths_rec(gens, w, x, gens.size() - 1, 0, out);
  return out;
}

// Union of the length sets of every value expressible with total weight k:
// enumerate exponent vectors of weight k, collect the distinct values, then
// union their slow length sets.
inline NatSet slow_numerical_unions(const NumericalMonoid& m, uint32_t k,
                                    const OracleBudget& budget,
                                    const std::vector<uint32_t>& weights = {}) {
  budget.need_k(k);
  const std::vector<uint32_t>& gens = m.generators();
  std::vector<uint32_t> w = detail::unit_weights_checked(gens.size(), weights, "generator");
  std::set<uint64_t> values;
  detail::numerical_exponents_rec(gens, w, 0, k, 0,
                                  [&](uint64_t v) { values.insert(v); });
  NatSet out;
  for (uint64_t v : values)
    out.unite(slow_numerical_length_set(m, static_cast<uint32_t>(v), budget, weights));
  return out;
}

// Length set of a zero-sum element by unmemoized recursion.
inline NatSet slow_block_length_set(const BlockMonoid& b, const ZeroSumSeq& s,
                                    const OracleBudget& budget,
                                    const std::vector<uint32_t>& weights = {}) {
  budget.need_value(s.length());
  std::vector<uint32_t> w = detail::unit_weights_checked(b.atoms().size(), weights, "atom");
  NatSet out;
  std::vector<uint32_t> rem = s.mult;
  detail::block_lengths_rec(b.atoms(), w, rem, 0, 0, out);
  return out;
}

// Union over products of atom multisets with total weight k.
inline NatSet slow_block_unions(const BlockMonoid& b, uint32_t k, const OracleBudget& budget,
                                const std::vector<uint32_t>& weights = {}) {
  budget.need_k(k);
  budget.need_product(k);  // positive weights: at most k atoms in a product
  std::vector<uint32_t> w = detail::unit_weights_checked(b.atoms().size(), weights, "atom");
  std::set<std::vector<uint32_t>> products;
  std::vector<uint32_t> acc(b.atoms().empty() ? 0 : b.atoms().front().mult.size(), 0);
  detail::block_products_rec(b.atoms(), w, 0, k, acc,
                             [&](const std::vector<uint32_t>& p) { products.insert(p); });
  NatSet out;
  for (const std::vector<uint32_t>& p : products)
    out.unite(slow_block_length_set(b, ZeroSumSeq{p}, budget, weights));
  return out;
}

// Member of a generated family by literal repeated set addition.
inline NatSet slow_generated_member(const GeneratedFamily& fam,
                                    const std::vector<uint32_t>& coeff,
                                    const OracleBudget& budget) {
  if (coeff.size() != fam.generators.size())
    throw std::invalid_argument("one coefficient per generator required");
  uint64_t total = 0;
  for (uint32_t c : coeff) total += c;
  budget.need_product(total);
  NatSet acc{0};
  for (size_t i = 0; i < coeff.size(); ++i)
    for (uint32_t t = 0; t < coeff[i]; ++t) acc = slow_sum(acc, fam.generators[i]);
  return acc;
}

// All members with coefficient sum up to the given bound, ordered by
// coefficient sum and then by giving earlier generators larger shares;
// first occurrence of each distinct member kept.
inline std::vector<NatSet> slow_generated_members(const GeneratedFamily& fam,
                                                  uint32_t coeff_sum_bound,
                                                  const OracleBudget& budget) {
  budget.need_product(coeff_sum_bound);
  std::vector<NatSet> out;
  std::vector<uint32_t> coeff(fam.generators.size(), 0);
  for (uint32_t total = 1; total <= coeff_sum_bound; ++total)
    detail::generated_compositions_rec(
        coeff, 0, total, [&](const std::vector<uint32_t>& c) {
          NatSet m = slow_generated_member(fam, c, budget);
          for (const NatSet& s : out)
            if (s == m) return;
          out.push_back(m);
        });
  return out;
}

// Unions of an exact generated family: a member whose minimum is at least
// its coefficient sum can only contain k when that sum is at most k; the
// identity {0} accounts for k = 0.
inline NatSet slow_generated_unions(const GeneratedFamily& fam, uint32_t k,
                                    const OracleBudget& budget) {
  if (!fam.exact())
    throw std::invalid_argument("oracle unions need an exact generated family");
  budget.need_k(k);
  if (k == 0) return NatSet{0};
  NatSet out;
  for (const NatSet& m : slow_generated_members(fam, k, budget))
    if (m.contains(k)) out.unite(m);
  return out;
}

// Distances of consecutive elements, by plain scan.
inline NatSet slow_delta(const NatSet& l) {
  NatSet out;
  std::vector<uint32_t> v = l.values();
  for (size_t i = 1; i < v.size(); ++i) out.insert(v[i] - v[i - 1]);
  return out;
}

// gcd of the positive elements (0 for sets inside {0}).
inline uint64_t slow_positive_gcd(const NatSet& l) {
  uint64_t g = 0;
  for (uint32_t v : l.values())
    if (v > 0) g = std::gcd(g, static_cast<uint64_t>(v));
  return g;
}

}  // namespace oracle

// Result of a fast-path/oracle cross-check.
struct OracleComparison {
  uint64_t comparisons = 0;
  std::vector<std::string> mismatches;  // first few, human-readable
  bool ok() const { return mismatches.empty(); }
};

namespace oracle {

namespace detail {

inline void record(OracleComparison& cmp, const std::string& what, const NatSet& fast,
                   const NatSet& slow) {
  ++cmp.comparisons;
  if (fast == slow) return;
  if (cmp.mismatches.size() < 8)
    cmp.mismatches.push_back(what + ": fast " + fast.to_string() + ", reference " +
                             slow.to_string());
}

inline void record_value(OracleComparison& cmp, const std::string& what, uint64_t fast,
                         uint64_t slow) {
  ++cmp.comparisons;
  if (fast == slow) return;
  if (cmp.mismatches.size() < 8)
    cmp.mismatches.push_back(what + ": fast " + std::to_string(fast) + ", reference " +
                             std::to_string(slow));
}

// Sort a list of sets into a canonical order for order-insensitive equality.
inline std::vector<std::vector<uint32_t>> canonical_list(const std::vector<NatSet>& sets) {
  std::vector<std::vector<uint32_t>> out;
  for (const NatSet& s : sets) out.push_back(s.values());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Cross-check every length-set, union, distance, and gcd answer of the fast
// paths against the slow reference on a shared domain: values reachable by
// at most kmax atoms and union indices up to kmax.  Requires an exact-mode
// family (truncated answers have nothing to be checked against).
inline OracleComparison compare_with_oracle(const LengthSystem& sys, uint32_t kmax,
                                            const OracleBudget& budget = {}) {
  if (!sys.exact_mode())
    throw std::invalid_argument("oracle comparison needs an exact-mode family");
  budget.need_k(kmax);
  OracleComparison cmp;
  NatSet fast_family_delta, slow_family_delta;
  uint64_t slow_gcd = 0;

  switch (sys.kind()) {
    case LengthSystem::Kind::numerical: {
      const NumericalMonoid& m = sys.numerical();
      uint64_t hi =
          std::min<uint64_t>(static_cast<uint64_t>(m.max_generator()) * kmax, budget.max_value);
      std::vector<NatSet> table = sys.weighted()
                                      ? m.length_table(static_cast<uint32_t>(hi), sys.weights())
                                      : m.length_table(static_cast<uint32_t>(hi));
      for (uint32_t x = 0; x <= hi; ++x) {
        NatSet slow = slow_numerical_length_set(m, x, budget, sys.weights());
        detail::record(cmp, "L(" + std::to_string(x) + ")", table[x], slow);
        fast_family_delta.unite(table[x].delta_set());
        slow_family_delta.unite(slow_delta(slow));
        slow_gcd = std::gcd(slow_gcd, slow_positive_gcd(slow));
      }
      for (uint32_t k = 0; k <= kmax; ++k)
        detail::record(cmp, "unions(" + std::to_string(k) + ")", sys.unions(k).set,
                       slow_numerical_unions(m, k, budget, sys.weights()));
      break;
    }
    case LengthSystem::Kind::block: {
      const BlockMonoid& b = sys.block();
      std::vector<uint32_t> w =
          sys.weighted() ? sys.weights() : std::vector<uint32_t>(b.atoms().size(), 1);
      uint32_t depth = std::min(kmax, budget.max_atoms_product);
      for (const ZeroSumSeq& s : b.elements_up_to(depth)) {
        NatSet fast = b.length_set(s, w);
        NatSet slow = slow_block_length_set(b, s, budget, sys.weights());
        detail::record(cmp, "L(element of " + std::to_string(s.length()) + " letters)", fast,
                       slow);
        fast_family_delta.unite(fast.delta_set());
        slow_family_delta.unite(slow_delta(slow));
        slow_gcd = std::gcd(slow_gcd, slow_positive_gcd(slow));
      }
      for (uint32_t k = 0; k <= kmax; ++k)
        detail::record(cmp, "unions(" + std::to_string(k) + ")", sys.unions(k).set,
                       slow_block_unions(b, k, budget, sys.weights()));
      break;
    }
    case LengthSystem::Kind::generated: {
      const GeneratedFamily& fam = sys.generated();
      std::vector<NatSet> slow_members = slow_generated_members(fam, kmax, budget);
      // Fast side of the member list: doubling-based n-fold sumsets over the
      // same coefficient bound.
      std::vector<NatSet> fast_members;
      std::vector<uint32_t> coeff(fam.generators.size(), 0);
      std::function<void(size_t, uint32_t)> rec = [&](size_t idx, uint32_t left) {
        if (idx == coeff.size()) {
          uint32_t tot = 0;
          for (uint32_t c : coeff) tot += c;
          if (tot == 0) return;
          NatSet member{0};
          for (size_t i = 0; i < coeff.size(); ++i)
            if (coeff[i]) member = sumset(member, n_fold_sumset(fam.generators[i], coeff[i]));
          for (const NatSet& s : fast_members)
            if (s == member) return;
          fast_members.push_back(member);
          return;
        }
        for (uint32_t a = 0; a <= left; ++a) {
          coeff[idx] = a;
          rec(idx + 1, left - a);
        }
        coeff[idx] = 0;
      };
      rec(0, kmax);
      ++cmp.comparisons;
      if (detail::canonical_list(fast_members) != detail::canonical_list(slow_members) &&
          cmp.mismatches.size() < 8)
        cmp.mismatches.push_back("member list mismatch at coefficient sum " +
                                 std::to_string(kmax));
      for (const NatSet& s : fast_members) fast_family_delta.unite(s.delta_set());
      for (const NatSet& s : slow_members) {
        slow_family_delta.unite(slow_delta(s));
        slow_gcd = std::gcd(slow_gcd, slow_positive_gcd(s));
      }
      for (uint32_t k = 0; k <= kmax; ++k) {
        detail::record(cmp, "unions(" + std::to_string(k) + ")", sys.unions(k).set,
                       slow_generated_unions(fam, k, budget));
        std::vector<NatSet> slow_containing;
        if (k == 0) {
          slow_containing.push_back(NatSet{0});
        } else {
          for (const NatSet& s : slow_members)
            if (s.contains(k)) slow_containing.push_back(s);
        }
        ++cmp.comparisons;
        if (detail::canonical_list(sys.members_containing(k)) !=
                detail::canonical_list(slow_containing) &&
            cmp.mismatches.size() < 8)
          cmp.mismatches.push_back("members_containing(" + std::to_string(k) + ") mismatch");
      }
      break;
    }
    case LengthSystem::Kind::explicit_list: {
      const std::vector<NatSet>& members = sys.explicit_family().members;
      for (const NatSet& s : members) {
        fast_family_delta.unite(s.delta_set());
        slow_family_delta.unite(slow_delta(s));
        slow_gcd = std::gcd(slow_gcd, slow_positive_gcd(s));
      }
      for (uint32_t k = 0; k <= kmax; ++k) {
        NatSet slow;
        for (const NatSet& s : members)
          if (s.contains(k)) slow.unite(s);
        detail::record(cmp, "unions(" + std::to_string(k) + ")", sys.unions(k).set, slow);
      }
      break;
    }
  }

  detail::record(cmp, "family distance set", fast_family_delta, slow_family_delta);
  detail::record_value(cmp, "positive gcd", sys.positive_gcd(), slow_gcd);

  // Minimal union distance (the authoritative route to the least gap).
  ExtNat fast_min = ExtNat::infinity(), slow_min = ExtNat::infinity();
  for (uint32_t k = 0; k <= kmax; ++k) {
    NatSet fd = sys.unions(k).set.delta_set();
    if (!fd.empty()) fast_min = std::min(fast_min, ExtNat(fd.min()));
    NatSet sd;
    switch (sys.kind()) {
      case LengthSystem::Kind::numerical:
        sd = slow_delta(slow_numerical_unions(sys.numerical(), k, budget, sys.weights()));
        break;
      case LengthSystem::Kind::block:
        sd = slow_delta(slow_block_unions(sys.block(), k, budget, sys.weights()));
        break;
      case LengthSystem::Kind::generated:
        sd = slow_delta(slow_generated_unions(sys.generated(), k, budget));
        break;
      case LengthSystem::Kind::explicit_list: {
        NatSet u;
        for (const NatSet& s : sys.explicit_family().members)
          if (s.contains(k)) u.unite(s);
        sd = slow_delta(u);
        break;
      }
    }
    if (!sd.empty()) slow_min = std::min(slow_min, ExtNat(sd.min()));
  }
  ++cmp.comparisons;
  if (!(fast_min == slow_min) && cmp.mismatches.size() < 8)
    cmp.mismatches.push_back("minimal union distance: fast " + fast_min.to_string() +
                             ", reference " + slow_min.to_string());
  return cmp;
}

}  // namespace oracle
}  // namespace lengths
