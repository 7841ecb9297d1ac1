#pragma once

// Block monoid B(G0): zero-sum sequences over a support G0 inside a finite
// abelian group, with atoms = minimal zero-sum sequences.  Length sets are
// computed by a memoized recursion over the remaining multiset; unions of
// length sets by enumerating atom multisets of total (weighted) length k.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "lengths/abelian_group.hpp"
#include "lengths/natset.hpp"

namespace lengths {

class BlockMonoid {
 public:
  BlockMonoid(FiniteAbelianGroup group, std::vector<uint32_t> support)
      : group_(std::move(group)), support_(std::move(support)) {
    atoms_ = enumerate_atoms(group_, support_);
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<uint32_t>& support() const { return support_; }
  const std::vector<ZeroSumSeq>& atoms() const { return atoms_; }

  uint32_t min_atom_length() const {
    uint32_t m = UINT32_MAX;
    for (const ZeroSumSeq& a : atoms_) m = std::min(m, a.length());
    return m;
  }
  uint32_t max_atom_length() const {
    uint32_t m = 0;
    for (const ZeroSumSeq& a : atoms_) m = std::max(m, a.length());
    return m;
  }

  bool is_element(const ZeroSumSeq& s) const {
    if (s.mult.size() != support_.size())
      throw std::invalid_argument("sequence has wrong support width");
    return sequence_sum(group_, support_, s.mult) == group_.zero();
  }

  // Set of factorization lengths of s; lengths count atoms, or sum the given
  // per-atom weights.  L(empty sequence) = {0}.
  NatSet length_set(const ZeroSumSeq& s) const {
    return length_set(s, std::vector<uint32_t>(atoms_.size(), 1));
  }

  NatSet length_set(const ZeroSumSeq& s, const std::vector<uint32_t>& atom_weights) const {
    if (atom_weights.size() != atoms_.size())
      throw std::invalid_argument("weights must align with atoms");
    if (!is_element(s)) throw std::invalid_argument("not a zero-sum sequence");
    std::map<std::vector<uint32_t>, NatSet> memo;
    return lengths_rec(s.mult, atom_weights, memo);
  }

  // Union over all L(x) containing k in the weighted length count.  Every
  // such x is a product of atoms whose weights sum to k, so enumerating
  // those multisets is exact whenever all weights are positive.
  NatSet unions(uint32_t k) const {
    return unions(k, std::vector<uint32_t>(atoms_.size(), 1));
  }

  NatSet unions(uint32_t k, const std::vector<uint32_t>& atom_weights) const {
    for (uint32_t w : atom_weights)
      if (w == 0)
        throw std::invalid_argument("unions with zero-weight atoms needs a budget");
    std::set<std::vector<uint32_t>> products;
    std::vector<uint32_t> acc(support_.size(), 0);
    collect_products(0, k, atom_weights, acc, products);
    NatSet out;
    if (k == 0) out.insert(0);  // identity element contributes L(1) = {0}
    std::map<std::vector<uint32_t>, NatSet> memo;
    for (const std::vector<uint32_t>& p : products)
      out.unite(lengths_rec(p, atom_weights, memo));
    return out;
  }

  // Budgeted variant tolerating zero-weight atoms: atom multisets with total
  // weight k and at most max_atoms atoms.  The result is a subset of the true
  // union; callers must flag it as truncated.
  NatSet unions_truncated(uint32_t k, const std::vector<uint32_t>& atom_weights,
                          uint32_t max_atoms) const {
    std::set<std::vector<uint32_t>> products;
    std::vector<uint32_t> acc(support_.size(), 0);
    collect_products_bounded(0, k, max_atoms, atom_weights, acc, products);
    NatSet out;
    if (k == 0) out.insert(0);
    std::map<std::vector<uint32_t>, NatSet> memo;
    for (const std::vector<uint32_t>& p : products)
      out.unite(lengths_rec(p, atom_weights, memo));
    return out;
  }

  // Distinct length sets containing k, ordered by their product multiset.
  std::vector<NatSet> members_containing(uint32_t k,
                                         const std::vector<uint32_t>& atom_weights) const {
    std::set<std::vector<uint32_t>> products;
    std::vector<uint32_t> acc(support_.size(), 0);
    collect_products(0, k, atom_weights, acc, products);
    std::vector<NatSet> out;
    std::map<std::vector<uint32_t>, NatSet> memo;
    if (k == 0) out.push_back(NatSet{0});
    for (const std::vector<uint32_t>& p : products) {
      NatSet l = lengths_rec(p, atom_weights, memo);
      bool seen = false;
      for (const NatSet& s : out)
        if (s == l) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(l);
    }
    return out;
  }

  // Distinct elements (as multisets) that are products of at most max_atoms
  // atoms — a member sample for distance-set scans.
  std::vector<ZeroSumSeq> elements_up_to(uint32_t max_atoms) const {
    std::set<std::vector<uint32_t>> seen;
    seen.insert(std::vector<uint32_t>(support_.size(), 0));
    std::set<std::vector<uint32_t>> frontier = seen;
    for (uint32_t step = 0; step < max_atoms; ++step) {
      std::set<std::vector<uint32_t>> next;
      for (const std::vector<uint32_t>& v : frontier)
        for (const ZeroSumSeq& a : atoms_) {
          std::vector<uint32_t> w = v;
          for (size_t i = 0; i < w.size(); ++i) w[i] += a.mult[i];
          if (seen.insert(w).second) next.insert(w);
        }
      frontier = std::move(next);
    }
    std::vector<ZeroSumSeq> out;
    for (const std::vector<uint32_t>& v : seen) out.push_back(ZeroSumSeq{v});
    return out;
  }

 private:
  NatSet lengths_rec(const std::vector<uint32_t>& rem, const std::vector<uint32_t>& weights,
                     std::map<std::vector<uint32_t>, NatSet>& memo) const {
    bool zero = true;
    for (uint32_t m : rem)
      if (m) {
        zero = false;
        break;
      }
    if (zero) return NatSet{0};
    auto it = memo.find(rem);
    if (it != memo.end()) return it->second;
    NatSet result;
    for (size_t ai = 0; ai < atoms_.size(); ++ai) {
      const ZeroSumSeq& a = atoms_[ai];
      bool fits = true;
      for (size_t i = 0; i < rem.size(); ++i)
        if (a.mult[i] > rem[i]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      std::vector<uint32_t> next = rem;
      for (size_t i = 0; i < rem.size(); ++i) next[i] -= a.mult[i];
      result.unite(lengths_rec(next, weights, memo).shifted(weights[ai]));
    }
    memo.emplace(rem, result);
    return result;
  }

  // DFS over atom multisets (non-decreasing atom index) with total weight
  // exactly `remaining`; accumulates the distinct products.
  void collect_products(size_t first_atom, uint32_t remaining,
                        const std::vector<uint32_t>& weights, std::vector<uint32_t>& acc,
                        std::set<std::vector<uint32_t>>& out) const {
    if (remaining == 0) {
      bool zero = true;
      for (uint32_t m : acc)
        if (m) {
          zero = false;
          break;
        }
      if (!zero) out.insert(acc);
      return;
    }
    for (size_t ai = first_atom; ai < atoms_.size(); ++ai) {
      if (weights[ai] > remaining) continue;
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += atoms_[ai].mult[i];
      collect_products(ai, remaining - weights[ai], weights, acc, out);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] -= atoms_[ai].mult[i];
    }
  }

  void collect_products_bounded(size_t first_atom, uint32_t remaining, uint32_t atoms_left,
                                const std::vector<uint32_t>& weights,
                                std::vector<uint32_t>& acc,
                                std::set<std::vector<uint32_t>>& out) const {
    if (remaining == 0) {
      bool zero = true;
      for (uint32_t m : acc)
        if (m) {
          zero = false;
          break;
        }
      if (!zero) out.insert(acc);
      // Fall through: zero-weight atoms may extend a weight-k product into
      // further elements whose length sets also contain k.
    }
    if (atoms_left == 0) return;
    for (size_t ai = first_atom; ai < atoms_.size(); ++ai) {
      if (weights[ai] > remaining) continue;
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += atoms_[ai].mult[i];
      collect_products_bounded(ai, remaining - weights[ai], atoms_left - 1, weights, acc, out);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] -= atoms_[ai].mult[i];
    }
  }

  FiniteAbelianGroup group_;
  std::vector<uint32_t> support_;
  std::vector<ZeroSumSeq> atoms_;
};

}  // namespace lengths
