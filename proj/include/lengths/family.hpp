#pragma once

// Families of length sets behind one interface.  Four backends: numerical
// monoids, block monoids (optionally with weighted atoms), sumset-generated
// families {a1*G1 + ... + am*Gm : sum ai >= 1}, and explicit finite lists.
// Every union-of-lengths answer is tagged exact or truncated.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lengths/block_monoid.hpp"
#include "lengths/natset.hpp"
#include "lengths/numerical_monoid.hpp"

namespace lengths {

struct GeneratedFamily {
  std::vector<NatSet> generators;

  explicit GeneratedFamily(std::vector<NatSet> gens) : generators(std::move(gens)) {
    if (generators.empty()) throw std::invalid_argument("need at least one generator set");
    for (const NatSet& g : generators)
      if (g.empty()) throw std::invalid_argument("generator sets must be non-empty");
  }

  // Exact enumeration is possible iff every generator has min >= 1: then a
  // member's minimum dominates its coefficient sum, bounding the search.
  bool exact() const {
    for (const NatSet& g : generators)
      if (g.min() == 0) return false;
    return true;
  }

  // A generator containing 0 alongside other values lets members absorb
  // unboundedly many copies of it, pumping every non-empty union to
  // infinity.
  std::optional<size_t> pumping_generator() const {
    for (size_t i = 0; i < generators.size(); ++i)
      if (generators[i].contains(0) && generators[i].size() >= 2) return i;
    return std::nullopt;
  }
};

struct ExplicitFamily {
  std::vector<NatSet> members;  // empty sets allowed
};

// Keep only the members whose elasticity (sup L / min L^+) reaches the
// threshold.  Order is preserved.
inline ExplicitFamily subfamily_alpha(const ExplicitFamily& f, const ExtRat& alpha) {
  ExplicitFamily out;
  for (const NatSet& l : f.members)
    if (!(elasticity_of_set(l) < alpha)) out.members.push_back(l);
  return out;
}

struct SubadditiveCheck {
  bool ok = true;
  size_t first = 0, second = 0;  // indices of the violating pair when !ok
  NatSet sum;                    // their sumset, contained in no member
};

// Check that for every pair of members the sumset is contained in some
// member.  Unordered pairs suffice (sumsets commute); the first violation in
// index order is reported.
inline SubadditiveCheck check_subadditive(const std::vector<NatSet>& members) {
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i; j < members.size(); ++j) {
      NatSet sum = sumset(members[i], members[j]);
      bool covered = false;
      for (const NatSet& m : members)
        if (sum.subset_of(m)) {
          covered = true;
          break;
        }
      if (!covered) return SubadditiveCheck{false, i, j, sum};
    }
  return SubadditiveCheck{};
}

enum class Accepted { yes, no, unknown };

struct ElasticityReport {
  ExtRat rho;
  ExtRat lambda;
  Accepted accepted = Accepted::unknown;
  std::optional<NatSet> witness;  // member attaining rho, when accepted
};

enum class Finiteness { finite, infinite, unknown };

struct FinitenessReport {
  Finiteness kind = Finiteness::unknown;
  std::optional<NatSet> witness;  // member with 0 and another value, when infinite
};

struct FamilyLimits {
  uint32_t value_horizon = 2048;    // cap on values kept in truncated sets / member scans
  uint32_t member_budget = 12;      // atom-count / coefficient-sum cap for member sampling
  uint32_t coeff_budget = 16;       // truncated generated-family coefficient-sum cap
  uint32_t atom_count_budget = 24;  // truncated block-monoid atom-count cap
  uint32_t search_budget = 6;       // elasticity witness search: max atoms per product
};

struct TaggedSet {
  NatSet set;
  bool exact = true;
};

class TruncatedModeError : public std::runtime_error {
 public:
  explicit TruncatedModeError(const std::string& what) : std::runtime_error(what) {}
};

class LengthSystem {
 public:
  enum class Kind { numerical, block, generated, explicit_list };

  static LengthSystem from_numerical(NumericalMonoid m, std::vector<uint32_t> weights = {}) {
    LengthSystem s(Kind::numerical);
    if (!weights.empty() && weights.size() != m.generators().size())
      throw std::invalid_argument("weights must align with generators");
    s.numerical_ = std::move(m);
    s.weights_ = std::move(weights);
    return s;
  }

  static LengthSystem from_block(BlockMonoid b, std::vector<uint32_t> atom_weights = {}) {
    LengthSystem s(Kind::block);
    if (!atom_weights.empty() && atom_weights.size() != b.atoms().size())
      throw std::invalid_argument("weights must align with atoms");
    s.block_ = std::move(b);
    s.weights_ = std::move(atom_weights);
    return s;
  }

  static LengthSystem from_generated(GeneratedFamily f) {
    LengthSystem s(Kind::generated);
    s.generated_ = std::move(f);
    return s;
  }

  static LengthSystem from_explicit(ExplicitFamily f) {
    LengthSystem s(Kind::explicit_list);
    s.explicit_ = std::move(f);
    return s;
  }

  Kind kind() const { return kind_; }
  FamilyLimits& limits() { return limits_; }
  const FamilyLimits& limits() const { return limits_; }

  const NumericalMonoid& numerical() const { return *numerical_; }
  const BlockMonoid& block() const { return *block_; }
  const GeneratedFamily& generated() const { return *generated_; }
  const ExplicitFamily& explicit_family() const { return *explicit_; }
  bool weighted() const { return !weights_.empty(); }
  const std::vector<uint32_t>& weights() const { return weights_; }

  // Scale budget-style defaults to a profile horizon.
  void fit_limits(uint32_t k_horizon) {
    limits_.member_budget = std::max<uint32_t>(limits_.member_budget, k_horizon);
    limits_.coeff_budget = std::max<uint32_t>(limits_.coeff_budget, k_horizon);
    limits_.atom_count_budget = std::max<uint32_t>(limits_.atom_count_budget, 2 * k_horizon);
    if (kind_ == Kind::numerical) {
      uint64_t need = static_cast<uint64_t>(numerical_->max_generator()) *
                      std::max<uint32_t>(k_horizon, limits_.member_budget);
      limits_.value_horizon = std::max<uint32_t>(limits_.value_horizon,
                                                 static_cast<uint32_t>(need));
    }
  }

  // True when every k yields the full union without truncation.
  bool exact_mode() const {
    switch (kind_) {
      case Kind::numerical:
      case Kind::block:
        return weights_all_positive();
      case Kind::generated:
        return generated_->exact();
      case Kind::explicit_list:
        return true;
    }
    return true;
  }

  bool weights_all_positive() const {
    for (uint32_t w : weights_)
      if (w == 0) return false;
    return true;
  }

  // Provably infinite elasticity through a pumping generator; per-k unions
  // of such families are infinite whenever non-empty.
  bool pumping_infinite() const {
    return kind_ == Kind::generated && generated_->pumping_generator().has_value();
  }

  // Union of all members containing k, tagged exact/truncated.
  TaggedSet unions(uint32_t k) const {
    switch (kind_) {
      case Kind::numerical: {
        if (!weighted()) return {numerical_->unions(k), true};
        if (weights_all_positive()) return {weighted_numerical_unions(k), true};
        return {weighted_numerical_unions_truncated(k), false};
      }
      case Kind::block: {
        std::vector<uint32_t> w = block_weights();
        if (weights_all_positive()) return {block_->unions(k, w), true};
        return {block_->unions_truncated(k, w, limits_.atom_count_budget), false};
      }
      case Kind::generated: {
        if (generated_->exact()) {
          NatSet out;
          for (const NatSet& m : generated_members_containing(k)) out.unite(m);
          return {out, true};
        }
        return {generated_unions_truncated(k), false};
      }
      case Kind::explicit_list: {
        NatSet out;
        for (const NatSet& m : explicit_->members)
          if (m.contains(k)) out.unite(m);
        return {out, true};
      }
    }
    return {};
  }

  // Distinct members whose length set contains k.  Exact mode only.
  std::vector<NatSet> members_containing(uint32_t k) const {
    if (!exact_mode())
      throw TruncatedModeError("members_containing: family is in truncated mode");
    switch (kind_) {
      case Kind::numerical:
        if (!weighted()) return numerical_->members_containing(k);
        return weighted_numerical_members_containing(k);
      case Kind::block:
        return block_->members_containing(k, block_weights());
      case Kind::generated:
        return generated_members_containing(k);
      case Kind::explicit_list: {
        std::vector<NatSet> out;
        for (const NatSet& m : explicit_->members)
          if (m.contains(k)) {
            bool seen = false;
            for (const NatSet& s : out)
              if (s == m) {
                seen = true;
                break;
              }
            if (!seen) out.push_back(m);
          }
        return out;
      }
    }
    return {};
  }

  // gcd of the positive values across all members (0 iff every member is
  // contained in {0}).  Exact for every backend: member values are sums of
  // generator/atom contributions.
  uint64_t positive_gcd() const {
    switch (kind_) {
      case Kind::numerical:
      case Kind::block: {
        size_t n = kind_ == Kind::numerical ? numerical_->generators().size()
                                            : block_->atoms().size();
        if (!weighted()) return n > 0 ? 1 : 0;
        uint64_t g = 0;
        for (uint32_t w : weights_) g = std::gcd(g, static_cast<uint64_t>(w));
        return g;
      }
      case Kind::generated: {
        uint64_t g = 0;
        for (const NatSet& gen : generated_->generators) g = std::gcd(g, gen.positive_gcd());
        return g;
      }
      case Kind::explicit_list: {
        uint64_t g = 0;
        for (const NatSet& m : explicit_->members) g = std::gcd(g, m.positive_gcd());
        return g;
      }
    }
    return 0;
  }

  // Deterministic member sample for distance-set scans, bounded by limits.
  std::vector<NatSet> sample_members() const {
    std::vector<NatSet> out;
    switch (kind_) {
      case Kind::numerical: {
        std::vector<NatSet> table =
            weighted() ? numerical_->length_table(limits_.value_horizon, weights_)
                       : numerical_->length_table(limits_.value_horizon);
        for (const NatSet& l : table)
          if (!l.empty()) out.push_back(l);
        break;
      }
      case Kind::block: {
        std::vector<uint32_t> w = block_weights();
        for (const ZeroSumSeq& s : block_->elements_up_to(limits_.member_budget))
          out.push_back(block_->length_set(s, w));
        break;
      }
      case Kind::generated: {
        uint32_t budget = generated_->exact() ? limits_.member_budget : limits_.coeff_budget;
        std::vector<uint32_t> coeff(generated_->generators.size(), 0);
        enumerate_generated(coeff, 0, budget, [&](const NatSet& m) {
          out.push_back(generated_->exact() ? m : m.truncated(limits_.value_horizon));
        });
        break;
      }
      case Kind::explicit_list:
        out = explicit_->members;
        break;
    }
    return out;
  }

  // Subadditivity: structural for monoid-backed and generated families,
  // computed for explicit lists.
  SubadditiveCheck subadditivity() const {
    if (kind_ == Kind::explicit_list) return check_subadditive(explicit_->members);
    return SubadditiveCheck{};
  }

  ElasticityReport elasticity() const;
  FinitenessReport elasticity_finiteness() const;

  // New system with every member divided by the positive gcd; rejects 0.
  LengthSystem primitivized() const {
    uint64_t p = positive_gcd();
    if (p == 0) throw std::invalid_argument("primitivize: positive gcd is zero");
    uint32_t d = static_cast<uint32_t>(p);
    switch (kind_) {
      case Kind::numerical: {
        LengthSystem s = *this;
        if (weighted()) {
          for (uint32_t& w : s.weights_) w /= d;
        }
        return s;  // unweighted monoids have p == 1
      }
      case Kind::block: {
        LengthSystem s = *this;
        if (weighted()) {
          for (uint32_t& w : s.weights_) w /= d;
        }
        return s;
      }
      case Kind::generated: {
        std::vector<NatSet> gens;
        for (const NatSet& g : generated_->generators) gens.push_back(g.divided(d));
        LengthSystem s = from_generated(GeneratedFamily(std::move(gens)));
        s.limits_ = limits_;
        return s;
      }
      case Kind::explicit_list: {
        ExplicitFamily f;
        for (const NatSet& m : explicit_->members) f.members.push_back(m.divided(d));
        LengthSystem s = from_explicit(std::move(f));
        s.limits_ = limits_;
        return s;
      }
    }
    throw std::logic_error("unreachable");
  }

  // Members of a generated family with coefficient sum <= budget, via
  // doubling-based n-fold sumsets.  Visits members in lexicographic
  // coefficient order.
  template <typename Fn>
  void enumerate_generated(std::vector<uint32_t>& coeff, size_t pos, uint32_t budget,
                           Fn&& visit) const {
    if (pos == coeff.size()) {
      uint32_t total = 0;
      for (uint32_t c : coeff) total += c;
      if (total == 0) return;
      NatSet member{0};
      for (size_t i = 0; i < coeff.size(); ++i)
        if (coeff[i])
          member = sumset(member, n_fold_sumset(generated_->generators[i], coeff[i]));
      visit(member);
      return;
    }
    for (uint32_t c = 0; c <= budget; ++c) {
      coeff[pos] = c;
      enumerate_generated(coeff, pos + 1, budget - c, visit);
    }
    coeff[pos] = 0;
  }

 private:
  explicit LengthSystem(Kind k) : kind_(k) {}

  std::vector<uint32_t> block_weights() const {
    if (weighted()) return weights_;
    return std::vector<uint32_t>(block_->atoms().size(), 1);
  }

  NatSet weighted_numerical_unions(uint32_t k) const {
    NatSet out;
    for (const NatSet& m : weighted_numerical_members_containing(k)) out.unite(m);
    return out;
  }

  std::vector<NatSet> weighted_numerical_members_containing(uint32_t k) const {
    // All weights positive: a weighted length-k factorization uses at most k
    // atoms, so values stay within g_max * k.
    uint64_t hi = static_cast<uint64_t>(numerical_->max_generator()) * k;
    std::vector<NatSet> table = numerical_->length_table(static_cast<uint32_t>(hi), weights_);
    std::vector<NatSet> out;
    for (uint64_t x = 0; x <= hi; ++x) {
      if (!table[x].contains(k)) continue;
      bool seen = false;
      for (const NatSet& s : out)
        if (s == table[x]) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(table[x]);
    }
    if (k == 0 && out.empty()) out.push_back(NatSet{0});
    return out;
  }

  NatSet weighted_numerical_unions_truncated(uint32_t k) const {
    std::vector<NatSet> table = numerical_->length_table(limits_.value_horizon, weights_);
    NatSet out;
    for (const NatSet& l : table)
      if (l.contains(k)) out.unite(l);
    return out;
  }

  std::vector<NatSet> generated_members_containing(uint32_t k) const {
    // The identity {0} is the only member containing 0 when every generator
    // has positive minimum.
    if (k == 0) return {NatSet{0}};
    // Exact mode: member minimum >= coefficient sum, so coefficient sums are
    // bounded by k.
    std::vector<NatSet> out;
    std::vector<uint32_t> coeff(generated_->generators.size(), 0);
    enumerate_generated(coeff, 0, k, [&](const NatSet& m) {
      if (!m.contains(k)) return;
      for (const NatSet& s : out)
        if (s == m) return;
      out.push_back(m);
    });
    return out;
  }

  NatSet generated_unions_truncated(uint32_t k) const {
    NatSet out;
    if (k == 0) out.insert(0);  // the identity {0} is always a member
    std::vector<uint32_t> coeff(generated_->generators.size(), 0);
    enumerate_generated(coeff, 0, limits_.coeff_budget, [&](const NatSet& m) {
      if (m.contains(k)) out.unite(m);
    });
    return out.truncated(limits_.value_horizon);
  }

  Kind kind_;
  FamilyLimits limits_;
  std::optional<NumericalMonoid> numerical_;
  std::optional<BlockMonoid> block_;
  std::optional<GeneratedFamily> generated_;
  std::optional<ExplicitFamily> explicit_;
  std::vector<uint32_t> weights_;
};

// --- elasticity ---

namespace detail {

struct BestRatio {
  ExtRat value = ExtRat::zero();
  std::optional<NatSet> witness;

  void offer(const NatSet& l) {
    ExtRat r = elasticity_of_set(l);
    if (!witness || value < r) {
      value = r;
      witness = l;
    }
  }
};

}  // namespace detail

inline ElasticityReport LengthSystem::elasticity() const {
  ElasticityReport rep;
  switch (kind_) {
    case Kind::numerical: {
      if (!weighted()) {
        // rho = g_max/g_min, attained by L(g_min * g_max): that value has a
        // factorization into g_max copies of g_min and one into g_min copies
        // of g_max, and the window bound allows nothing wider.
        rep.rho = ExtRat::make(numerical_->max_generator(), numerical_->min_generator());
        rep.lambda = rep.rho.reciprocal();
        rep.accepted = Accepted::yes;
        rep.witness = numerical_->length_set(numerical_->min_generator() *
                                             numerical_->max_generator());
        if (elasticity_of_set(*rep.witness) != rep.rho)
          throw std::logic_error("elasticity witness check failed");
        return rep;
      }
      FinitenessReport fin = elasticity_finiteness();
      if (fin.kind == Finiteness::infinite) {
        rep.rho = ExtRat::infinity();
        rep.lambda = ExtRat::zero();
        rep.accepted = Accepted::no;
        return rep;
      }
      uint32_t wmin = UINT32_MAX, wmax = 0;
      for (uint32_t w : weights_) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
      }
      ExtRat bound = ExtRat::make(static_cast<uint64_t>(numerical_->max_generator()) * wmax,
                                  static_cast<uint64_t>(numerical_->min_generator()) * wmin);
      detail::BestRatio best;
      for (const NatSet& l : sample_members()) best.offer(l);
      rep.rho = best.value;
      rep.lambda = rep.rho.reciprocal();
      rep.witness = best.witness;
      rep.accepted = (fin.kind == Finiteness::finite && best.value == bound)
                         ? Accepted::yes
                         : Accepted::unknown;
      return rep;
    }
    case Kind::block: {
      FinitenessReport fin = elasticity_finiteness();
      if (fin.kind == Finiteness::infinite) {
        rep.rho = ExtRat::infinity();
        rep.lambda = ExtRat::zero();
        rep.accepted = Accepted::no;
        return rep;
      }
      std::vector<uint32_t> w = block_weights();
      uint32_t wmin = UINT32_MAX, wmax = 0;
      for (uint32_t x : w) {
        wmin = std::min(wmin, x);
        wmax = std::max(wmax, x);
      }
      // rho(L(x)) <= (max atom weight / min positive count contribution):
      // a factorization into n atoms has weight in [n*wmin, n*wmax] and
      // |x|/l_max <= n <= |x|/l_min, giving the ratio cap below.
      ExtRat bound = ExtRat::make(static_cast<uint64_t>(block_->max_atom_length()) * wmax,
                                  static_cast<uint64_t>(block_->min_atom_length()) * wmin);
      detail::BestRatio best;
      for (uint32_t n = 1; n <= limits_.search_budget; ++n) {
        for (const ZeroSumSeq& s : block_->elements_up_to(n))
          if (s.length()) best.offer(block_->length_set(s, w));
        if (best.value == bound) break;
      }
      rep.rho = best.value;
      rep.lambda = rep.rho.reciprocal();
      rep.witness = best.witness;
      rep.accepted = (fin.kind == Finiteness::finite && best.value == bound)
                         ? Accepted::yes
                         : Accepted::unknown;
      return rep;
    }
    case Kind::generated: {
      if (pumping_infinite()) {
        rep.rho = ExtRat::infinity();
        rep.lambda = ExtRat::zero();
        rep.accepted = Accepted::no;
        return rep;
      }
      // Members are sums a1*G1 + ... + am*Gm; sup and inf add, so by the
      // mediant inequality no mixture beats the best single generator.
      detail::BestRatio best;
      for (const NatSet& g : generated_->generators) best.offer(g);
      rep.rho = best.value;
      rep.lambda = rep.rho.reciprocal();
      rep.witness = best.witness;
      rep.accepted = Accepted::yes;
      return rep;
    }
    case Kind::explicit_list: {
      if (explicit_->members.empty()) {
        rep.rho = ExtRat::zero();
        rep.lambda = ExtRat::infinity();
        rep.accepted = Accepted::yes;  // empty family: vacuously accepted
        return rep;
      }
      detail::BestRatio best;
      for (const NatSet& m : explicit_->members) best.offer(m);
      rep.rho = best.value;
      rep.lambda = rep.rho.reciprocal();
      rep.witness = best.witness;
      rep.accepted = Accepted::yes;
      return rep;
    }
  }
  return rep;
}

inline FinitenessReport LengthSystem::elasticity_finiteness() const {
  FinitenessReport rep;
  switch (kind_) {
    case Kind::numerical:
    case Kind::block: {
      if (weights_all_positive()) {
        rep.kind = Finiteness::finite;
        return rep;
      }
      // A member with 0 and another value pumps under subadditivity:
      // n-fold sums of it stay members-of-supersets with ratio -> infinity.
      for (const NatSet& l : sample_members())
        if (l.contains(0) && l.size() >= 2) {
          rep.kind = Finiteness::infinite;
          rep.witness = l;
          return rep;
        }
      rep.kind = Finiteness::unknown;
      return rep;
    }
    case Kind::generated: {
      if (auto i = generated_->pumping_generator()) {
        rep.kind = Finiteness::infinite;
        rep.witness = generated_->generators[*i];
        return rep;
      }
      rep.kind = Finiteness::finite;
      return rep;
    }
    case Kind::explicit_list:
      rep.kind = Finiteness::finite;  // finite list of finite sets
      return rep;
  }
  return rep;
}

}  // namespace lengths
