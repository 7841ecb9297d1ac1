#pragma once

// Finite abelian groups presented by invariant factors, elements encoded as
// mixed-radix indices, and minimal zero-sum sequences over a support set.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lengths/natset.hpp"

namespace lengths {

class FiniteAbelianGroup {
 public:
  // factors = invariant factors (n_1, ..., n_t), each >= 2.
  explicit FiniteAbelianGroup(std::vector<uint32_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("group needs at least one factor");
    order_ = 1;
    for (uint32_t n : factors_) {
      if (n < 2) throw std::invalid_argument("invariant factors must be >= 2");
      if (order_ > kMaxOrder / n) throw std::invalid_argument("group order too large");
      order_ *= n;
    }
    add_table_.resize(static_cast<size_t>(order_) * order_);
    for (uint32_t a = 0; a < order_; ++a)
      for (uint32_t b = 0; b < order_; ++b)
        add_table_[static_cast<size_t>(a) * order_ + b] = add_slow(a, b);
  }

  uint32_t order() const { return order_; }
  const std::vector<uint32_t>& factors() const { return factors_; }

  std::vector<uint32_t> decode(uint32_t idx) const {
    std::vector<uint32_t> v(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
      v[i] = idx % factors_[i];
      idx /= factors_[i];
    }
    return v;
  }

  uint32_t encode(const std::vector<uint32_t>& v) const {
    if (v.size() != factors_.size())
      throw std::invalid_argument("element has wrong number of coordinates");
    uint32_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      if (v[i] >= factors_[i]) throw std::invalid_argument("coordinate out of range");
      idx = idx * factors_[i] + v[i];
    }
    return idx;
  }

  uint32_t add(uint32_t a, uint32_t b) const {
    return add_table_[static_cast<size_t>(a) * order_ + b];
  }

  uint32_t negate(uint32_t a) const {
    std::vector<uint32_t> v = decode(a);
    for (size_t i = 0; i < v.size(); ++i) v[i] = (factors_[i] - v[i]) % factors_[i];
    return encode(v);
  }

  uint32_t zero() const { return 0; }

  std::string element_name(uint32_t idx) const {
    std::vector<uint32_t> v = decode(idx);
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    s += ")";
    return s;
  }

 private:
  static constexpr uint32_t kMaxOrder = 4096;

  uint32_t add_slow(uint32_t a, uint32_t b) const {
    std::vector<uint32_t> va = decode(a), vb = decode(b);
    for (size_t i = 0; i < va.size(); ++i) va[i] = (va[i] + vb[i]) % factors_[i];
    return encode(va);
  }

  std::vector<uint32_t> factors_;
  uint32_t order_;
  std::vector<uint32_t> add_table_;
};

// A zero-sum sequence over a fixed support, stored as a multiplicity vector
// aligned with the support (sequence = support[i] repeated mult[i] times).
struct ZeroSumSeq {
  std::vector<uint32_t> mult;

  uint32_t length() const {
    uint32_t n = 0;
    for (uint32_t m : mult) n += m;
    return n;
  }

  bool operator==(const ZeroSumSeq& o) const { return mult == o.mult; }
  bool operator<(const ZeroSumSeq& o) const { return mult < o.mult; }
};

inline uint32_t sequence_sum(const FiniteAbelianGroup& g, const std::vector<uint32_t>& support,
                             const std::vector<uint32_t>& mult) {
  uint32_t s = g.zero();
  for (size_t i = 0; i < support.size(); ++i)
    for (uint32_t c = 0; c < mult[i]; ++c) s = g.add(s, support[i]);
  return s;
}

namespace detail {

// Does some non-empty proper sub-multiset of mult sum to zero?
inline bool has_proper_zero_sub(const FiniteAbelianGroup& g,
                                const std::vector<uint32_t>& support,
                                const std::vector<uint32_t>& mult) {
  std::vector<uint32_t> sub(mult.size(), 0);
  // Odometer over all sub-vectors 0 <= sub <= mult.
  while (true) {
    size_t i = 0;
    while (i < sub.size() && sub[i] == mult[i]) sub[i++] = 0;
    if (i == sub.size()) return false;
    ++sub[i];
    bool empty = true, full = true;
    for (size_t j = 0; j < sub.size(); ++j) {
      if (sub[j]) empty = false;
      if (sub[j] != mult[j]) full = false;
    }
    if (empty || full) continue;
    if (sequence_sum(g, support, sub) == g.zero()) return true;
  }
}

inline void enumerate_zero_sums(const FiniteAbelianGroup& g,
                                const std::vector<uint32_t>& support, size_t pos,
                                uint32_t remaining, std::vector<uint32_t>& mult,
                                std::vector<ZeroSumSeq>& out) {
  if (pos == support.size()) {
    uint32_t len = 0;
    for (uint32_t m : mult) len += m;
    if (len == 0) return;
    if (sequence_sum(g, support, mult) != g.zero()) return;
    if (!has_proper_zero_sub(g, support, mult)) out.push_back(ZeroSumSeq{mult});
    return;
  }
  for (uint32_t c = 0; c <= remaining; ++c) {
    mult[pos] = c;
    enumerate_zero_sums(g, support, pos + 1, remaining - c, mult, out);
  }
  mult[pos] = 0;
}

}  // namespace detail

// All minimal zero-sum sequences over the support, in lexicographic order of
// their multiplicity vectors.  Lengths are capped at |G|: every zero-sum
// sequence longer than the group order has a proper zero-sum sub-sequence
// (pigeonhole on partial sums), so the cap loses nothing.
inline std::vector<ZeroSumSeq> enumerate_atoms(const FiniteAbelianGroup& g,
                                               const std::vector<uint32_t>& support) {
  if (support.empty()) throw std::invalid_argument("support must be non-empty");
  for (size_t i = 0; i < support.size(); ++i) {
    if (support[i] == 0) throw std::invalid_argument("support must omit the zero element");
    if (support[i] >= g.order()) throw std::invalid_argument("support element out of range");
    if (i && support[i] <= support[i - 1])
      throw std::invalid_argument("support must be strictly ascending");
  }
  std::vector<ZeroSumSeq> out;
  std::vector<uint32_t> mult(support.size(), 0);
  detail::enumerate_zero_sums(g, support, 0, g.order(), mult, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lengths
