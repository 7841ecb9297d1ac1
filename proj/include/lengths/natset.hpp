#pragma once

// Dense finite sets of non-negative integers plus the extended-value
// scalar types used throughout the library.  Conventions for empty sets
// and infinities (sup {} = 0, inf {} = inf, a/inf = 0, a/0 = inf,
// 0*inf = 0) live here so every caller agrees on them.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lengths {

class ExtNat;
class ExtRat;

class NatSet {
 public:
  NatSet() = default;

  NatSet(std::initializer_list<uint32_t> values) {
    for (uint32_t v : values) insert(v);
  }

  static NatSet from_values(const std::vector<uint32_t>& values) {
    NatSet s;
    for (uint32_t v : values) s.insert(v);
    return s;
  }

  // Contiguous range {lo, lo+1, ..., hi}; empty when hi < lo.
  static NatSet interval(uint32_t lo, uint32_t hi) {
    NatSet s;
    for (uint64_t v = lo; v <= hi; ++v) s.insert(static_cast<uint32_t>(v));
    return s;
  }

  void insert(uint32_t v) {
    size_t word = v >> 6;
    if (word >= bits_.size()) bits_.resize(word + 1, 0);
    bits_[word] |= uint64_t{1} << (v & 63);
  }

  bool contains(uint32_t v) const {
    size_t word = v >> 6;
    return word < bits_.size() && (bits_[word] >> (v & 63)) & 1;
  }

  bool empty() const {
    for (uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  size_t size() const {
    size_t n = 0;
    for (uint64_t w : bits_) n += static_cast<size_t>(std::popcount(w));
    return n;
  }

  // Smallest / largest element; both require a non-empty set.
  uint32_t min() const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) return static_cast<uint32_t>(i * 64 + std::countr_zero(bits_[i]));
    throw std::logic_error("NatSet::min on empty set");
  }

  uint32_t max() const {
    for (size_t i = bits_.size(); i-- > 0;)
      if (bits_[i]) return static_cast<uint32_t>(i * 64 + 63 - std::countl_zero(bits_[i]));
    throw std::logic_error("NatSet::max on empty set");
  }

  // inf/sup with the empty-set conventions (declared after ExtNat).
  ExtNat inf() const;
  ExtNat sup() const;

  std::vector<uint32_t> values() const {
    std::vector<uint32_t> out;
    out.reserve(size());
    for (size_t i = 0; i < bits_.size(); ++i) {
      uint64_t w = bits_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<uint32_t>(i * 64 + b));
        w &= w - 1;
      }
    }
    return out;
  }

  bool operator==(const NatSet& o) const {
    size_t n = std::max(bits_.size(), o.bits_.size());
    for (size_t i = 0; i < n; ++i)
      if (word(i) != o.word(i)) return false;
    return true;
  }
  bool operator!=(const NatSet& o) const { return !(*this == o); }

  bool subset_of(const NatSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.word(i)) return false;
    return true;
  }

  NatSet& unite(const NatSet& o) {
    if (o.bits_.size() > bits_.size()) bits_.resize(o.bits_.size(), 0);
    for (size_t i = 0; i < o.bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }

  friend NatSet set_union(const NatSet& a, const NatSet& b) {
    NatSet out = a;
    out.unite(b);
    return out;
  }

  NatSet intersect(const NatSet& o) const {
    NatSet out;
    size_t n = std::min(bits_.size(), o.bits_.size());
    out.bits_.assign(n, 0);
    for (size_t i = 0; i < n; ++i) out.bits_[i] = bits_[i] & o.bits_[i];
    return out;
  }

  void erase(uint32_t v) {
    size_t word = v >> 6;
    if (word < bits_.size()) bits_[word] &= ~(uint64_t{1} << (v & 63));
  }

  // {x + shift : x in this}
  NatSet shifted(uint32_t shift) const {
    NatSet out;
    out.bits_.assign(bits_.size() + (shift >> 6) + 1, 0);
    or_shifted(out.bits_, bits_, shift);
    return out;
  }

  // Minkowski sum {a + b : a in this, b in o}.
  friend NatSet sumset(const NatSet& a, const NatSet& b) {
    NatSet out;
    if (a.empty() || b.empty()) return out;
    out.bits_.assign(a.bits_.size() + b.bits_.size() + 1, 0);
    for (size_t i = 0; i < a.bits_.size(); ++i) {
      uint64_t w = a.bits_[i];
      while (w) {
        int bit = std::countr_zero(w);
        or_shifted(out.bits_, b.bits_, static_cast<uint32_t>(i * 64 + bit));
        w &= w - 1;
      }
    }
    return out;
  }

  // n-fold sumset X + X + ... + X via doubling; n = 0 is rejected because
  // the empty sum is a property of the ambient family, not of X.
  friend NatSet n_fold_sumset(const NatSet& x, uint32_t n) {
    if (n == 0) throw std::invalid_argument("n_fold_sumset: n must be positive");
    NatSet result{0};
    NatSet base = x;
    while (n) {
      if (n & 1) result = sumset(result, base);
      n >>= 1;
      if (n) base = sumset(base, base);
    }
    return result;
  }

  // {m*x : x in this}
  NatSet dilated(uint32_t m) const {
    NatSet out;
    for (uint32_t v : values()) out.insert(v * m);
    return out;
  }

  // {x/d : x in this}; every element must be divisible by d.
  NatSet divided(uint32_t d) const {
    if (d == 0) throw std::invalid_argument("NatSet::divided by zero");
    NatSet out;
    for (uint32_t v : values()) {
      if (v % d) throw std::invalid_argument("NatSet::divided: element not divisible");
      out.insert(v / d);
    }
    return out;
  }

  // Set of gaps between consecutive elements: {b - a : a < b consecutive}.
  NatSet delta_set() const {
    NatSet out;
    std::vector<uint32_t> v = values();
    for (size_t i = 1; i < v.size(); ++i) out.insert(v[i] - v[i - 1]);
    return out;
  }

  // Elements in [lo, hi].
  NatSet slice(uint32_t lo, uint32_t hi) const {
    NatSet out;
    for (uint32_t v : values())
      if (v >= lo && v <= hi) out.insert(v);
    return out;
  }

  // Elements truncated to [0, m].
  NatSet truncated(uint32_t m) const { return slice(0, m); }

  // {c - x : x in this}; requires c >= max().
  NatSet reflected(uint32_t c) const {
    NatSet out;
    for (uint32_t v : values()) {
      if (v > c) throw std::invalid_argument("NatSet::reflected: element above pivot");
      out.insert(c - v);
    }
    return out;
  }

  // gcd of the positive elements (0 when there are none).
  uint64_t positive_gcd() const {
    uint64_t g = 0;
    for (uint32_t v : values())
      if (v) g = std::gcd(g, static_cast<uint64_t>(v));
    return g;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (uint32_t v : values()) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    s += "}";
    return s;
  }

 private:
  uint64_t word(size_t i) const { return i < bits_.size() ? bits_[i] : 0; }

  static void or_shifted(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                         uint32_t shift) {
    size_t word_shift = shift >> 6;
    int bit_shift = shift & 63;
    size_t need = src.size() + word_shift + 1;
    if (dst.size() < need) dst.resize(need, 0);
    if (bit_shift == 0) {
      for (size_t i = 0; i < src.size(); ++i) dst[i + word_shift] |= src[i];
    } else {
      uint64_t carry = 0;
      for (size_t i = 0; i < src.size(); ++i) {
        dst[i + word_shift] |= (src[i] << bit_shift) | carry;
        carry = src[i] >> (64 - bit_shift);
      }
      dst[src.size() + word_shift] |= carry;
    }
  }

  std::vector<uint64_t> bits_;
};

// Natural number extended with a single point at infinity.
class ExtNat {
 public:
  ExtNat() : v_(0) {}
  ExtNat(uint64_t v) : v_(v) {}  // NOLINT: implicit by design
  static ExtNat infinity() {
    ExtNat e;
    e.v_ = kInf;
    return e;
  }

  bool is_infinite() const { return v_ == kInf; }
  uint64_t value() const {
    if (is_infinite()) throw std::logic_error("ExtNat: value of infinity");
    return v_;
  }

  friend ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtNat(a.v_ + b.v_);
  }

  // Subtraction: inf - finite = inf; finite - finite requires a >= b.
  friend ExtNat operator-(ExtNat a, ExtNat b) {
    if (a.is_infinite()) {
      if (b.is_infinite()) return ExtNat(0);  // inf - inf := 0
      return infinity();
    }
    if (b.is_infinite() || b.v_ > a.v_)
      throw std::logic_error("ExtNat: negative difference");
    return ExtNat(a.v_ - b.v_);
  }

  friend bool operator==(ExtNat a, ExtNat b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtNat a, ExtNat b) { return a.v_ != b.v_; }
  friend bool operator<(ExtNat a, ExtNat b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtNat a, ExtNat b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtNat a, ExtNat b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtNat a, ExtNat b) { return a.v_ >= b.v_; }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(v_); }

 private:
  static constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max();
  uint64_t v_;
};

inline ExtNat NatSet::inf() const {
  return empty() ? ExtNat::infinity() : ExtNat(min());  // inf {} = inf
}

inline ExtNat NatSet::sup() const {
  return empty() ? ExtNat(0) : ExtNat(max());  // sup {} = 0
}

// Exact non-negative rational extended with infinity.  den_ == 0 encodes
// infinity; finite values are kept normalized with den_ >= 1.
class ExtRat {
 public:
  ExtRat() : num_(0), den_(1) {}

  static ExtRat make(uint64_t num, uint64_t den) {
    ExtRat r;
    if (den == 0) {  // a/0 := inf, including 0/0
      r.num_ = 1;
      r.den_ = 0;
      return r;
    }
    uint64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    r.num_ = num / g;
    r.den_ = den / g;
    return r;
  }

  static ExtRat infinity() { return make(1, 0); }
  static ExtRat zero() { return make(0, 1); }

  // Ratio of extended naturals under the house conventions:
  // a/inf = 0 for finite a; a/0 = inf (even 0/0); inf/finite = inf.
  static ExtRat ratio(ExtNat a, ExtNat b) {
    if (b.is_infinite()) {
      if (a.is_infinite()) throw std::logic_error("ExtRat: inf/inf undefined");
      return zero();
    }
    if (a.is_infinite()) return infinity();
    return make(a.value(), b.value());
  }

  bool is_infinite() const { return den_ == 0; }
  bool is_zero() const { return !is_infinite() && num_ == 0; }
  bool is_integer() const { return !is_infinite() && den_ == 1; }
  uint64_t num() const { return num_; }
  uint64_t den() const { return den_; }

  uint64_t integer_value() const {
    if (!is_integer()) throw std::logic_error("ExtRat: not an integer");
    return num_;
  }

  ExtRat reciprocal() const {
    if (is_infinite()) return zero();  // 1/inf = 0
    return make(den_, num_);           // 1/0 = inf falls out of make()
  }

  // k * r with 0 * inf := 0.
  friend ExtRat operator*(ExtNat k, ExtRat r) {
    if (k.is_infinite()) {
      if (r.is_zero()) return zero();
      return infinity();
    }
    if (r.is_infinite()) return k.value() == 0 ? zero() : infinity();
    return make(k.value() * r.num_, r.den_);
  }

  friend ExtRat operator*(ExtRat a, ExtRat b) {
    if (a.is_infinite()) return b.is_zero() ? zero() : infinity();
    if (b.is_infinite()) return a.is_zero() ? zero() : infinity();
    return make(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend bool operator==(ExtRat a, ExtRat b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(ExtRat a, ExtRat b) { return !(a == b); }
  friend bool operator<(ExtRat a, ExtRat b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return static_cast<__uint128_t>(a.num_) * b.den_ <
           static_cast<__uint128_t>(b.num_) * a.den_;
  }
  friend bool operator<=(ExtRat a, ExtRat b) { return a == b || a < b; }
  friend bool operator>(ExtRat a, ExtRat b) { return b < a; }
  friend bool operator>=(ExtRat a, ExtRat b) { return b <= a; }

  // Compare against an extended natural.
  friend bool operator==(ExtNat n, ExtRat r) {
    if (n.is_infinite()) return r.is_infinite();
    return r.is_integer() && r.num() == n.value();
  }
  friend bool operator<=(ExtNat n, ExtRat r) {
    if (n.is_infinite()) return r.is_infinite();
    if (r.is_infinite()) return true;
    return static_cast<__uint128_t>(n.value()) * r.den() <= r.num();
  }
  friend bool operator>=(ExtNat n, ExtRat r) {
    if (r.is_infinite()) return n.is_infinite();
    if (n.is_infinite()) return true;
    return static_cast<__uint128_t>(n.value()) * r.den() >= r.num();
  }
  friend bool operator==(ExtRat r, ExtNat n) { return n == r; }
  friend bool operator<(ExtNat n, ExtRat r) { return n <= r && !(n == r); }
  friend bool operator>(ExtNat n, ExtRat r) { return n >= r && !(n == r); }
  friend bool operator<(ExtRat r, ExtNat n) { return n > r; }
  friend bool operator>(ExtRat r, ExtNat n) { return n < r; }
  friend bool operator<=(ExtRat r, ExtNat n) { return n >= r; }
  friend bool operator>=(ExtRat r, ExtNat n) { return n <= r; }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  uint64_t num_;
  uint64_t den_;
};

// Elasticity of a single finite set: sup L / inf L+ under the conventions
// (empty set and {0} both give 0; values are otherwise in [1, sup L]).
inline ExtRat elasticity_of_set(const NatSet& l) {
  NatSet positive = l;
  positive.erase(0);
  return ExtRat::ratio(l.sup(), positive.inf());
}

}  // namespace lengths
