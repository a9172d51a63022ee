#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace comb {

// Fixed-size bit vector over [0, n) with word-parallel intersection counting.
// This is the workhorse behind neighborhood queries: a vertex row AND'ed
// against a vertex-set mask costs O(n/64).
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), words_((static_cast<size_t>(n) + 63) / 64, 0) {}

  int size() const { return n_; }

  void set(int i) {
    assert(i >= 0 && i < n_);
    words_[static_cast<size_t>(i) >> 6] |= (uint64_t{1} << (i & 63));
  }

  void reset(int i) {
    assert(i >= 0 && i < n_);
    words_[static_cast<size_t>(i) >> 6] &= ~(uint64_t{1} << (i & 63));
  }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1;
  }

  void clear() { std::fill(words_.begin(), words_.end(), uint64_t{0}); }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }

  // |this AND other|; both bitsets must have the same size.
  int and_count(const Bitset& other) const {
    assert(n_ == other.n_);
    int c = 0;
    for (size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }

  Bitset& operator|=(const Bitset& other) {
    assert(n_ == other.n_);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  bool intersects(const Bitset& other) const {
    assert(n_ == other.n_);
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  bool operator==(const Bitset& other) const = default;

  // Visits set bits in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        int bit = std::countr_zero(w);
        f(static_cast<int>(wi * 64 + static_cast<size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

 private:
  int n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace comb
