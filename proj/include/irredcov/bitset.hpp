#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace irredcov {

/// Fixed-length bit vector packed into 64-bit words. Bits past size() are
/// always zero, so whole-word operations never see garbage.
class Bitset {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false)
      : words_(word_count(size), value ? ~word_type{0} : word_type{0}), size_(size) {
    trim();
  }

  static constexpr std::size_t word_count(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const { return size_; }
  std::span<const word_type> words() const { return words_; }
  std::span<word_type> words() { return words_; }

  bool test(std::size_t pos) const {
    return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1u;
  }
  void set(std::size_t pos) { words_[pos / kWordBits] |= word_type{1} << (pos % kWordBits); }
  void reset(std::size_t pos) { words_[pos / kWordBits] &= ~(word_type{1} << (pos % kWordBits)); }
  void set(std::size_t pos, bool value) {
    if (value) {
      set(pos);
    } else {
      reset(pos);
    }
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  /// popcount(*this & other)
  std::size_t count_and(const Bitset& other) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
    return c;
  }
  bool intersects(const Bitset& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }
  /// True iff every set bit of *this is also set in other.
  bool is_subset_of(const Bitset& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  /// *this &= ~other
  Bitset& subtract(const Bitset& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
  }
  /// Overwrites *this with (a & ~b); sizes must match.
  void assign_difference(const Bitset& a, const Bitset& b) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] = a.words_[k] & ~b.words_[k];
  }
  void assign_intersection(const Bitset& a, const Bitset& b) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] = a.words_[k] & b.words_[k];
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  /// Index of the first set bit at or after pos, or size() if none.
  std::size_t find_next(std::size_t pos) const {
    if (pos >= size_) return size_;
    std::size_t k = pos / kWordBits;
    word_type w = words_[k] & (~word_type{0} << (pos % kWordBits));
    while (true) {
      if (w) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return size_;
      w = words_[k];
    }
  }
  std::size_t find_first() const { return find_next(0); }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_type w = words_[k];
      while (w) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  void trim() {
    if (size_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (word_type{1} << (size_ % kWordBits)) - 1;
  }

  std::vector<word_type> words_;
  std::size_t size_ = 0;
};

}  // namespace irredcov
