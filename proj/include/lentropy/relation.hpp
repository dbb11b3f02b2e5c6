#pragma once

// Dense boolean relation on {0..n-1} stored as one bit row per element.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lentropy {

class BitRelation {
 public:
  BitRelation() = default;
  explicit BitRelation(std::size_t n);

  static BitRelation diagonal(std::size_t n);
  static BitRelation full(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  void reset(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64)); }
  /// Adds [lo,hi] x [lo,hi].
  void set_block(std::size_t lo, std::size_t hi);

  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  void or_row(std::size_t dst, const std::uint64_t* src);
  bool row_empty(std::size_t i) const;

  template <class F>
  void for_each_in_row(std::size_t i, F&& f) const {
    const std::uint64_t* r = row(i);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t x = r[w];
      while (x) {
        f(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
        x &= x - 1;
      }
    }
  }

  std::size_t count() const;
  bool is_full() const { return count() == n_ * n_; }
  bool is_symmetric() const;
  bool contains_diagonal() const;
  bool subset_of(const BitRelation& other) const;
  BitRelation transpose() const;

  BitRelation& operator|=(const BitRelation& other);
  BitRelation& operator&=(const BitRelation& other);
  friend BitRelation operator|(BitRelation a, const BitRelation& b) { return a |= b; }
  friend BitRelation operator&(BitRelation a, const BitRelation& b) { return a &= b; }
  /// Pairs of *this not in other.
  BitRelation minus(const BitRelation& other) const;

  bool operator==(const BitRelation& other) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Relational product: (i,k) iff some j has a(i,j) and b(j,k).
BitRelation compose(const BitRelation& a, const BitRelation& b);

/// Transitive closure E+ (Warshall, row-parallel bit ORs).
BitRelation transitive_closure(BitRelation r);

/// Transitive closure of a symmetric relation via connected components.
BitRelation symmetric_closure_components(const BitRelation& r);

}  // namespace lentropy
