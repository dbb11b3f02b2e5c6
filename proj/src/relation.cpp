#include "lentropy/relation.hpp"

#include <algorithm>
#include <numeric>

namespace lentropy {

BitRelation::BitRelation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

BitRelation BitRelation::diagonal(std::size_t n) {
  BitRelation r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i);
  return r;
}

BitRelation BitRelation::full(std::size_t n) {
  BitRelation r(n);
  if (n) r.set_block(0, n - 1);
  return r;
}

void BitRelation::set_block(std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i <= hi; ++i) {
    for (std::size_t j = lo; j <= hi; ++j) set(i, j);
  }
}

void BitRelation::or_row(std::size_t dst, const std::uint64_t* src) {
  std::uint64_t* d = row(dst);
  for (std::size_t w = 0; w < words_; ++w) d[w] |= src[w];
}

bool BitRelation::row_empty(std::size_t i) const {
  const std::uint64_t* r = row(i);
  for (std::size_t w = 0; w < words_; ++w) {
    if (r[w]) return false;
  }
  return true;
}

std::size_t BitRelation::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

namespace {

// In place: bit j of a[i] moves to bit i of a[j].
void transpose64(std::uint64_t a[64]) {
  std::uint64_t m = 0x00000000FFFFFFFFULL;
  for (int j = 32; j != 0; j >>= 1, m ^= (m << j)) {
    for (int k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      const std::uint64_t t = ((a[k] >> j) ^ a[k | j]) & m;
      a[k] ^= t << j;
      a[k | j] ^= t;
    }
  }
}

}  // namespace

bool BitRelation::is_symmetric() const { return *this == transpose(); }

bool BitRelation::contains_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!test(i, i)) return false;
  }
  return true;
}

bool BitRelation::subset_of(const BitRelation& other) const {
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] & ~other.bits_[k]) return false;
  }
  return true;
}

BitRelation BitRelation::transpose() const {
  BitRelation t(n_);
  std::uint64_t block[64];
  for (std::size_t bi = 0; bi < words_; ++bi) {
    for (std::size_t bj = 0; bj < words_; ++bj) {
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t i = bi * 64 + r;
        block[r] = i < n_ ? bits_[i * words_ + bj] : 0;
      }
      transpose64(block);
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t j = bj * 64 + r;
        if (j < n_) t.bits_[j * words_ + bi] = block[r];
      }
    }
  }
  return t;
}

BitRelation& BitRelation::operator|=(const BitRelation& other) {
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= other.bits_[k];
  return *this;
}

BitRelation& BitRelation::operator&=(const BitRelation& other) {
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= other.bits_[k];
  return *this;
}

BitRelation BitRelation::minus(const BitRelation& other) const {
  BitRelation out = *this;
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] &= ~other.bits_[k];
  return out;
}

BitRelation compose(const BitRelation& a, const BitRelation& b) {
  BitRelation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.for_each_in_row(i, [&](std::size_t j) { out.or_row(i, b.row(j)); });
  }
  return out;
}

BitRelation transitive_closure(BitRelation r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (r.test(i, k)) r.or_row(i, r.row(k));
    }
  }
  return r;
}

BitRelation symmetric_closure_components(const BitRelation& r) {
  const std::size_t n = r.size();
  const std::size_t words = r.words_per_row();
  BitRelation out(n);
  std::vector<std::uint64_t> seen(words, 0);
  std::vector<std::uint64_t> comp(words);
  std::vector<std::size_t> queue, members;
  for (std::size_t s = 0; s < n; ++s) {
    if ((seen[s / 64] >> (s % 64) & 1) || r.row_empty(s)) continue;
    std::fill(comp.begin(), comp.end(), 0);
    comp[s / 64] |= std::uint64_t{1} << (s % 64);
    queue.assign(1, s);
    members.clear();
    while (!queue.empty()) {
      const std::size_t x = queue.back();
      queue.pop_back();
      members.push_back(x);
      const std::uint64_t* row = r.row(x);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t fresh = row[w] & ~comp[w];
        comp[w] |= fresh;
        while (fresh) {
          queue.push_back(w * 64 + static_cast<std::size_t>(__builtin_ctzll(fresh)));
          fresh &= fresh - 1;
        }
      }
    }
    for (std::size_t w = 0; w < words; ++w) seen[w] |= comp[w];
    for (auto i : members) out.or_row(i, comp.data());
  }
  return out;
}

}  // namespace lentropy
