#pragma once

// Subshifts of finite type presented as vertex shifts on at most 64 states.
// Forbidden words longer than two symbols are handled by recoding to
// (m)-blocks, m = longest forbidden length - 1; a state is then an allowed
// m-word and position i carries the block x[i..i+m).

#include "lentropy/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lentropy::shifts {

struct Cylinder {
  std::string word;
  std::int64_t anchor = 0;
};

struct Placement {
  std::int64_t position = 0;
  Cylinder cylinder;
};

class Sft {
 public:
  /// alphabet: distinct single-character symbols.
  static Sft from_forbidden(const std::string& alphabet, const std::vector<std::string>& forbidden);
  /// adjacency[i][j]: symbol i may be followed by symbol j.
  static Sft from_adjacency(const std::string& alphabet, const std::vector<std::vector<bool>>& adjacency);

  const std::string& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t block_length() const { return block_; }
  std::uint64_t successors(std::size_t state) const { return adj_[state]; }
  /// True when pruning removed states or the essential part is reducible.
  bool pruned() const { return pruned_; }
  bool irreducible() const;

  /// States reachable from `set` in exactly `steps` transitions.
  std::uint64_t advance(std::uint64_t set, std::uint64_t steps) const;
  /// States whose first symbol is c (0 if c is not a symbol).
  std::uint64_t starting_with(char c) const;

  /// Throws ValidationError for empty words, unknown symbols or inadmissible words.
  void validate(const Cylinder& c) const;
  bool admissible(const std::string& word) const;

  /// Admissible words of length k (as a double to avoid overflow).
  double word_count(std::size_t k) const;

 private:
  std::string alphabet_;
  std::size_t block_ = 1;
  std::vector<std::string> states_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::vector<std::uint64_t>> powers_;  // powers_[i] = A^(2^i)
  bool pruned_ = false;

  void finish(std::vector<std::string> states, std::vector<std::uint64_t> adj);
};

Sft full_shift(std::size_t k);
/// Forbids "11" over {0,1}.
Sft golden_mean();
/// Single periodic orbit of length n.
Sft cycle(std::size_t n);
/// Alphabet {a} with a -> a.
Sft self_loop();

/// True iff some point of the shift shows every placed word at its position.
bool consistent(const Sft& s, const std::vector<Placement>& constraints);

/// Every assignment F -> {U, V} is realized by some point. |F| <= 24.
bool is_independence_set(const Sft& s, const std::vector<std::int64_t>& f, const Cylinder& u, const Cylinder& v);

struct DensityResult {
  std::vector<std::int64_t> positions;
  Rational density;
  bool exact = true;
};

/// Largest independence set inside [0, n), lexicographically smallest among
/// maximum ones. Exhaustive for n <= 12, greedy (exact = false) above.
DensityResult max_independence_density(const Sft& s, const Cylinder& u, const Cylinder& v, std::size_t n);

struct IeVerdict {
  bool positive = false;
  Rational r;
  std::size_t failing_l = 0;               // set when !positive
  std::vector<std::size_t> max_sizes;      // max_sizes[L-1] for L = 1..l_max
};

/// For every l <= l_max, some window [0, L) with l <= L <= l_max carries an
/// independence set of size >= r * L.
IeVerdict ie_pair_verdict(const Sft& s, const Cylinder& u, const Cylinder& v, const Rational& r, std::size_t l_max);

struct EntropyResult {
  double value = 0;
  std::size_t iterations = 0;
  bool reducible = false;
};

/// log of the Perron root of the essential adjacency, by power iteration.
EntropyResult sft_entropy(const Sft& s, double tol);

/// log(word_count(k)) / k.
double word_count_slope(const Sft& s, std::size_t k);

}  // namespace lentropy::shifts
