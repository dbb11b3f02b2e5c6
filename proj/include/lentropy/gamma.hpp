#pragma once

// The Gamma operator E -> closure(E+ u Delta) in two backends.
//
// Finite backend: relations on a finite metric space, closure replaced by
// eps-fattening. Symbolic backend: relations of the form
// U_{J in C(A)} Jbar x Jbar u Delta, where one step replaces A by A'.

#include "lentropy/compacta.hpp"
#include "lentropy/relation.hpp"

#include <optional>
#include <vector>

namespace lentropy::gamma {

/// Points of [0,1] (or abstract indices) with the metric |x - y|.
struct FiniteSpace {
  std::vector<Rational> coords;

  /// grid_n + 1 equally spaced points i/grid_n.
  static FiniteSpace grid(std::size_t grid_n);
  std::size_t size() const { return coords.size(); }
  Rational distance(std::size_t i, std::size_t j) const { return abs_diff(coords[i], coords[j]); }
};

/// (u, u') with d(u, u') <= eps.
BitRelation neighbourhood(const FiniteSpace& space, const Rational& eps);

/// Pairs (u,v) within eps (max-metric) of some pair of `source`.
BitRelation fatten(const BitRelation& source, const BitRelation& nbhd);

/// fatten_eps(E+ u Delta). Only off-diagonal pairs are fattened, so Delta
/// itself stays a fixed point at every eps.
BitRelation gamma_step_finite(const FiniteSpace& space, const BitRelation& e, const Rational& eps);

struct FiniteRank {
  std::size_t rank = 0;
  BitRelation fixed;
  std::vector<BitRelation> trace;  // E, Gamma(E), ..., fixed
  bool symmetrized = false;        // input was not symmetric
};

FiniteRank gamma_rank_finite(const FiniteSpace& space, BitRelation e, const Rational& eps,
                             std::size_t max_steps = 10000);

/// base = Empty denotes the full square [0,1]^2.
struct IntervalSquareRelation {
  compacta::MaybeScheme base;

  bool is_full() const { return !base.has_value(); }
  bool operator==(const IntervalSquareRelation&) const = default;
};

IntervalSquareRelation gamma_step_symbolic(const IntervalSquareRelation& r);

struct SymbolicRank {
  std::size_t rank = 0;
  IntervalSquareRelation fixed;
};

SymbolicRank gamma_rank_symbolic(const IntervalSquareRelation& r);

/// Restriction of the denoted relation to the grid i/grid_n.
BitRelation discretize(const IntervalSquareRelation& r, std::size_t grid_n);

struct CrossReport {
  std::size_t symbolic_rank = 0;
  std::size_t finite_rank = 0;
  bool symbolic_full = false;
  bool finite_full = false;
  /// First level k at which the finite trace and the discretized symbolic
  /// relation differ by more than eps in Hausdorff distance.
  std::optional<std::size_t> first_unresolved;
  bool agree = false;
  bool unresolvable = false;  // the grid cannot resolve even level 1
  std::vector<std::size_t> finite_counts;
};

/// Requires grid_n >= 16 and eps >= 2/grid_n (ValidationError otherwise).
CrossReport cross_validate(const compacta::Scheme& a, std::size_t grid_n, const Rational& eps);

}  // namespace lentropy::gamma
