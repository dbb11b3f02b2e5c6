#pragma once

// Pseudo-orbits, shadowing checks at explicit (eps, delta, p) triples, and
// the pseudo-orbit weave turning shadowing into independence sets.

#include "lentropy/gamma.hpp"
#include "lentropy/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lentropy::shadowing {

using Point = std::uint64_t;
using Sequence = std::vector<Point>;

/// A map on the points 0..size-1 with an exact metric.
struct GridSystem {
  std::uint64_t size = 0;
  std::function<Point(Point)> map;
  std::function<Rational(Point, Point)> metric;
  std::function<std::string(Point)> label;
  /// Optional candidate shadow for a sequence, used when the space is too
  /// large to scan. Candidates are always re-verified.
  std::function<std::optional<Point>(const Sequence&)> tracer;

  Point iterate(Point x, std::uint64_t n) const;
};

/// Points i/n, i = 0..n, metric |x - y|.
GridSystem identity_grid(std::size_t n);
/// Tent map on i/n, images rounded to the nearest grid point (ties down).
GridSystem tent_grid(std::size_t n);
GridSystem constant_grid(std::size_t n, Point value);
/// i -> i+1 mod n on the points i/(n-1) (n >= 2), metric |x - y|.
GridSystem cycle_grid(std::size_t n);
/// Arbitrary map on a finite space of coordinates.
GridSystem table_system(const gamma::FiniteSpace& space, std::vector<Point> map);

enum class ShiftMetric { symbolic, discrete };

/// Periodic points of period `period` (<= 63) of the full 2-shift, bit i of a
/// point being its i-th symbol. symbolic: d = 2^-k, k the first disagreement.
GridSystem periodic_full_shift(std::size_t period, ShiftMetric metric = ShiftMetric::symbolic);

bool is_pseudo_orbit(const GridSystem& sys, const Sequence& seq, const Rational& delta);
/// d(T^n y, seq[n]) <= eps for every n.
bool shadows(const GridSystem& sys, Point y, const Sequence& seq, const Rational& eps);

struct ShadowVerdict {
  enum class Kind { holds_exhaustive, fails, unknown_sampled };
  Kind kind = Kind::holds_exhaustive;
  Sequence witness;  // for fails: a delta-pseudo-orbit with p+1 points and no shadow
  std::size_t trials = 0;
  std::size_t states_visited = 0;
};

std::string to_string(ShadowVerdict::Kind k);

/// Every delta-pseudo-orbit x_0..x_p is eps-shadowed by some point. Exhaustive
/// when size * branching^p <= budget, otherwise seeded random sampling.
ShadowVerdict finite_shadowing_check(const GridSystem& sys, const Rational& eps, const Rational& delta,
                                     std::size_t p, std::uint64_t budget, std::uint64_t seed = 0);

struct WeaveTable {
  Point y11, y12, y21, y23, y32, y33, y1_22, y3_22;
};

struct WeaveInput {
  Point a1, a2, a3;
  WeaveTable table;
  std::size_t n1 = 2;
  std::size_t n3 = 2;
  Rational delta;
};

/// Throws ValidationError naming the first violated ball condition.
void check_weave_hypotheses(const GridSystem& sys, const WeaveInput& in);

/// The finite pseudo-orbit x_m(i, j), m in [0, 2 n1 n3], for i, j in {1, 3}.
Sequence weave_block(const GridSystem& sys, const WeaveInput& in, int i, int j);

/// Concatenation over [0, N K) of blocks x(f_k, f_{k+1}), with f_K := f_{K-1}.
Sequence weave(const GridSystem& sys, const WeaveInput& in, const std::vector<int>& f);

/// First shadowing point found for seq: tracer candidate, else a scan.
std::optional<Point> find_shadow(const GridSystem& sys, const Sequence& seq, const Rational& eps);

struct IndependenceResult {
  std::vector<std::uint64_t> positions;  // 0, N, ..., N(K-1)
  bool verified = false;
  std::vector<int> failing_pattern;
  std::size_t patterns_checked = 0;
};

IndependenceResult independence_from_shadowing(const GridSystem& sys, const Rational& eps, std::size_t k,
                                               const WeaveInput& in);

/// Weave inputs for periodic_full_shift(48): a1 = 0..., a3 = 1..., a2 = 0101...,
/// delta = 1/2, n1 = n3 = 2.
WeaveInput full_shift_weave_input();

}  // namespace lentropy::shadowing
