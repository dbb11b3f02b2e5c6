#pragma once

// Exact piecewise-linear interval maps, the tent map, and psi(A): the
// identity on A pasted with a rescaled tent on the closure of each gap.

#include "lentropy/compacta.hpp"
#include "lentropy/gamma.hpp"

#include <cstddef>
#include <vector>

namespace lentropy::interval_maps {

inline constexpr std::size_t default_breakpoint_budget = 10'000'000;

/// Continuous self-map of [0,1], linear between consecutive breakpoints.
class PlMap {
 public:
  /// Breakpoints strictly increasing from 0 to 1, values in [0,1].
  PlMap(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static PlMap identity();

  const std::vector<Rational>& breakpoints() const { return xs_; }
  const std::vector<Rational>& values() const { return ys_; }
  std::size_t pieces() const { return xs_.size() - 1; }

  Rational operator()(const Rational& x) const;

  /// Drops breakpoints where the slope does not change.
  PlMap simplified() const;

  bool operator==(const PlMap&) const = default;

 private:
  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

/// 3x on [0,1/3], 2-3x on [1/3,2/3], 3x-2 on [2/3,1].
PlMap tent();

/// outer after inner. Throws ResourceError past `budget` breakpoints.
PlMap compose(const PlMap& outer, const PlMap& inner, std::size_t budget = default_breakpoint_budget);
PlMap iterate(const PlMap& f, std::size_t n, std::size_t budget = default_breakpoint_budget);

/// Number of maximal intervals on which the map is monotone.
std::size_t laps(const PlMap& f);
/// laps(f^n), n >= 1.
std::size_t lap_count(const PlMap& f, std::size_t n, std::size_t budget = default_breakpoint_budget);
/// log(lap_count(f, n)) / n.
double entropy_estimate(const PlMap& f, std::size_t n, std::size_t budget = default_breakpoint_budget);

/// psi(A)(x) for x in [0,1].
Rational eval_psi(const compacta::Scheme& a, const Rational& x);

/// psi of the finite set realize(a, depth), as an exact PL map.
PlMap psi_finite(const compacta::Scheme& a, std::size_t depth);

/// The entropy-pair relation of psi(A): base A.
gamma::IntervalSquareRelation entropy_pairs_symbolic(const compacta::Scheme& a);

struct CpeVerdict {
  bool cpe = false;
  std::size_t rank = 0;                // Gamma-rank of the entropy-pair relation
  compacta::MaybeScheme witness;       // the core when not CPE

  bool operator==(const CpeVerdict&) const = default;
};

CpeVerdict cpe_verdict(const compacta::Scheme& a);

/// Verdict for the d-fold product system; CPE is preserved under products.
CpeVerdict product_verdict(const CpeVerdict& v, std::size_t d);

}  // namespace lentropy::interval_maps
