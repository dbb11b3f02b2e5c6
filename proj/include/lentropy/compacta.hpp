#pragma once

// Exact symbolic encodings of compact subsets of (0,1).
//
// A Scheme is an immutable tree of four node kinds:
//   points   finite strictly increasing set
//   acc      {target} plus infinitely many shrunken copies of a body scheme,
//            placed in geometric windows that accumulate at target
//   union    finitely many schemes with disjoint convex hulls
//   perfect  middle-thirds Cantor set on [lo, hi]
//
// Window placement for acc(t, side, q, w, body): the k-th window (k >= 1) has
// width w*q^(k-1)*(1-q) and is centred at t -/+ w*q^(k-1). The body's unit
// interval is mapped affinely onto the window, so body point 1/2 lands on the
// window centre.

#include "lentropy/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lentropy::compacta {

enum class Side { below, above };

class Scheme;

struct Points {
  std::vector<Rational> values;
  bool operator==(const Points&) const = default;
};

struct Acc;
struct Union;

struct Perfect {
  Rational lo;
  Rational hi;
  bool operator==(const Perfect&) const = default;
};

/// x -> offset + scale * x with scale > 0.
struct Affine {
  Rational offset{0};
  Rational scale{1};

  Rational apply(const Rational& x) const { return offset + scale * x; }
  Rational invert(const Rational& y) const { return (y - offset) / scale; }
  /// (*this) after inner.
  Affine compose(const Affine& inner) const {
    return Affine{offset + scale * inner.offset, scale * inner.scale};
  }
};

class Scheme {
 public:
  enum class Kind { points, acc, union_, perfect };

  static Scheme points(std::vector<Rational> values);
  static Scheme acc(Rational target, Side side, Rational ratio, Rational window, Scheme body);
  static Scheme union_of(std::vector<Scheme> parts);
  static Scheme perfect(Rational lo, Rational hi);

  Kind kind() const;
  const Points& as_points() const;
  const Acc& as_acc() const;
  const Union& as_union() const;
  const Perfect& as_perfect() const;

  /// Convex hull endpoints of the realized set.
  const Rational& min() const { return min_; }
  const Rational& max() const { return max_; }

  /// Maximum nesting of acc nodes.
  std::size_t acc_depth() const;
  bool has_perfect() const;

  bool operator==(const Scheme& other) const;
  bool operator!=(const Scheme& other) const { return !(*this == other); }

 private:
  using Node = std::variant<Points, std::shared_ptr<const Acc>, std::shared_ptr<const Union>, Perfect>;
  explicit Scheme(Node node);

  std::shared_ptr<const Node> node_;
  Rational min_;
  Rational max_;
};

struct Acc {
  Rational target;
  Side side;
  Rational ratio;
  Rational window;
  Scheme body;

  /// Affine map carrying body coordinates into the k-th window (k >= 1).
  Affine copy_map(std::size_t k) const;
  /// Hull of the k-th copy of the body.
  Rational copy_min(std::size_t k) const { return copy_map(k).apply(body.min()); }
  Rational copy_max(std::size_t k) const { return copy_map(k).apply(body.max()); }

  bool operator==(const Acc&) const = default;
};

struct Union {
  std::vector<Scheme> parts;
  bool operator==(const Union&) const = default;
};

/// A scheme or the empty set.
using MaybeScheme = std::optional<Scheme>;

/// Maximal open interval of (0,1) disjoint from the realized set.
struct Gap {
  Rational lo;
  Rational hi;
  bool lo_in_a = true;
  bool hi_in_a = true;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  bool operator==(const Gap&) const = default;
};

struct InA {
  bool operator==(const InA&) const = default;
};

/// Result of point location: the point is in A, or lies in exactly one gap.
using Location = std::variant<InA, Gap>;

// --- Cantor-Bendixson structure -------------------------------------------

MaybeScheme derivative(const Scheme& s);
MaybeScheme derivative(const MaybeScheme& s);
/// n-fold derivative.
MaybeScheme derivative(const MaybeScheme& s, std::size_t n);

struct RankResult {
  std::size_t rank = 0;
  MaybeScheme core;  // A^infinity; empty iff the set is countable
};

RankResult cb_rank(const Scheme& s);
RankResult cb_rank(const MaybeScheme& s);

// --- Point and gap queries -------------------------------------------------

/// Exact membership test / containing gap. Throws DomainError unless 0 < x < 1.
Location locate(const Scheme& s, const Rational& x);

/// Classifies the right neighbourhood of x (0 <= x < 1): a Gap when some
/// (x, x+h) misses A, InA when points of A accumulate at x from the right.
Location locate_right_of(const Scheme& s, const Rational& x);

bool contains(const Scheme& s, const Rational& x);

/// Smallest realized point >= x, if any.
std::optional<Rational> ceiling(const Scheme& s, const Rational& x);

/// Width-ordered lazy enumeration of the gaps of a scheme in (0,1).
/// Order: decreasing width, equal widths left first.
class GapEnumerator {
 public:
  explicit GapEnumerator(const Scheme& s);
  ~GapEnumerator();
  GapEnumerator(GapEnumerator&&) noexcept;
  GapEnumerator& operator=(GapEnumerator&&) noexcept;

  std::optional<Gap> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The k widest gaps.
std::vector<Gap> contiguous_intervals(const Scheme& s, std::size_t k);

/// Left endpoints (points of A, never 0) of the k widest gaps, ascending.
std::vector<Rational> left_endpoints(const Scheme& s, std::size_t k);

/// True iff c is in A and is the left endpoint of a gap.
bool is_left_endpoint(const Scheme& s, const Rational& c);

/// The gap whose left endpoint is c. Throws DomainError if c is not in L(A).
Gap gap_right_of(const Scheme& s, const Rational& c);

/// Finite approximation: acc unrolled to its first d windows, perfect to its
/// depth-d construction endpoints. Sorted, duplicate free, monotone in d.
std::vector<Rational> realize(const Scheme& s, std::size_t depth);

// --- Canonical families ----------------------------------------------------

/// Points({1/2}) wrapped in (rank - 1) layers of acc(1/2, below, 1/4, 1/4, .).
/// Has Cantor-Bendixson rank `rank` and empty core. rank >= 1.
Scheme nested_accumulation(std::size_t rank);

/// The running example acc(1/2, below, 1/4, 1/4, points{1/2}).
Scheme accumulation_example();

std::string to_string(const Scheme& s);
std::string to_string(const MaybeScheme& s);

}  // namespace lentropy::compacta
