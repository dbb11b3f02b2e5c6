#pragma once

// Finite coordinate models of the product relations built from a compact set A.
//
// A point of the model assigns a value from V to each coordinate a in a finite
// L, a subset of the left endpoints L(A). Points are encoded base |V|, first
// coordinate least significant. In immutable tail mode one extra digit (most
// significant) stands for everything outside L; its value is a t-pattern class.

#include "lentropy/compacta.hpp"
#include "lentropy/relation.hpp"
#include "lentropy/scheme_json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lentropy::construction {

using compacta::Gap;
using compacta::MaybeScheme;
using compacta::Scheme;

/// m_A(x). boundary is set when the value is 1, the right end of (0,1).
struct MValue {
  Rational value;
  bool boundary = false;
  bool operator==(const MValue&) const = default;
};

MValue m_of(const Scheme& a, const Rational& x);
/// n_{I,A}(c) for c in A with c >= r(I).
Rational n_of(const Scheme& a, const Gap& gap, const Rational& c);
MValue t_of(const Scheme& a, const Gap& gap, const Rational& c);

/// Gap of `level` containing a, or starting at a. (0,1) for the empty set.
Gap enclosing_gap(const MaybeScheme& level, const Rational& a);

enum class TailMode { open, immutable };
std::string to_string(TailMode m);

struct Value {
  std::optional<Rational> point;
  std::string symbol;  // set for abstract symbols

  bool operator==(const Value&) const = default;
};
std::string to_string(const Value& v);

class CoordinateModel {
 public:
  static constexpr std::size_t max_coords = 5;
  static constexpr std::size_t max_values = 6;
  static constexpr std::size_t max_points = 7776;

  /// Validates coords (ascending, in L(A), containing max A), derives V from the
  /// t-values. Relation on V: symbol chain s0-s1-..., A-points fixed; connecting
  /// also links the last symbol to every A-point.
  static CoordinateModel make(Scheme scheme, std::vector<Rational> coords,
                              std::vector<std::string> symbols = {"s0", "s1"}, TailMode tail = TailMode::open,
                              bool connecting = false);

  const Scheme& scheme() const { return scheme_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const std::vector<Value>& values() const { return values_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  TailMode tail_mode() const { return tail_; }
  bool connecting() const { return connecting_; }
  std::size_t tail_classes() const { return tail_classes_; }

  std::size_t size() const { return size_; }
  std::size_t digit(std::size_t point, std::size_t coord) const;
  std::size_t tail(std::size_t point) const;
  std::size_t with_digit(std::size_t point, std::size_t coord, std::size_t value) const;

  /// I_a for the i-th coordinate.
  const Gap& gap(std::size_t i) const { return gaps_[i]; }
  /// Value index of t_{a_i}(a_j), or nullopt when a_j < r(I_{a_i}).
  std::optional<std::size_t> t_index(std::size_t i, std::size_t j) const { return t_index_[i][j]; }
  std::size_t tail_class(std::size_t i) const { return tail_class_[i]; }
  bool related(std::size_t v, std::size_t w) const { return related_[v][w]; }

  std::string point_label(std::size_t point) const;

 private:
  Scheme scheme_ = Scheme::points({Rational(1, 2)});
  std::vector<Rational> coords_;
  std::vector<std::string> symbols_;
  std::vector<Value> values_;
  TailMode tail_ = TailMode::open;
  bool connecting_ = false;
  std::vector<Gap> gaps_;
  std::vector<std::vector<std::optional<std::size_t>>> t_index_;
  std::vector<std::size_t> tail_class_;
  std::size_t tail_classes_ = 1;
  std::vector<std::vector<bool>> related_;
  std::vector<std::size_t> pow_;
  std::size_t size_ = 0;
};

enum class RelationKind { D_a, B_a, D_A, B_A };

BitRelation build_relation(const CoordinateModel& m, RelationKind kind, std::size_t coord = 0);

/// Coordinate subsets are bit masks over coords().
using CoordMask = std::uint32_t;

BitRelation box(const CoordinateModel& m, CoordMask mask, const BitRelation& rel);

/// Coordinates grouped by the interval of C(A^alpha) they fall in, the left
/// endpoint included when it lies in A^alpha.
struct LevelGroup {
  Gap interval;
  CoordMask mask = 0;
};
std::vector<LevelGroup> level_groups(const CoordinateModel& m, std::size_t alpha);

/// box over mask of the union of D_a, a in mask.
BitRelation e_interval(const CoordinateModel& m, CoordMask mask);
/// Union of e_interval over level groups, plus the diagonal.
BitRelation e_sets(const CoordinateModel& m, std::size_t alpha);

BitRelation closure_plus(const BitRelation& rel);
/// closure_plus(rel) with the diagonal added.
BitRelation gamma_finite(const BitRelation& rel);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct PropertyReport {
  std::vector<Check> checks;
  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

PropertyReport check_properties(const CoordinateModel& m);

json model_to_json(const CoordinateModel& m);
CoordinateModel model_from_json(const json& j);
json report_to_json(const PropertyReport& r);

}  // namespace lentropy::construction
