#include "lentropy/construction.hpp"

#include <algorithm>
#include <map>

namespace lentropy::construction {

using compacta::InA;
using compacta::contains;

namespace {

// A^0, A^1, ... while nonempty. With a core the last entry is A^infinity.
struct Tower {
  std::vector<Scheme> levels;
  bool has_core = false;

  explicit Tower(const Scheme& a) {
    const auto r = compacta::cb_rank(a);
    has_core = r.core.has_value();
    MaybeScheme cur = a;
    for (std::size_t k = 0; k <= r.rank && cur; ++k) {
      levels.push_back(*cur);
      cur = compacta::derivative(cur);
    }
  }

  MValue m(const Rational& x) const {
    if (!contains(levels.front(), x)) throw DomainError("m: point not in A");
    for (std::size_t k = 0; k < levels.size(); ++k) {
      if (k + 1 == levels.size()) {
        if (has_core) return {x, false};
        return {Rational(1), true};
      }
      if (!contains(levels[k + 1], x)) {
        const Rational hi = std::get<Gap>(compacta::locate(levels[k + 1], x)).hi;
        return {hi, hi == 1};
      }
    }
    return {x, false};
  }

  Rational n(const Gap& gap, const Rational& c) const {
    const Rational& b = gap.hi;
    if (c < b) throw DomainError("n: c lies left of r(I)");
    std::optional<Rational> best;
    for (const auto& level : levels) {
      auto ce = compacta::ceiling(level, b);
      if (ce && *ce <= c) best = *ce;
    }
    if (!best) throw DomainError("n: A misses [r(I), c]");
    return *best;
  }

  MValue t(const Gap& gap, const Rational& c) const { return m(n(gap, c)); }
};

}  // namespace

MValue m_of(const Scheme& a, const Rational& x) { return Tower(a).m(x); }

Rational n_of(const Scheme& a, const Gap& gap, const Rational& c) { return Tower(a).n(gap, c); }

MValue t_of(const Scheme& a, const Gap& gap, const Rational& c) { return Tower(a).t(gap, c); }

Gap enclosing_gap(const MaybeScheme& level, const Rational& a) {
  if (!level) return Gap{0, 1, false, false};
  if (contains(*level, a)) {
    auto loc = compacta::locate_right_of(*level, a);
    if (std::holds_alternative<InA>(loc)) throw DomainError("enclosing_gap: no gap starts at " + format_rational(a));
    return std::get<Gap>(loc);
  }
  return std::get<Gap>(compacta::locate(*level, a));
}

std::string to_string(TailMode m) { return m == TailMode::open ? "open" : "immutable"; }

std::string to_string(const Value& v) { return v.point ? format_rational(*v.point) : v.symbol; }

CoordinateModel CoordinateModel::make(Scheme scheme, std::vector<Rational> coords, std::vector<std::string> symbols,
                                      TailMode tail, bool connecting) {
  if (coords.empty() || coords.size() > max_coords) throw ValidationError("model: need 1 to 5 coordinates");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i > 0 && coords[i - 1] >= coords[i]) throw ValidationError("model: coordinates must increase");
    if (coords[i] <= 0 || coords[i] >= 1 || !compacta::is_left_endpoint(scheme, coords[i])) {
      throw ValidationError("model: " + format_rational(coords[i]) + " is not in L(A)");
    }
  }
  if (coords.back() != scheme.max()) throw ValidationError("model: coordinates must include max A");
  if (symbols.empty()) throw ValidationError("model: need at least one abstract symbol");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].empty()) throw ValidationError("model: empty symbol name");
    if (std::find(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(i), symbols[i]) !=
        symbols.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ValidationError("model: duplicate symbol " + symbols[i]);
    }
  }

  CoordinateModel m;
  m.scheme_ = std::move(scheme);
  m.coords_ = std::move(coords);
  m.symbols_ = std::move(symbols);
  m.tail_ = tail;
  m.connecting_ = connecting;
  const Tower tower(m.scheme_);
  const std::size_t k = m.coords_.size();

  for (const auto& a : m.coords_) m.gaps_.push_back(compacta::gap_right_of(m.scheme_, a));
  std::vector<std::vector<std::optional<Rational>>> tv(k, std::vector<std::optional<Rational>>(k));
  std::vector<Rational> points;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (m.coords_[j] < m.gaps_[i].hi) continue;
      tv[i][j] = tower.t(m.gaps_[i], m.coords_[j]).value;
      points.push_back(*tv[i][j]);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) m.values_.push_back(Value{p, {}});
  for (const auto& s : m.symbols_) m.values_.push_back(Value{std::nullopt, s});
  if (m.values_.size() > max_values) {
    throw ValidationError("model: value domain has " + std::to_string(m.values_.size()) + " elements, limit 6");
  }
  m.t_index_.assign(k, std::vector<std::optional<std::size_t>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!tv[i][j]) continue;
      m.t_index_[i][j] = static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), *tv[i][j]) -
                                                  points.begin());
    }
  }

  const std::size_t nv = m.values_.size();
  const std::size_t np = points.size();
  m.related_.assign(nv, std::vector<bool>(nv, false));
  for (std::size_t v = 0; v < np; ++v) m.related_[v][v] = true;
  for (std::size_t s = np; s + 1 < nv; ++s) m.related_[s][s + 1] = m.related_[s + 1][s] = true;
  if (connecting) {
    for (std::size_t v = 0; v < np; ++v) m.related_[v][nv - 1] = m.related_[nv - 1][v] = true;
  }

  m.tail_class_.assign(k, 0);
  if (tail == TailMode::immutable) {
    std::vector<Rational> probes;
    for (const auto& c : compacta::left_endpoints(m.scheme_, 16)) {
      if (!std::binary_search(m.coords_.begin(), m.coords_.end(), c)) probes.push_back(c);
    }
    std::vector<std::vector<std::pair<Rational, Rational>>> classes;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::pair<Rational, Rational>> pattern;
      for (const auto& c : probes) {
        if (c >= m.gaps_[i].hi) pattern.emplace_back(c, tower.t(m.gaps_[i], c).value);
      }
      auto it = std::find(classes.begin(), classes.end(), pattern);
      m.tail_class_[i] = static_cast<std::size_t>(it - classes.begin());
      if (it == classes.end()) classes.push_back(std::move(pattern));
    }
    m.tail_classes_ = classes.size();
  }

  m.pow_.assign(k + 1, 1);
  for (std::size_t i = 1; i <= k; ++i) m.pow_[i] = m.pow_[i - 1] * nv;
  m.size_ = m.pow_[k] * m.tail_classes_;
  if (m.size_ > max_points) {
    throw ResourceError("model: " + std::to_string(m.size_) + " points exceeds the limit of 7776");
  }
  return m;
}

std::size_t CoordinateModel::digit(std::size_t point, std::size_t coord) const {
  return (point / pow_[coord]) % values_.size();
}

std::size_t CoordinateModel::tail(std::size_t point) const { return point / pow_.back(); }

std::size_t CoordinateModel::with_digit(std::size_t point, std::size_t coord, std::size_t value) const {
  return point - digit(point, coord) * pow_[coord] + value * pow_[coord];
}

std::string CoordinateModel::point_label(std::size_t point) const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(values_[digit(point, i)]);
  }
  if (tail_ == TailMode::immutable) out += "|t" + std::to_string(tail(point));
  return out + ")";
}

BitRelation build_relation(const CoordinateModel& m, RelationKind kind, std::size_t coord) {
  const std::size_t k = m.coords().size();
  if ((kind == RelationKind::D_a || kind == RelationKind::B_a) && coord >= k) {
    throw DomainError("build_relation: coordinate index out of range");
  }
  BitRelation out(m.size());
  auto add = [&](std::size_t i, bool edge_only) {
    for (std::size_t y = 0; y < m.size(); ++y) {
      if (m.tail_mode() == TailMode::immutable && m.tail(y) != m.tail_class(i)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        if (auto t = m.t_index(i, j)) ok = m.digit(y, j) == *t;
      }
      if (!ok) continue;
      const std::size_t here = m.digit(y, i);
      for (std::size_t v = 0; v < m.values().size(); ++v) {
        if (edge_only && !m.related(here, v)) continue;
        out.set(y, m.with_digit(y, i, v));
      }
    }
  };
  switch (kind) {
    case RelationKind::D_a: add(coord, false); break;
    case RelationKind::B_a: add(coord, true); break;
    case RelationKind::D_A:
      for (std::size_t i = 0; i < k; ++i) add(i, false);
      break;
    case RelationKind::B_A:
      for (std::size_t i = 0; i < k; ++i) add(i, true);
      out |= BitRelation::diagonal(m.size());
      break;
  }
  return out;
}

BitRelation box(const CoordinateModel& m, CoordMask mask, const BitRelation& rel) {
  const std::size_t n = m.size();
  auto project = [&](std::size_t x) {
    for (std::size_t i = 0; i < m.coords().size(); ++i) {
      if (mask >> i & 1) x = m.with_digit(x, i, 0);
    }
    return x;
  };
  std::vector<std::size_t> proj(n);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t x = 0; x < n; ++x) {
    proj[x] = project(x);
    members[proj[x]].push_back(x);
  }
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (!members[x].empty()) reps.push_back(x);
  }
  const std::size_t words = rel.words_per_row();
  std::vector<std::vector<std::uint64_t>> class_bits;
  if (reps.size() * words < n * 8) {
    for (auto p : reps) {
      std::vector<std::uint64_t> bits(words, 0);
      for (auto w : members[p]) bits[w / 64] |= std::uint64_t{1} << (w % 64);
      class_bits.push_back(std::move(bits));
    }
  }
  BitRelation keys(n);
  for (std::size_t y = 0; y < n; ++y) {
    if (rel.row_empty(y)) continue;
    const std::uint64_t* row = rel.row(y);
    std::size_t pc = 0;
    for (std::size_t w = 0; w < words; ++w) pc += static_cast<std::size_t>(__builtin_popcountll(row[w]));
    if (class_bits.empty() || pc < reps.size() * words) {
      rel.for_each_in_row(y, [&](std::size_t y2) { keys.set(proj[y], proj[y2]); });
      continue;
    }
    for (std::size_t c = 0; c < reps.size(); ++c) {
      for (std::size_t w = 0; w < words; ++w) {
        if (row[w] & class_bits[c][w]) {
          keys.set(proj[y], reps[c]);
          break;
        }
      }
    }
  }
  BitRelation out(n);
  std::vector<std::uint64_t> templ(out.words_per_row());
  for (std::size_t p = 0; p < n; ++p) {
    if (members[p].empty() || keys.row_empty(p)) continue;
    std::fill(templ.begin(), templ.end(), 0);
    keys.for_each_in_row(p, [&](std::size_t p2) {
      for (auto w2 : members[p2]) templ[w2 / 64] |= std::uint64_t{1} << (w2 % 64);
    });
    for (auto w : members[p]) out.or_row(w, templ.data());
  }
  return out;
}

std::vector<LevelGroup> level_groups(const CoordinateModel& m, std::size_t alpha) {
  const MaybeScheme level = compacta::derivative(MaybeScheme(m.scheme()), alpha);
  std::vector<LevelGroup> out;
  for (std::size_t i = 0; i < m.coords().size(); ++i) {
    const Gap g = enclosing_gap(level, m.coords()[i]);
    auto it = std::find_if(out.begin(), out.end(), [&](const LevelGroup& lg) { return lg.interval == g; });
    if (it == out.end()) out.push_back(LevelGroup{g, CoordMask{1} << i});
    else it->mask |= CoordMask{1} << i;
  }
  std::sort(out.begin(), out.end(), [](const LevelGroup& a, const LevelGroup& b) { return a.interval.lo < b.interval.lo; });
  return out;
}

BitRelation e_interval(const CoordinateModel& m, CoordMask mask) {
  BitRelation u(m.size());
  for (std::size_t i = 0; i < m.coords().size(); ++i) {
    if (mask >> i & 1) u |= build_relation(m, RelationKind::D_a, i);
  }
  return box(m, mask, u);
}

BitRelation e_sets(const CoordinateModel& m, std::size_t alpha) {
  BitRelation out = BitRelation::diagonal(m.size());
  for (const auto& g : level_groups(m, alpha)) out |= e_interval(m, g.mask);
  return out;
}

BitRelation closure_plus(const BitRelation& rel) {
  return rel.is_symmetric() ? symmetric_closure_components(rel) : transitive_closure(rel);
}

BitRelation gamma_finite(const BitRelation& rel) { return closure_plus(rel) | BitRelation::diagonal(rel.size()); }

bool PropertyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string first_pair(const CoordinateModel& m, const BitRelation& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.row_empty(i)) {
      std::size_t j = 0;
      r.for_each_in_row(i, [&](std::size_t x) { j = x; });
      return m.point_label(i) + " ~ " + m.point_label(j);
    }
  }
  return "";
}

class CheckList {
 public:
  explicit CheckList(const CoordinateModel& m) : m_(m) {}

  void fail(const std::string& name, std::string detail) {
    Check& c = get(name);
    if (c.passed) {
      c.passed = false;
      c.detail = std::move(detail);
    }
  }
  void vacuous(const std::string& name, const std::string& why) { get(name).detail = "vacuous: " + why; }
  void touch(const std::string& name) { get(name); }

  void subset(const std::string& name, const BitRelation& a, const BitRelation& b, const std::string& where) {
    touch(name);
    if (!a.subset_of(b)) fail(name, where + ": " + first_pair(m_, a.minus(b)));
  }
  void equal(const std::string& name, const BitRelation& a, const BitRelation& b, const std::string& where) {
    subset(name, a, b, where);
    subset(name, b, a, where);
  }

  PropertyReport done() { return PropertyReport{std::move(checks_)}; }

 private:
  Check& get(const std::string& name) {
    for (auto& c : checks_) {
      if (c.name == name) return c;
    }
    checks_.push_back(Check{name, true, ""});
    return checks_.back();
  }

  const CoordinateModel& m_;
  std::vector<Check> checks_;
};

std::string at_level(std::size_t alpha) { return "level " + std::to_string(alpha); }

}  // namespace

PropertyReport check_properties(const CoordinateModel& m) {
  CheckList out(m);
  const Scheme& a = m.scheme();
  const Tower tower(a);
  const std::size_t rank = compacta::cb_rank(a).rank;
  auto level = [&](std::size_t k) -> MaybeScheme {
    if (k < tower.levels.size()) return tower.levels[k];
    if (tower.has_core) return tower.levels.back();
    return std::nullopt;
  };

  std::vector<Rational> probes = compacta::left_endpoints(a, 16);
  probes.insert(probes.end(), m.coords().begin(), m.coords().end());
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  const std::size_t np = probes.size();
  std::vector<Gap> own(np);
  std::vector<std::vector<std::optional<Rational>>> t(np, std::vector<std::optional<Rational>>(np));
  for (std::size_t i = 0; i < np; ++i) {
    own[i] = compacta::gap_right_of(a, probes[i]);
    for (std::size_t j = 0; j < np; ++j) {
      if (probes[j] >= own[i].hi) t[i][j] = tower.t(own[i], probes[j]).value;
    }
  }
  auto t_detail = [&](std::size_t i, std::size_t j, const Rational& expect) {
    return "t_a(c) at a=" + format_rational(probes[i]) + ", c=" + format_rational(probes[j]) + " is " +
           format_rational(*t[i][j]) + ", expected " + format_rational(expect);
  };

  // t depends only on the enclosing interval of each level
  out.touch("t_agrees_within_interval");
  for (std::size_t alpha = 0; alpha <= rank; ++alpha) {
    const MaybeScheme d = level(alpha);
    std::vector<Gap> enc(np);
    for (std::size_t i = 0; i < np; ++i) enc[i] = enclosing_gap(d, probes[i]);
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t i2 = i + 1; i2 < np; ++i2) {
        if (!(enc[i] == enc[i2])) continue;
        for (std::size_t j = 0; j < np; ++j) {
          if (probes[j] < enc[i].hi) continue;
          if (*t[i][j] != *t[i2][j]) out.fail("t_agrees_within_interval", at_level(alpha) + ", " + t_detail(i, j, *t[i2][j]));
        }
      }
    }
  }

  if (tower.has_core) {
    out.touch("t_constant_past_core_gap");
    for (std::size_t i = 0; i < np; ++i) {
      const Gap g = enclosing_gap(level(rank), probes[i]);
      for (std::size_t j = 0; j < np; ++j) {
        if (probes[j] >= g.hi && *t[i][j] != g.hi) out.fail("t_constant_past_core_gap", t_detail(i, j, g.hi));
      }
    }
  } else {
    out.vacuous("t_constant_past_core_gap", "A is countable");
  }

  out.touch("t_fixed_on_higher_level");
  for (std::size_t alpha = 0; alpha < rank; ++alpha) {
    for (std::size_t i = 0; i < np; ++i) {
      const Gap j_gap = enclosing_gap(level(alpha), probes[i]);
      const Gap i_gap = enclosing_gap(level(alpha + 1), probes[i]);
      for (std::size_t j = 0; j < np; ++j) {
        if (probes[j] >= j_gap.hi && probes[j] < i_gap.hi && *t[i][j] != i_gap.hi) {
          out.fail("t_fixed_on_higher_level", at_level(alpha) + ", " + t_detail(i, j, i_gap.hi));
        }
      }
    }
  }

  const std::size_t k = m.coords().size();
  const CoordMask all = (CoordMask{1} << k) - 1;
  const BitRelation diag = BitRelation::diagonal(m.size());
  const BitRelation d_all = build_relation(m, RelationKind::D_A);
  const BitRelation b_all = build_relation(m, RelationKind::B_A);

  std::vector<BitRelation> e(rank + 1);
  std::vector<std::vector<LevelGroup>> groups(rank + 1);
  for (std::size_t alpha = 0; alpha <= rank; ++alpha) {
    groups[alpha] = level_groups(m, alpha);
    e[alpha] = diag;
    for (const auto& g : groups[alpha]) {
      const BitRelation ei = e_interval(m, g.mask);
      e[alpha] |= ei;
      out.equal("e_interval_transitive", closure_plus(ei), ei, at_level(alpha));
      out.equal("e_interval_saturated", box(m, g.mask, ei), ei, at_level(alpha));
    }
    out.subset("d_in_e", d_all, e[alpha], at_level(alpha));
    out.touch("e_level_not_full");
    if (groups[alpha].size() >= 2 && e[alpha].is_full()) out.fail("e_level_not_full", at_level(alpha) + " is full");
  }
  out.equal("e_zero_is_d", e[0], d_all | diag, at_level(0));

  if (!tower.has_core && m.tail_mode() == TailMode::open) {
    out.touch("e_top_full");
    if (!e[rank].is_full()) out.fail("e_top_full", "missing " + first_pair(m, BitRelation::full(m.size()).minus(e[rank])));
  } else {
    out.vacuous("e_top_full", tower.has_core ? "A is uncountable" : "immutable tail");
  }

  out.touch("level_decomposition");
  for (std::size_t alpha = 0; alpha < rank; ++alpha) {
    CoordMask seen = 0;
    for (const auto& g : groups[alpha]) {
      seen |= g.mask;
      bool inside = false;
      for (const auto& h : groups[alpha + 1]) {
        if ((g.mask & ~h.mask) == 0 && h.interval.lo <= g.interval.lo && g.interval.hi <= h.interval.hi) inside = true;
      }
      if (!inside) out.fail("level_decomposition", at_level(alpha) + ": interval (" + format_rational(g.interval.lo) + "," +
                                                       format_rational(g.interval.hi) + ") straddles the next level");
    }
    if (seen != all) out.fail("level_decomposition", at_level(alpha) + ": coordinates outside every interval");
  }

  // Gamma^alpha(D_A); transitive closure makes it constant from alpha = 1 on.
  std::vector<BitRelation> gpow{d_all};
  for (std::size_t alpha = 1; alpha <= rank; ++alpha) gpow.push_back(gamma_finite(gpow.back()));
  if (m.tail_mode() == TailMode::open) {
    out.touch("e_successor_in_gamma");
    out.touch("e_level_in_gamma_power");
    for (std::size_t alpha = 0; alpha <= rank; ++alpha) {
      if (!level(alpha)) continue;
      if (alpha < rank) out.subset("e_successor_in_gamma", e[alpha + 1], gamma_finite(e[alpha]), at_level(alpha));
      out.subset("e_level_in_gamma_power", e[alpha], gpow[alpha] | diag, at_level(alpha));
    }
  } else {
    out.vacuous("e_successor_in_gamma", "immutable tail");
    out.vacuous("e_level_in_gamma_power", "immutable tail");
  }

  const BitRelation gd = gamma_finite(d_all);
  out.equal("gamma_stabilizes", gamma_finite(gd), gd, "Gamma(D_A)");
  out.subset("b_and_d_same_closure", b_all, d_all | diag, "B_A");
  if (m.connecting()) out.equal("b_and_d_same_closure", gamma_finite(b_all), gd, "Gamma(B_A)");
  else out.subset("b_and_d_same_closure", gamma_finite(b_all), gd, "Gamma(B_A)");

  if (tower.has_core && m.tail_mode() == TailMode::immutable) {
    out.touch("uncountable_separation");
    if (gd.is_full()) out.fail("uncountable_separation", "Gamma(D_A) is full");
  } else {
    out.vacuous("uncountable_separation", tower.has_core ? "open tail" : "A is countable");
  }

  for (std::size_t i = 0; i < k; ++i) {
    const BitRelation da = build_relation(m, RelationKind::D_a, i);
    const BitRelation dl = build_relation(m, RelationKind::D_a, k - 1);
    for (CoordMask mask : {CoordMask{0}, CoordMask{1} << i, all}) {
      const BitRelation bx = box(m, mask, da);
      out.equal("box_laws", box(m, mask, bx), bx, "idempotence");
      out.equal("box_laws", box(m, mask, da | dl), bx | box(m, mask, dl), "union");
    }
  }
  return out.done();
}

json model_to_json(const CoordinateModel& m) {
  json coords = json::array();
  for (const auto& c : m.coords()) coords.push_back(rational_to_json(c));
  return json{{"scheme", scheme_to_json(m.scheme())},
              {"L", coords},
              {"abstract_symbols", m.symbols()},
              {"tail_mode", to_string(m.tail_mode())},
              {"connecting", m.connecting()}};
}

CoordinateModel model_from_json(const json& j) {
  require_keys(j, {"scheme", "L", "abstract_symbols", "tail_mode", "connecting"}, "model");
  if (!j.contains("scheme") || !j.contains("L")) throw ValidationError("model: scheme and L are required");
  if (!j["L"].is_array()) throw ValidationError("model: L must be an array");
  std::vector<Rational> coords;
  for (const auto& c : j["L"]) coords.push_back(rational_from_json(c, "L"));
  std::vector<std::string> symbols{"s0", "s1"};
  if (j.contains("abstract_symbols")) {
    if (!j["abstract_symbols"].is_array()) throw ValidationError("model: abstract_symbols must be an array");
    symbols.clear();
    for (const auto& s : j["abstract_symbols"]) {
      if (!s.is_string()) throw ValidationError("model: symbols must be strings");
      symbols.push_back(s.get<std::string>());
    }
  }
  TailMode tail = TailMode::open;
  if (j.contains("tail_mode")) {
    const json& t = j["tail_mode"];
    if (t == "open") tail = TailMode::open;
    else if (t == "immutable") tail = TailMode::immutable;
    else throw ValidationError("model: tail_mode must be open or immutable");
  }
  bool connecting = false;
  if (j.contains("connecting")) {
    if (!j["connecting"].is_boolean()) throw ValidationError("model: connecting must be a boolean");
    connecting = j["connecting"].get<bool>();
  }
  return CoordinateModel::make(scheme_from_json(j["scheme"]), std::move(coords), std::move(symbols), tail, connecting);
}

json report_to_json(const PropertyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return json{{"all_passed", r.all_passed()}, {"checks", checks}};
}

}  // namespace lentropy::construction
