#include "lentropy/compacta.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace lentropy::compacta {

// --- construction ----------------------------------------------------------

Scheme::Scheme(Node node) : node_(std::make_shared<const Node>(std::move(node))) {
  switch (kind()) {
    case Kind::points:
      min_ = as_points().values.front();
      max_ = as_points().values.back();
      break;
    case Kind::acc: {
      const Acc& a = as_acc();
      if (a.side == Side::below) {
        min_ = a.copy_min(1);
        max_ = a.target;
      } else {
        min_ = a.target;
        max_ = a.copy_max(1);
      }
      break;
    }
    case Kind::union_:
      min_ = as_union().parts.front().min();
      max_ = as_union().parts.back().max();
      break;
    case Kind::perfect:
      min_ = as_perfect().lo;
      max_ = as_perfect().hi;
      break;
  }
}

Scheme Scheme::points(std::vector<Rational> values) {
  if (values.empty()) throw ValidationError("points: empty point list");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0 || values[i] >= 1) {
      throw ValidationError("points: " + format_rational(values[i]) + " is outside (0,1)");
    }
    if (i > 0 && values[i - 1] >= values[i]) {
      throw ValidationError("points: values must be strictly increasing");
    }
  }
  return Scheme(Node(Points{std::move(values)}));
}

Scheme Scheme::acc(Rational target, Side side, Rational ratio, Rational window, Scheme body) {
  if (target <= 0 || target >= 1) throw ValidationError("acc: target outside (0,1)");
  if (ratio <= 0 || ratio >= 1) throw ValidationError("acc: ratio outside (0,1)");
  if (window <= 0) throw ValidationError("acc: window must be positive");
  const Rational first_width = window * (1 - ratio);
  if (side == Side::below) {
    if (target - window - first_width / 2 <= 0) {
      throw ValidationError("acc: first window leaves (0,1) below target");
    }
  } else if (target + window + first_width / 2 >= 1) {
    throw ValidationError("acc: first window leaves (0,1) above target");
  }
  return Scheme(Node(std::make_shared<const Acc>(
      Acc{std::move(target), side, std::move(ratio), std::move(window), std::move(body)})));
}

Scheme Scheme::union_of(std::vector<Scheme> parts) {
  if (parts.empty()) throw ValidationError("union: no parts");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i - 1].max() >= parts[i].min()) {
      throw ValidationError("union: overlapping or unsorted convex hulls");
    }
  }
  return Scheme(Node(std::make_shared<const Union>(Union{std::move(parts)})));
}

Scheme Scheme::perfect(Rational lo, Rational hi) {
  if (!(0 < lo && lo < hi && hi < 1)) throw ValidationError("perfect: need 0 < lo < hi < 1");
  return Scheme(Node(Perfect{std::move(lo), std::move(hi)}));
}

Scheme::Kind Scheme::kind() const { return static_cast<Kind>(node_->index()); }
const Points& Scheme::as_points() const { return std::get<Points>(*node_); }
const Acc& Scheme::as_acc() const { return *std::get<std::shared_ptr<const Acc>>(*node_); }
const Union& Scheme::as_union() const { return *std::get<std::shared_ptr<const Union>>(*node_); }
const Perfect& Scheme::as_perfect() const { return std::get<Perfect>(*node_); }

bool Scheme::operator==(const Scheme& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::points: return as_points() == other.as_points();
    case Kind::acc: return as_acc() == other.as_acc();
    case Kind::union_: return as_union() == other.as_union();
    case Kind::perfect: return as_perfect() == other.as_perfect();
  }
  return false;
}

std::size_t Scheme::acc_depth() const {
  switch (kind()) {
    case Kind::acc: return 1 + as_acc().body.acc_depth();
    case Kind::union_: {
      std::size_t d = 0;
      for (const auto& p : as_union().parts) d = std::max(d, p.acc_depth());
      return d;
    }
    default: return 0;
  }
}

bool Scheme::has_perfect() const {
  switch (kind()) {
    case Kind::perfect: return true;
    case Kind::acc: return as_acc().body.has_perfect();
    case Kind::union_:
      return std::any_of(as_union().parts.begin(), as_union().parts.end(),
                         [](const Scheme& p) { return p.has_perfect(); });
    default: return false;
  }
}

Affine Acc::copy_map(std::size_t k) const {
  Rational power = 1;
  for (std::size_t i = 1; i < k; ++i) power *= ratio;
  const Rational width = window * power * (1 - ratio);
  const Rational centre = side == Side::below ? Rational(target - window * power)
                                              : Rational(target + window * power);
  return Affine{centre - width / 2, width};
}

// --- derivative and rank ---------------------------------------------------

MaybeScheme derivative(const Scheme& s) {
  switch (s.kind()) {
    case Scheme::Kind::points:
      return std::nullopt;
    case Scheme::Kind::acc: {
      const Acc& a = s.as_acc();
      MaybeScheme body = derivative(a.body);
      if (!body) return Scheme::points({a.target});
      return Scheme::acc(a.target, a.side, a.ratio, a.window, *body);
    }
    case Scheme::Kind::union_: {
      std::vector<Scheme> parts;
      for (const auto& p : s.as_union().parts) {
        if (auto d = derivative(p)) parts.push_back(*d);
      }
      if (parts.empty()) return std::nullopt;
      if (parts.size() == 1) return parts.front();
      return Scheme::union_of(std::move(parts));
    }
    case Scheme::Kind::perfect:
      return s;
  }
  return std::nullopt;
}

MaybeScheme derivative(const MaybeScheme& s) { return s ? derivative(*s) : std::nullopt; }

MaybeScheme derivative(const MaybeScheme& s, std::size_t n) {
  MaybeScheme cur = s;
  for (std::size_t i = 0; i < n && cur; ++i) cur = derivative(*cur);
  return cur;
}

RankResult cb_rank(const MaybeScheme& s) {
  RankResult out;
  MaybeScheme cur = s;
  for (;;) {
    MaybeScheme next = derivative(cur);
    if (next == cur) {
      out.core = cur;
      return out;
    }
    ++out.rank;
    cur = std::move(next);
  }
}

RankResult cb_rank(const Scheme& s) { return cb_rank(MaybeScheme(s)); }

// --- location --------------------------------------------------------------

namespace {

// A query point, optionally displaced infinitesimally to the right.
struct Probe {
  Rational x;
  bool right = false;

  bool lt(const Rational& y) const { return x < y; }
  bool gt(const Rational& y) const { return right ? x >= y : x > y; }
  bool eq(const Rational& y) const { return !right && x == y; }
  Probe pull_back(const Affine& m) const { return Probe{m.invert(x), right}; }
};

struct Hit {
  enum class Kind { in, gap, below, above } kind;
  Gap gap{};

  static Hit in() { return Hit{Kind::in}; }
  static Hit below() { return Hit{Kind::below}; }
  static Hit above() { return Hit{Kind::above}; }
  static Hit between(Rational lo, Rational hi) {
    return Hit{Kind::gap, Gap{std::move(lo), std::move(hi), true, true}};
  }
  Hit push_forward(const Affine& m) const {
    if (kind != Kind::gap) return *this;
    return Hit{kind, Gap{m.apply(gap.lo), m.apply(gap.hi), gap.lo_in_a, gap.hi_in_a}};
  }
};

Hit locate_node(const Scheme& s, const Probe& p);

Hit locate_perfect(const Perfect& c, const Probe& p) {
  const Rational third(1, 3);
  const Rational two_thirds(2, 3);
  Rational lo = c.lo;
  Rational len = c.hi - c.lo;
  Probe u{(p.x - c.lo) / len, p.right};
  std::set<Rational> seen;
  for (;;) {
    if (u.eq(0) || u.eq(1)) return Hit::in();
    if (u.gt(third) && u.lt(two_thirds)) {
      return Hit::between(lo + len / 3, lo + 2 * len / 3);
    }
    // Rational points of the Cantor set have eventually periodic expansions.
    if (!seen.insert(u.x).second) return Hit::in();
    len /= 3;
    if (u.gt(third)) {
      lo += 2 * len;
      u.x = 3 * u.x - 2;
    } else {
      u.x = 3 * u.x;
    }
  }
}

Hit locate_acc(const Acc& a, const Probe& p) {
  if (p.eq(a.target)) return Hit::in();
  if (a.side == Side::below) {
    // hull check already ensured min <= p < target
    for (std::size_t k = 1;; ++k) {
      const Affine m = a.copy_map(k);
      const Rational lo = m.apply(a.body.min());
      if (p.lt(lo)) return Hit::between(a.copy_max(k - 1), lo);
      if (!p.gt(m.apply(a.body.max()))) return locate_node(a.body, p.pull_back(m)).push_forward(m);
    }
  }
  if (p.right && p.x == a.target) return Hit::in();  // accumulates from the right
  for (std::size_t k = 1;; ++k) {
    const Affine m = a.copy_map(k);
    const Rational hi = m.apply(a.body.max());
    if (p.gt(hi)) return Hit::between(hi, a.copy_min(k - 1));
    if (!p.lt(m.apply(a.body.min()))) return locate_node(a.body, p.pull_back(m)).push_forward(m);
  }
}

Hit locate_node(const Scheme& s, const Probe& p) {
  if (p.lt(s.min())) return Hit::below();
  if (p.gt(s.max())) return Hit::above();
  switch (s.kind()) {
    case Scheme::Kind::points: {
      const auto& v = s.as_points().values;
      auto it = std::find_if(v.begin(), v.end(), [&](const Rational& y) { return !p.gt(y); });
      if (p.eq(*it)) return Hit::in();
      return Hit::between(*(it - 1), *it);
    }
    case Scheme::Kind::union_: {
      const auto& parts = s.as_union().parts;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        Hit h = locate_node(parts[i], p);
        if (h.kind == Hit::Kind::above) continue;
        if (h.kind == Hit::Kind::below) return Hit::between(parts[i - 1].max(), parts[i].min());
        return h;
      }
      return Hit::above();
    }
    case Scheme::Kind::perfect:
      return locate_perfect(s.as_perfect(), p);
    case Scheme::Kind::acc:
      return locate_acc(s.as_acc(), p);
  }
  return Hit::in();
}

Location to_location(const Scheme& s, const Hit& h) {
  switch (h.kind) {
    case Hit::Kind::in: return InA{};
    case Hit::Kind::gap: return h.gap;
    case Hit::Kind::below: return Gap{0, s.min(), false, true};
    case Hit::Kind::above: return Gap{s.max(), 1, true, false};
  }
  return InA{};
}

}  // namespace

Location locate(const Scheme& s, const Rational& x) {
  if (x <= 0 || x >= 1) throw DomainError("locate: " + format_rational(x) + " is outside (0,1)");
  return to_location(s, locate_node(s, Probe{x, false}));
}

Location locate_right_of(const Scheme& s, const Rational& x) {
  if (x < 0 || x >= 1) throw DomainError("locate_right_of: " + format_rational(x) + " is outside [0,1)");
  return to_location(s, locate_node(s, Probe{x, true}));
}

bool contains(const Scheme& s, const Rational& x) {
  if (x <= 0 || x >= 1) return false;
  return std::holds_alternative<InA>(locate(s, x));
}

std::optional<Rational> ceiling(const Scheme& s, const Rational& x) {
  if (x <= s.min()) return s.min();
  if (x > s.max()) return std::nullopt;
  const Location loc = locate(s, x);
  if (std::holds_alternative<InA>(loc)) return x;
  const Gap& g = std::get<Gap>(loc);
  if (!g.hi_in_a) return std::nullopt;
  return g.hi;
}

bool is_left_endpoint(const Scheme& s, const Rational& c) {
  if (!contains(s, c)) return false;
  return std::holds_alternative<Gap>(locate_right_of(s, c));
}

Gap gap_right_of(const Scheme& s, const Rational& c) {
  if (!contains(s, c)) throw DomainError("gap_right_of: " + format_rational(c) + " is not in A");
  const Location loc = locate_right_of(s, c);
  if (!std::holds_alternative<Gap>(loc)) {
    throw DomainError("gap_right_of: " + format_rational(c) + " is not a left endpoint");
  }
  return std::get<Gap>(loc);
}

// --- gap enumeration -------------------------------------------------------

struct GapEnumerator::Impl {
  struct Item {
    Rational width;
    bool concrete = true;
    Gap gap;             // concrete item
    Scheme node;         // pending subtree
    Affine map;          // node coordinates -> global
    std::size_t tail = 0;  // for acc nodes: first window still unexpanded
    Rational lo;         // sort key for ties
  };

  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      if (a.width != b.width) return a.width < b.width;
      if (a.concrete != b.concrete) return !a.concrete;
      return a.lo > b.lo;
    }
  };

  std::priority_queue<Item, std::vector<Item>, Later> queue;

  void push_gap(Gap g) {
    if (g.hi <= g.lo) return;
    Item it{g.width(), true, g, Scheme::points({Rational(1, 2)}), {}, 0, g.lo};
    queue.push(std::move(it));
  }

  void push_node(const Scheme& node, const Affine& map, std::size_t tail = 1) {
    Rational lo, hi;
    if (node.kind() == Scheme::Kind::acc && tail > 1) {
      const Acc& a = node.as_acc();
      if (a.side == Side::below) {
        lo = map.apply(a.copy_min(tail));
        hi = map.apply(a.target);
      } else {
        lo = map.apply(a.target);
        hi = map.apply(a.copy_max(tail));
      }
    } else {
      lo = map.apply(node.min());
      hi = map.apply(node.max());
    }
    if (hi <= lo) return;
    queue.push(Item{hi - lo, false, Gap{}, node, map, tail, lo});
  }

  void expand(const Item& it) {
    const Affine& m = it.map;
    auto global_gap = [&](const Rational& lo, const Rational& hi) {
      push_gap(Gap{m.apply(lo), m.apply(hi), true, true});
    };
    switch (it.node.kind()) {
      case Scheme::Kind::points: {
        const auto& v = it.node.as_points().values;
        for (std::size_t i = 1; i < v.size(); ++i) global_gap(v[i - 1], v[i]);
        break;
      }
      case Scheme::Kind::union_: {
        const auto& parts = it.node.as_union().parts;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i > 0) global_gap(parts[i - 1].max(), parts[i].min());
          push_node(parts[i], m);
        }
        break;
      }
      case Scheme::Kind::perfect: {
        const Perfect& c = it.node.as_perfect();
        const Rational len = c.hi - c.lo;
        global_gap(c.lo + len / 3, c.lo + 2 * len / 3);
        // children are affine images of the same Cantor set
        const Affine left{Rational(c.lo - c.lo / 3), Rational(1, 3)};
        const Affine right{Rational(c.lo + 2 * len / 3 - c.lo / 3), Rational(1, 3)};
        push_node(it.node, m.compose(left));
        push_node(it.node, m.compose(right));
        break;
      }
      case Scheme::Kind::acc: {
        const Acc& a = it.node.as_acc();
        const std::size_t k = it.tail;
        push_node(a.body, m.compose(a.copy_map(k)));
        if (a.side == Side::below) {
          global_gap(a.copy_max(k), a.copy_min(k + 1));
        } else {
          global_gap(a.copy_max(k + 1), a.copy_min(k));
        }
        push_node(it.node, m, k + 1);
        break;
      }
    }
  }
};

GapEnumerator::GapEnumerator(const Scheme& s) : impl_(std::make_unique<Impl>()) {
  impl_->push_gap(Gap{0, s.min(), false, true});
  impl_->push_gap(Gap{s.max(), 1, true, false});
  impl_->push_node(s, Affine{});
}

GapEnumerator::~GapEnumerator() = default;
GapEnumerator::GapEnumerator(GapEnumerator&&) noexcept = default;
GapEnumerator& GapEnumerator::operator=(GapEnumerator&&) noexcept = default;

std::optional<Gap> GapEnumerator::next() {
  while (!impl_->queue.empty()) {
    Impl::Item it = impl_->queue.top();
    impl_->queue.pop();
    if (it.concrete) return it.gap;
    impl_->expand(it);
  }
  return std::nullopt;
}

std::vector<Gap> contiguous_intervals(const Scheme& s, std::size_t k) {
  std::vector<Gap> out;
  GapEnumerator gaps(s);
  while (out.size() < k) {
    auto g = gaps.next();
    if (!g) break;
    out.push_back(*g);
  }
  return out;
}

std::vector<Rational> left_endpoints(const Scheme& s, std::size_t k) {
  std::vector<Rational> out;
  for (const Gap& g : contiguous_intervals(s, k)) {
    if (g.lo_in_a) out.push_back(g.lo);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- finite approximation --------------------------------------------------

namespace {

void realize_into(const Scheme& s, std::size_t depth, const Affine& m, std::vector<Rational>& out) {
  switch (s.kind()) {
    case Scheme::Kind::points:
      for (const auto& v : s.as_points().values) out.push_back(m.apply(v));
      break;
    case Scheme::Kind::acc: {
      const Acc& a = s.as_acc();
      out.push_back(m.apply(a.target));
      for (std::size_t k = 1; k <= depth; ++k) realize_into(a.body, depth, m.compose(a.copy_map(k)), out);
      break;
    }
    case Scheme::Kind::union_:
      for (const auto& p : s.as_union().parts) realize_into(p, depth, m, out);
      break;
    case Scheme::Kind::perfect: {
      if (depth > 20) throw ResourceError("realize: perfect depth above 20");
      const Perfect& c = s.as_perfect();
      std::vector<std::pair<Rational, Rational>> level{{c.lo, c.hi}};
      for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::pair<Rational, Rational>> next;
        next.reserve(level.size() * 2);
        for (const auto& [lo, hi] : level) {
          const Rational len = (hi - lo) / 3;
          next.emplace_back(lo, lo + len);
          next.emplace_back(hi - len, hi);
        }
        level = std::move(next);
      }
      for (const auto& [lo, hi] : level) {
        out.push_back(m.apply(lo));
        out.push_back(m.apply(hi));
      }
      break;
    }
  }
}

}  // namespace

std::vector<Rational> realize(const Scheme& s, std::size_t depth) {
  std::vector<Rational> out;
  realize_into(s, depth, Affine{}, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- canonical families ----------------------------------------------------

Scheme nested_accumulation(std::size_t rank) {
  if (rank == 0) throw DomainError("nested_accumulation: rank must be >= 1");
  Scheme s = Scheme::points({Rational(1, 2)});
  for (std::size_t i = 1; i < rank; ++i) {
    s = Scheme::acc(Rational(1, 2), Side::below, Rational(1, 4), Rational(1, 4), s);
  }
  return s;
}

Scheme accumulation_example() { return nested_accumulation(2); }

std::string to_string(const Scheme& s) {
  std::ostringstream os;
  switch (s.kind()) {
    case Scheme::Kind::points: {
      os << "points{";
      const auto& v = s.as_points().values;
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_rational(v[i]);
      os << "}";
      break;
    }
    case Scheme::Kind::acc: {
      const Acc& a = s.as_acc();
      os << "acc(" << format_rational(a.target) << "," << (a.side == Side::below ? "below" : "above") << ","
         << format_rational(a.ratio) << "," << format_rational(a.window) << "," << to_string(a.body) << ")";
      break;
    }
    case Scheme::Kind::union_: {
      os << "union[";
      const auto& p = s.as_union().parts;
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << to_string(p[i]);
      os << "]";
      break;
    }
    case Scheme::Kind::perfect:
      os << "perfect[" << format_rational(s.as_perfect().lo) << "," << format_rational(s.as_perfect().hi) << "]";
      break;
  }
  return os.str();
}

std::string to_string(const MaybeScheme& s) { return s ? to_string(*s) : std::string("empty"); }

}  // namespace lentropy::compacta
