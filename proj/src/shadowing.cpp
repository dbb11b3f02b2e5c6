#include "lentropy/shadowing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace lentropy::shadowing {

Point GridSystem::iterate(Point x, std::uint64_t n) const {
  for (std::uint64_t k = 0; k < n; ++k) x = map(x);
  return x;
}

namespace {

GridSystem line_system(std::size_t n, std::function<Point(Point)> map) {
  GridSystem s;
  s.size = n + 1;
  s.map = std::move(map);
  const Rational step(1, static_cast<long>(n));
  s.metric = [step](Point a, Point b) { return Rational(step * static_cast<long>(a > b ? a - b : b - a)); };
  s.label = [n](Point a) { return format_rational(make_rational(static_cast<long>(a), static_cast<long>(n))); };
  return s;
}

}  // namespace

GridSystem identity_grid(std::size_t n) {
  if (n == 0) throw DomainError("identity_grid: n must be positive");
  return line_system(n, [](Point x) { return x; });
}

GridSystem tent_grid(std::size_t n) {
  if (n == 0) throw DomainError("tent_grid: n must be positive");
  return line_system(n, [n](Point x) {
    // n * T(x/n), rounded to the nearest integer, ties down
    const auto i = static_cast<std::int64_t>(x);
    const auto m = static_cast<std::int64_t>(n);
    std::int64_t num;  // image is num / 1 in units of 1/n, scaled by 1
    if (3 * i <= m) num = 3 * i;
    else if (3 * i <= 2 * m) num = 2 * m - 3 * i;
    else num = 3 * i - 2 * m;
    return static_cast<Point>(std::clamp<std::int64_t>(num, 0, m));
  });
}

GridSystem constant_grid(std::size_t n, Point value) {
  if (n == 0 || value > n) throw DomainError("constant_grid: value outside the grid");
  return line_system(n, [value](Point) { return value; });
}

GridSystem cycle_grid(std::size_t n) {
  if (n < 2) throw DomainError("cycle_grid: n must be at least 2");
  GridSystem s = line_system(n - 1, [n](Point x) { return (x + 1) % n; });
  return s;
}

GridSystem table_system(const gamma::FiniteSpace& space, std::vector<Point> map) {
  if (map.size() != space.size()) throw ValidationError("table_system: map size differs from space size");
  for (Point p : map) {
    if (p >= space.size()) throw ValidationError("table_system: map leaves the space");
  }
  GridSystem s;
  s.size = space.size();
  s.map = [map = std::move(map)](Point x) { return map[x]; };
  s.metric = [space](Point a, Point b) { return space.distance(a, b); };
  s.label = [space](Point a) { return format_rational(space.coords[a]); };
  return s;
}

GridSystem periodic_full_shift(std::size_t period, ShiftMetric metric) {
  if (period == 0 || period > 63) throw DomainError("periodic_full_shift: period must be in [1,63]");
  GridSystem s;
  s.size = std::uint64_t{1} << period;
  s.map = [period](Point x) { return (x >> 1) | ((x & 1) << (period - 1)); };
  if (metric == ShiftMetric::symbolic) {
    s.metric = [](Point a, Point b) {
      if (a == b) return Rational(0);
      const int k = __builtin_ctzll(a ^ b);
      return Rational(1, 1L << k);
    };
  } else {
    s.metric = [](Point a, Point b) { return Rational(a == b ? 0 : 1); };
  }
  s.label = [period](Point a) {
    std::string out;
    for (std::size_t i = 0; i < period; ++i) out += (a >> i & 1) ? '1' : '0';
    return out;
  };
  s.tracer = [period](const Sequence& seq) -> std::optional<Point> {
    Point y = 0;
    for (std::size_t n = 0; n < std::min(period, seq.size()); ++n) y |= (seq[n] & 1) << n;
    return y;
  };
  return s;
}

bool is_pseudo_orbit(const GridSystem& sys, const Sequence& seq, const Rational& delta) {
  if (seq.empty()) throw DomainError("is_pseudo_orbit: empty sequence");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (sys.metric(sys.map(seq[i]), seq[i + 1]) > delta) return false;
  }
  return true;
}

bool shadows(const GridSystem& sys, Point y, const Sequence& seq, const Rational& eps) {
  for (Point x : seq) {
    if (sys.metric(y, x) > eps) return false;
    y = sys.map(y);
  }
  return true;
}

std::string to_string(ShadowVerdict::Kind k) {
  switch (k) {
    case ShadowVerdict::Kind::holds_exhaustive: return "holds_exhaustive";
    case ShadowVerdict::Kind::fails: return "fails";
    case ShadowVerdict::Kind::unknown_sampled: return "unknown_sampled";
  }
  return "";
}

namespace {

constexpr std::uint64_t max_enumerable = 4096;

// Sets of points as bit vectors.
using PointSet = std::vector<std::uint64_t>;

std::size_t popcount(const PointSet& s) {
  std::size_t c = 0;
  for (auto w : s) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

struct PointSetHash {
  std::size_t operator()(const std::pair<std::pair<std::size_t, Point>, PointSet>& k) const {
    std::size_t h = std::hash<std::size_t>()(k.first.first) * 31 + std::hash<Point>()(k.first.second);
    for (auto w : k.second) h = h * 1000003u ^ std::hash<std::uint64_t>()(w);
    return h;
  }
};

class ShadowSearch {
 public:
  ShadowSearch(const GridSystem& sys, const Rational& eps, const Rational& delta, std::size_t p)
      : sys_(sys), n_(sys.size), words_((sys.size + 63) / 64), p_(p) {
    image_.resize(n_);
    for (Point x = 0; x < n_; ++x) image_[x] = sys.map(x);
    eps_ball_.assign(n_, PointSet(words_, 0));
    delta_ball_.resize(n_);
    for (Point a = 0; a < n_; ++a) {
      for (Point b = 0; b < n_; ++b) {
        const Rational d = sys.metric(a, b);
        if (d <= eps) eps_ball_[a][b / 64] |= std::uint64_t{1} << (b % 64);
        if (d <= delta) delta_ball_[a].push_back(b);
      }
    }
  }

  std::size_t branching() const {
    std::size_t b = 0;
    for (const auto& v : delta_ball_) b = std::max(b, v.size());
    return b;
  }

  PointSet advance(const PointSet& s, Point next) const {
    PointSet out(words_, 0);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = s[w];
      while (bits) {
        const Point z = image_[w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))];
        out[z / 64] |= std::uint64_t{1} << (z % 64);
        bits &= bits - 1;
      }
    }
    for (std::size_t w = 0; w < words_; ++w) out[w] &= eps_ball_[next][w];
    return out;
  }

  // Candidate successors, most constraining first.
  std::vector<std::pair<Point, PointSet>> successors(Point x, const PointSet& s) const {
    std::vector<std::pair<Point, PointSet>> out;
    for (Point c : delta_ball_[image_[x]]) out.emplace_back(c, advance(s, c));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      const auto ca = popcount(a.second), cb = popcount(b.second);
      return ca != cb ? ca < cb : a.first > b.first;
    });
    return out;
  }

  std::optional<Sequence> exhaustive() {
    std::vector<std::pair<Point, PointSet>> starts;
    for (Point x = 0; x < n_; ++x) starts.emplace_back(x, eps_ball_[x]);
    std::stable_sort(starts.begin(), starts.end(),
                     [](const auto& a, const auto& b) { return popcount(a.second) < popcount(b.second); });
    for (const auto& [x, s] : starts) {
      Sequence path{x};
      if (!explore(path, s)) return extend(path);
    }
    return std::nullopt;
  }

  std::optional<Sequence> sample(std::mt19937_64& rng) {
    Sequence path{std::uniform_int_distribution<Point>(0, n_ - 1)(rng)};
    PointSet s = eps_ball_[path[0]];
    while (path.size() <= p_) {
      if (popcount(s) == 0) return extend(path);
      const auto& cands = delta_ball_[image_[path.back()]];
      const Point c = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
      s = advance(s, c);
      path.push_back(c);
    }
    if (popcount(s) == 0) return path;
    return std::nullopt;
  }

  std::size_t visited = 0;

 private:
  bool explore(Sequence& path, const PointSet& s) {
    ++visited;
    if (popcount(s) == 0) return false;
    if (path.size() == p_ + 1) return true;
    auto key = std::make_pair(std::make_pair(path.size(), path.back()), s);
    if (good_.count(key)) return true;
    for (auto& [c, next] : successors(path.back(), s)) {
      path.push_back(c);
      if (!explore(path, next)) return false;
      path.pop_back();
    }
    good_.insert(std::move(key));
    return true;
  }

  Sequence extend(Sequence path) const {
    PointSet s(words_, 0);
    while (path.size() <= p_) path.push_back(successors(path.back(), s).front().first);
    return path;
  }

  const GridSystem& sys_;
  std::uint64_t n_;
  std::size_t words_;
  std::size_t p_;
  std::vector<Point> image_;
  std::vector<PointSet> eps_ball_;
  std::vector<std::vector<Point>> delta_ball_;
  std::unordered_set<std::pair<std::pair<std::size_t, Point>, PointSet>, PointSetHash> good_;
};

}  // namespace

ShadowVerdict finite_shadowing_check(const GridSystem& sys, const Rational& eps, const Rational& delta,
                                     std::size_t p, std::uint64_t budget, std::uint64_t seed) {
  if (p < 2) throw DomainError("finite_shadowing_check: p must be at least 2");
  if (sys.size == 0 || sys.size > max_enumerable) {
    throw ResourceError("finite_shadowing_check: space has more than 4096 points");
  }
  ShadowSearch search(sys, eps, delta, p);
  ShadowVerdict out;
  const double work = std::log(static_cast<double>(sys.size)) +
                      static_cast<double>(p) * std::log(static_cast<double>(search.branching()));
  if (work <= std::log(static_cast<double>(std::max<std::uint64_t>(budget, 1)))) {
    if (auto w = search.exhaustive()) {
      out.kind = ShadowVerdict::Kind::fails;
      out.witness = std::move(*w);
    }
    out.states_visited = search.visited;
    return out;
  }
  std::mt19937_64 rng(seed);
  const std::size_t trials = static_cast<std::size_t>(std::clamp<std::uint64_t>(budget / (p + 1), 1, 100000));
  for (std::size_t t = 0; t < trials; ++t) {
    if (auto w = search.sample(rng)) {
      out.kind = ShadowVerdict::Kind::fails;
      out.witness = std::move(*w);
      out.trials = t + 1;
      return out;
    }
  }
  out.kind = ShadowVerdict::Kind::unknown_sampled;
  out.trials = trials;
  return out;
}

void check_weave_hypotheses(const GridSystem& sys, const WeaveInput& in) {
  if (in.n1 < 2 || in.n3 < 2) throw ValidationError("weave: n1 and n3 must exceed 1");
  const Rational r = in.delta / 2;
  const Point a[4] = {0, in.a1, in.a2, in.a3};
  auto check = [&](const char* name, Point y, int i, int j, std::size_t n) {
    if (sys.metric(y, a[i]) > r) {
      throw ValidationError(std::string("weave: ") + name + " is not in B(a" + std::to_string(i) + ", delta/2)");
    }
    if (sys.metric(sys.iterate(y, n), a[j]) > r) {
      throw ValidationError(std::string("weave: T^n") + (n == in.n1 ? "1" : "3") + "(" + name +
                            ") is not in B(a" + std::to_string(j) + ", delta/2)");
    }
  };
  const WeaveTable& t = in.table;
  check("y(1,1)", t.y11, 1, 1, in.n1);
  check("y(1,2)", t.y12, 1, 2, in.n1);
  check("y(2,1)", t.y21, 2, 1, in.n1);
  check("y(2,3)", t.y23, 2, 3, in.n3);
  check("y(3,2)", t.y32, 3, 2, in.n3);
  check("y(3,3)", t.y33, 3, 3, in.n3);
  check("y1(2,2)", t.y1_22, 2, 2, in.n1);
  check("y3(2,2)", t.y3_22, 2, 2, in.n3);
}

Sequence weave_block(const GridSystem& sys, const WeaveInput& in, int i, int j) {
  if ((i != 1 && i != 3) || (j != 1 && j != 3)) throw ValidationError("weave: pattern values must be 1 or 3");
  const std::size_t ni = i == 1 ? in.n1 : in.n3;
  const std::size_t nj = j == 1 ? in.n1 : in.n3;
  const std::size_t big_n = 2 * in.n1 * in.n3;
  const WeaveTable& t = in.table;
  Sequence out;
  out.reserve(big_n + 1);
  if (i == j) {
    const Point y = i == 1 ? t.y11 : t.y33;
    for (std::size_t m = 0; m <= big_n; ++m) out.push_back(sys.iterate(y, m % ni));
    return out;
  }
  const Point yi2 = i == 1 ? t.y12 : t.y32;
  const Point yi22 = i == 1 ? t.y1_22 : t.y3_22;
  const Point y2j = j == 3 ? t.y23 : t.y21;
  const Point yjj = j == 3 ? t.y33 : t.y11;
  for (std::size_t m = 0; m <= big_n; ++m) {
    if (m < ni) out.push_back(sys.iterate(yi2, m));
    else if (m < ni * nj) out.push_back(sys.iterate(yi22, m % ni));
    else if (m < ni * nj + nj) out.push_back(sys.iterate(y2j, m % nj));
    else out.push_back(sys.iterate(yjj, m % nj));
  }
  return out;
}

Sequence weave(const GridSystem& sys, const WeaveInput& in, const std::vector<int>& f) {
  if (f.empty()) throw ValidationError("weave: empty pattern");
  const std::size_t big_n = 2 * in.n1 * in.n3;
  Sequence out;
  out.reserve(big_n * f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Sequence block = weave_block(sys, in, f[k], k + 1 < f.size() ? f[k + 1] : f[k]);
    out.insert(out.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(big_n));
  }
  return out;
}

std::optional<Point> find_shadow(const GridSystem& sys, const Sequence& seq, const Rational& eps) {
  if (sys.tracer) {
    if (auto y = sys.tracer(seq); y && shadows(sys, *y, seq, eps)) return y;
  }
  if (sys.size > (std::uint64_t{1} << 20)) return std::nullopt;
  for (Point y = 0; y < sys.size; ++y) {
    if (shadows(sys, y, seq, eps)) return y;
  }
  return std::nullopt;
}

IndependenceResult independence_from_shadowing(const GridSystem& sys, const Rational& eps, std::size_t k,
                                               const WeaveInput& in) {
  if (k == 0 || k > 20) throw DomainError("independence_from_shadowing: K must be in [1,20]");
  check_weave_hypotheses(sys, in);
  const std::size_t big_n = 2 * in.n1 * in.n3;
  IndependenceResult out;
  for (std::size_t i = 0; i < k; ++i) out.positions.push_back(big_n * i);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> f;
    for (std::size_t i = 0; i < k; ++i) f.push_back((mask >> i & 1) ? 3 : 1);
    ++out.patterns_checked;
    const Sequence seq = weave(sys, in, f);
    bool ok = is_pseudo_orbit(sys, seq, in.delta);
    std::optional<Point> y;
    if (ok) y = find_shadow(sys, seq, eps);
    ok = ok && y.has_value();
    for (std::size_t i = 0; ok && i < k; ++i) {
      const Point target = f[i] == 1 ? in.a1 : in.a3;
      ok = sys.metric(sys.iterate(*y, big_n * i), target) <= eps;
    }
    if (!ok) {
      out.failing_pattern = f;
      return out;
    }
  }
  out.verified = true;
  return out;
}

WeaveInput full_shift_weave_input() {
  constexpr std::size_t period = 48;
  auto word = [](const std::string& prefix) {
    Point y = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] == '1') y |= Point{1} << i;
    }
    return y;
  };
  Point a2 = 0;
  for (std::size_t i = 1; i < period; i += 2) a2 |= Point{1} << i;
  WeaveInput in;
  in.a1 = 0;
  in.a2 = a2;
  in.a3 = (Point{1} << period) - 1;
  in.table = WeaveTable{word("0000"), word("0001"), word("0100"), word("0111"),
                        word("1101"), word("1111"), word("0101"), word("0101")};
  in.n1 = 2;
  in.n3 = 2;
  in.delta = Rational(1, 2);
  return in;
}

}  // namespace lentropy::shadowing
