#include "lentropy/interval_maps.hpp"

#include <algorithm>
#include <cmath>

namespace lentropy::interval_maps {

PlMap::PlMap(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size()) throw ValidationError("pl map: need matching breakpoint/value lists");
  if (xs_.front() != 0 || xs_.back() != 1) throw ValidationError("pl map: breakpoints must run from 0 to 1");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (i > 0 && xs_[i - 1] >= xs_[i]) throw ValidationError("pl map: breakpoints must increase strictly");
    if (ys_[i] < 0 || ys_[i] > 1) throw ValidationError("pl map: values must lie in [0,1]");
  }
}

PlMap PlMap::identity() { return PlMap({0, 1}, {0, 1}); }

Rational PlMap::operator()(const Rational& x) const {
  if (x < 0 || x > 1) throw DomainError("pl map: argument outside [0,1]");
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (*it == x) return ys_[i];
  const Rational t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

PlMap PlMap::simplified() const {
  std::vector<Rational> xs{xs_.front()}, ys{ys_.front()};
  for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
    // slopes compared by cross-multiplication; widths are positive
    const Rational left = (ys_[i] - ys.back()) * (xs_[i + 1] - xs_[i]);
    const Rational right = (ys_[i + 1] - ys_[i]) * (xs_[i] - xs.back());
    if (left != right) {
      xs.push_back(xs_[i]);
      ys.push_back(ys_[i]);
    }
  }
  xs.push_back(xs_.back());
  ys.push_back(ys_.back());
  return PlMap(std::move(xs), std::move(ys));
}

PlMap tent() {
  return PlMap({0, Rational(1, 3), Rational(2, 3), 1}, {0, 1, 0, 1});
}

PlMap compose(const PlMap& outer, const PlMap& inner, std::size_t budget) {
  const auto& ox = outer.breakpoints();
  const auto& oy = outer.values();
  const auto& ix = inner.breakpoints();
  const auto& iy = inner.values();
  std::vector<Rational> xs{ix.front()}, ys{outer(iy.front())};
  for (std::size_t i = 0; i + 1 < ix.size(); ++i) {
    const Rational& y0 = iy[i];
    const Rational& y1 = iy[i + 1];
    if (y0 != y1) {
      // outer breakpoints strictly inside the image segment become new breakpoints
      const Rational& lo = std::min(y0, y1);
      const Rational& hi = std::max(y0, y1);
      auto first = std::upper_bound(ox.begin(), ox.end(), lo);
      auto last = std::lower_bound(ox.begin(), ox.end(), hi);
      const Rational scale = (ix[i + 1] - ix[i]) / (y1 - y0);
      auto emit = [&](std::size_t k) {
        xs.push_back(ix[i] + (ox[k] - y0) * scale);
        ys.push_back(oy[k]);
      };
      const auto b = static_cast<std::size_t>(first - ox.begin());
      const auto e = static_cast<std::size_t>(last - ox.begin());
      if (y0 < y1) {
        for (std::size_t k = b; k < e; ++k) emit(k);
      } else {
        for (std::size_t k = e; k > b; --k) emit(k - 1);
      }
    }
    xs.push_back(ix[i + 1]);
    ys.push_back(outer(y1));
    if (xs.size() > budget) throw ResourceError("compose: breakpoint budget exceeded");
  }
  return PlMap(std::move(xs), std::move(ys)).simplified();
}

PlMap iterate(const PlMap& f, std::size_t n, std::size_t budget) {
  PlMap out = PlMap::identity();
  for (std::size_t k = 0; k < n; ++k) out = compose(f, out, budget);
  return out;
}

std::size_t laps(const PlMap& f) {
  const auto& ys = f.values();
  std::size_t count = 1;
  int direction = 0;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const int s = ys[i + 1] > ys[i] ? 1 : (ys[i + 1] < ys[i] ? -1 : 0);
    if (s == 0) continue;
    if (direction != 0 && s != direction) ++count;
    direction = s;
  }
  return count;
}

std::size_t lap_count(const PlMap& f, std::size_t n, std::size_t budget) {
  if (n == 0) throw DomainError("lap_count: n must be at least 1");
  return laps(iterate(f, n, budget));
}

double entropy_estimate(const PlMap& f, std::size_t n, std::size_t budget) {
  return std::log(static_cast<double>(lap_count(f, n, budget))) / static_cast<double>(n);
}

Rational eval_psi(const compacta::Scheme& a, const Rational& x) {
  if (x < 0 || x > 1) throw DomainError("eval_psi: argument outside [0,1]");
  if (x == 0 || x == 1) return x;
  const auto loc = compacta::locate(a, x);
  if (std::holds_alternative<compacta::InA>(loc)) return x;
  const auto& g = std::get<compacta::Gap>(loc);
  const Rational w = g.width();
  return g.lo + w * tent()((x - g.lo) / w);
}

PlMap psi_finite(const compacta::Scheme& a, std::size_t depth) {
  std::vector<Rational> ends = compacta::realize(a, depth);
  ends.insert(ends.begin(), Rational(0));
  ends.push_back(Rational(1));
  std::vector<Rational> xs{0}, ys{0};
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    const Rational& lo = ends[i];
    const Rational& hi = ends[i + 1];
    const Rational w = hi - lo;
    xs.insert(xs.end(), {lo + w / 3, lo + 2 * w / 3, hi});
    ys.insert(ys.end(), {hi, lo, hi});
  }
  return PlMap(std::move(xs), std::move(ys));
}

gamma::IntervalSquareRelation entropy_pairs_symbolic(const compacta::Scheme& a) {
  return gamma::IntervalSquareRelation{a};
}

CpeVerdict cpe_verdict(const compacta::Scheme& a) {
  const auto g = gamma::gamma_rank_symbolic(entropy_pairs_symbolic(a));
  return CpeVerdict{g.fixed.is_full(), g.rank, g.fixed.base};
}

CpeVerdict product_verdict(const CpeVerdict& v, std::size_t d) {
  if (d == 0) throw DomainError("product_verdict: d must be at least 1");
  return v;
}

}  // namespace lentropy::interval_maps
