#pragma once

// Brute-force reference implementations used only by the tests.

#include "lentropy/compacta.hpp"
#include "lentropy/relation.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

using lentropy::Rational;
using lentropy::compacta::Scheme;

// Distance from p to the nearest other point of the sorted set xs; -1 if none.
inline Rational nearest(const Rational& p, const std::vector<Rational>& xs) {
  Rational best = -1;
  auto it = std::lower_bound(xs.begin(), xs.end(), p);
  auto consider = [&](const Rational& y) {
    if (y == p) return;
    Rational d = lentropy::abs_diff(y, p);
    if (best < 0 || d < best) best = d;
  };
  if (it != xs.end()) {
    consider(*it);
    if (std::next(it) != xs.end()) consider(*std::next(it));
  }
  if (it != xs.begin()) consider(*std::prev(it));
  return best;
}

// Isolation cascade on finite approximations. A point of the level-j set at
// depth d survives to level j+1 when refining the approximation (d+2 -> d+4)
// brings a new neighbour strictly closer.
class IsolationCascade {
 public:
  explicit IsolationCascade(Scheme s) : s_(std::move(s)) {}

  const std::vector<Rational>& level(std::size_t j, std::size_t depth) {
    auto key = std::make_pair(j, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Rational> out;
    if (j == 0) {
      out = lentropy::compacta::realize(s_, depth);
    } else {
      const auto base = level(j - 1, depth);
      const auto coarse = level(j - 1, depth + 2);
      const auto fine = level(j - 1, depth + 4);
      for (const auto& p : base) {
        Rational a = nearest(p, coarse);
        Rational b = nearest(p, fine);
        if (b >= 0 && (a < 0 || b < a)) out.push_back(p);
      }
    }
    return memo_[key] = std::move(out);
  }

 private:
  Scheme s_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> memo_;
};

using Matrix = std::vector<std::vector<std::uint8_t>>;

inline Matrix to_matrix(const lentropy::BitRelation& r) {
  Matrix m(r.size(), std::vector<std::uint8_t>(r.size(), 0));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m[i][j] = r.test(i, j);
  return m;
}

inline void floyd_warshall(Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j) m[i][j] |= m[k][j];
}

// Square dilation by `band` grid steps in both coordinates.
inline Matrix dilate(const Matrix& m, std::size_t band) {
  const std::size_t n = m.size();
  Matrix rows(n, std::vector<std::uint8_t>(n, 0)), out(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j])
        for (std::size_t k = j >= band ? j - band : 0; k <= std::min(n - 1, j + band); ++k) rows[i][k] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i][j])
        for (std::size_t k = i >= band ? i - band : 0; k <= std::min(n - 1, i + band); ++k) out[k][j] = 1;
  return out;
}

// Gamma trace on a uniform grid, eps expressed as an index band.
inline std::vector<Matrix> grid_gamma_trace(Matrix e, std::size_t band) {
  const std::size_t n = e.size();
  std::vector<Matrix> trace{e};
  for (;;) {
    Matrix c = trace.back();
    floyd_warshall(c);
    for (std::size_t i = 0; i < n; ++i) c[i][i] = 1;
    Matrix off = c;
    for (std::size_t i = 0; i < n; ++i) off[i][i] = 0;
    Matrix next = dilate(off, band);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i][j] |= c[i][j];
    if (next == trace.back()) return trace;
    trace.push_back(std::move(next));
  }
}

inline bool within(const Matrix& a, const Matrix& b, std::size_t band) {
  const Matrix fat = dilate(b, band);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] && !fat[i][j]) return false;
  return true;
}

}  // namespace oracle
