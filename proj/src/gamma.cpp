#include "lentropy/gamma.hpp"

#include <algorithm>

namespace lentropy::gamma {

FiniteSpace FiniteSpace::grid(std::size_t grid_n) {
  FiniteSpace s;
  s.coords.reserve(grid_n + 1);
  for (std::size_t i = 0; i <= grid_n; ++i) s.coords.emplace_back(Rational(static_cast<long>(i), static_cast<long>(grid_n)));
  for (auto& c : s.coords) c.canonicalize();
  return s;
}

BitRelation neighbourhood(const FiniteSpace& space, const Rational& eps) {
  const std::size_t n = space.size();
  BitRelation out(n);
  if (std::is_sorted(space.coords.begin(), space.coords.end())) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n && space.coords[j] - space.coords[i] <= eps; ++j) {
        out.set(i, j);
        out.set(j, i);
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (space.distance(i, j) <= eps) out.set(i, j);
    }
  }
  return out;
}

BitRelation fatten(const BitRelation& source, const BitRelation& nbhd) {
  return compose(nbhd, compose(source, nbhd));
}

namespace {

BitRelation step_with(const BitRelation& e, const BitRelation& diag, const BitRelation& nbhd) {
  BitRelation closed = transitive_closure(e) | diag;
  BitRelation out = fatten(closed.minus(diag), nbhd);
  out |= closed;
  return out;
}

}  // namespace

BitRelation gamma_step_finite(const FiniteSpace& space, const BitRelation& e, const Rational& eps) {
  return step_with(e, BitRelation::diagonal(space.size()), neighbourhood(space, eps));
}

FiniteRank gamma_rank_finite(const FiniteSpace& space, BitRelation e, const Rational& eps, std::size_t max_steps) {
  FiniteRank out;
  if (!e.is_symmetric()) {
    e |= e.transpose();
    out.symmetrized = true;
  }
  const BitRelation diag = BitRelation::diagonal(space.size());
  const BitRelation nbhd = neighbourhood(space, eps);
  out.trace.push_back(std::move(e));
  for (std::size_t step = 0; step < max_steps; ++step) {
    const BitRelation& cur = out.trace.back();
    BitRelation next = step_with(cur, diag, nbhd);
    if (next == cur) {
      out.rank = out.trace.size() - 1;
      out.fixed = cur;
      return out;
    }
    out.trace.push_back(std::move(next));
  }
  throw ResourceError("gamma_rank_finite: no fixed point within step budget");
}

IntervalSquareRelation gamma_step_symbolic(const IntervalSquareRelation& r) {
  if (!r.base) return r;
  return IntervalSquareRelation{compacta::derivative(*r.base)};
}

SymbolicRank gamma_rank_symbolic(const IntervalSquareRelation& r) {
  if (!r.base) return SymbolicRank{0, r};
  auto cb = compacta::cb_rank(*r.base);
  return SymbolicRank{cb.rank, IntervalSquareRelation{cb.core}};
}

BitRelation discretize(const IntervalSquareRelation& r, std::size_t grid_n) {
  const std::size_t n = grid_n + 1;
  if (r.is_full()) return BitRelation::full(n);
  const compacta::Scheme& a = *r.base;
  BitRelation out = BitRelation::diagonal(n);
  const Rational step(1, static_cast<long>(grid_n));

  // Consecutive grid points lie in one gap closure iff the open segment
  // between them misses A; a block is a maximal run with the same gap.
  std::optional<compacta::Gap> current;
  std::size_t block_start = 0;
  for (std::size_t i = 0; i < grid_n; ++i) {
    const Rational lo = step * static_cast<long>(i);
    const Rational hi = step * static_cast<long>(i + 1);
    std::optional<compacta::Gap> g;
    const auto loc = compacta::locate(a, (lo + hi) / 2);
    if (const auto* gap = std::get_if<compacta::Gap>(&loc); gap && gap->lo <= lo && hi <= gap->hi) g = *gap;
    if (g != current) {
      if (current) out.set_block(block_start, i);
      current = g;
      block_start = i;
    }
  }
  if (current) out.set_block(block_start, grid_n);
  return out;
}

CrossReport cross_validate(const compacta::Scheme& a, std::size_t grid_n, const Rational& eps) {
  if (grid_n < 16) throw ValidationError("cross_validate: grid_n must be at least 16");
  if (eps < Rational(2, static_cast<long>(grid_n))) throw ValidationError("cross_validate: eps must be at least 2/grid_n");

  const FiniteSpace space = FiniteSpace::grid(grid_n);
  const IntervalSquareRelation rel{a};
  const SymbolicRank sym = gamma_rank_symbolic(rel);
  FiniteRank fin = gamma_rank_finite(space, discretize(rel, grid_n), eps);

  CrossReport out;
  out.symbolic_rank = sym.rank;
  out.finite_rank = fin.rank;
  out.symbolic_full = sym.fixed.is_full();
  out.finite_full = fin.fixed.is_full();
  for (const auto& t : fin.trace) out.finite_counts.push_back(t.count());

  const BitRelation nbhd = neighbourhood(space, eps);
  IntervalSquareRelation level = rel;
  const std::size_t top = std::max(sym.rank, fin.rank);
  for (std::size_t k = 0; k <= top; ++k) {
    const BitRelation g = discretize(level, grid_n);
    const BitRelation& d = fin.trace[std::min(k, fin.rank)];
    if (!d.subset_of(fatten(g, nbhd)) || !g.subset_of(fatten(d, nbhd))) {
      out.first_unresolved = k;
      break;
    }
    level = gamma_step_symbolic(level);
  }
  if (!out.first_unresolved && sym.rank != fin.rank) out.first_unresolved = std::min(sym.rank, fin.rank) + 1;
  out.agree = !out.first_unresolved && out.symbolic_full == out.finite_full;
  out.unresolvable = out.first_unresolved && *out.first_unresolved <= 1;
  return out;
}

}  // namespace lentropy::gamma
