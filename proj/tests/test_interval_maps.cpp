#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lentropy/interval_maps.hpp"

#include <cmath>

using namespace lentropy;
using namespace lentropy::interval_maps;
using compacta::Scheme;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

// Laps of f^n counted by brute force: sample f^n on a fine rational grid by
// repeated evaluation and count direction changes.
std::size_t sampled_laps(const PlMap& f, std::size_t n, long samples) {
  std::size_t count = 1;
  int dir = 0;
  Rational prev;
  for (long i = 0; i <= samples; ++i) {
    Rational y = R(i, samples);
    for (std::size_t k = 0; k < n; ++k) y = f(y);
    if (i > 0 && y != prev) {
      int s = y > prev ? 1 : -1;
      if (dir != 0 && s != dir) ++count;
      dir = s;
    }
    prev = y;
  }
  return count;
}

}  // namespace

TEST_CASE("tent evaluation") {
  const PlMap t = tent();
  CHECK(t(R(1, 3)) == 1);
  CHECK(t(R(1, 2)) == R(1, 2));
  CHECK(t(R(5, 6)) == R(1, 2));
  CHECK(t.breakpoints() == std::vector<Rational>{0, R(1, 3), R(2, 3), 1});
  CHECK(t.values() == std::vector<Rational>{0, 1, 0, 1});
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(PlMap({0, R(1, 2)}, {0, 1}), ValidationError);
  CHECK_THROWS_AS(PlMap({0, 1}, {0, 2}), ValidationError);
  CHECK_THROWS_AS(PlMap({0, R(1, 2), R(1, 2), 1}, {0, 1, 1, 0}), ValidationError);
}

TEST_CASE("lap counts") {
  CHECK(lap_count(tent(), 1) == 3);
  CHECK(lap_count(tent(), 2) == 9);
  long p = 1;
  for (std::size_t n = 1; n <= 10; ++n) {
    p *= 3;
    CHECK(lap_count(tent(), n) == static_cast<std::size_t>(p));
    CHECK(std::abs(entropy_estimate(tent(), n) - std::log(3.0)) < 1e-12);
  }
  CHECK(lap_count(PlMap::identity(), 5) == 1);
  CHECK(entropy_estimate(PlMap::identity(), 3) == 0.0);
  CHECK(sampled_laps(tent(), 3, 3 * 27 * 8) == 27);
}

TEST_CASE("composition is exact") {
  const PlMap f = psi_finite(Scheme::points({R(1, 4), R(1, 2)}), 0);
  const PlMap g = iterate(f, 3);
  for (long i = 0; i <= 97; ++i) {
    const Rational x = R(i, 97);
    CHECK(g(x) == f(f(f(x))));
  }
  CHECK_THROWS_AS(iterate(tent(), 8, 1000), ResourceError);
}

TEST_CASE("psi evaluation") {
  const Scheme p = Scheme::points({R(1, 2)});
  CHECK(eval_psi(p, R(1, 2)) == R(1, 2));
  CHECK(eval_psi(p, R(1, 6)) == R(1, 2));
  CHECK(eval_psi(p, R(3, 4)) == R(3, 4));
  CHECK(eval_psi(p, 0) == 0);
  CHECK(eval_psi(p, 1) == 1);
}

TEST_CASE("psi invariants") {
  std::vector<Scheme> schemes = {compacta::nested_accumulation(3), Scheme::perfect(R(1, 4), R(3, 4)),
                                 Scheme::union_of({Scheme::points({R(1, 8)}), compacta::nested_accumulation(2)})};
  for (const auto& s : schemes) {
    for (const auto& a : compacta::realize(s, 3)) CHECK(eval_psi(s, a) == a);
    for (const auto& g : compacta::contiguous_intervals(s, 12)) {
      CHECK(eval_psi(s, g.lo) == g.lo);
      CHECK(eval_psi(s, g.hi) == g.hi);
      const Rational h = g.width() / 7;
      if (g.lo_in_a) CHECK(abs_diff(eval_psi(s, g.lo + h), g.lo) <= 3 * h);
      if (g.hi_in_a) CHECK(abs_diff(eval_psi(s, g.hi - h), g.hi) <= 3 * h);
    }
  }
}

TEST_CASE("psi_finite matches eval_psi of the truncation") {
  const PlMap two = psi_finite(Scheme::points({R(1, 2)}), 3);
  CHECK(two.breakpoints().size() == 7);
  CHECK(two == psi_finite(Scheme::points({R(1, 2)}), 0));
  CHECK(psi_finite(Scheme::points({R(1, 4), R(1, 2)}), 2).pieces() == 9);

  const Scheme s = compacta::nested_accumulation(2);
  const PlMap f = psi_finite(s, 3);
  const Scheme truncated = Scheme::points(compacta::realize(s, 3));
  for (long i = 0; i <= 200; ++i) CHECK(f(R(i, 200)) == eval_psi(truncated, R(i, 200)));
}

TEST_CASE("psi lap structure") {
  const PlMap f = psi_finite(Scheme::points({R(1, 2)}), 0);
  // Two pasted tents: the increasing end of one joins the increasing start of the next.
  CHECK(lap_count(f, 1) == 5);
  long p = 1;
  for (std::size_t n = 1; n <= 6; ++n) {
    p *= 3;
    CHECK(lap_count(f, n) == static_cast<std::size_t>(2 * p - 1));
  }
  CHECK(sampled_laps(f, 2, 2 * 9 * 6) == 17);
  const double e = entropy_estimate(f, 10);
  CHECK(e >= std::log(3.0));
  CHECK(e <= std::log(3.0) + std::log(2.0) / 10);
}

TEST_CASE("entropy pairs and verdicts") {
  const Scheme p = Scheme::points({R(1, 2)});
  const Scheme perfect = Scheme::perfect(R(1, 4), R(3, 4));
  const Scheme u = Scheme::union_of({Scheme::points({R(1, 8)}), perfect});
  CHECK(entropy_pairs_symbolic(p).base == compacta::MaybeScheme(p));
  CHECK(entropy_pairs_symbolic(perfect).base == compacta::MaybeScheme(perfect));
  CHECK(entropy_pairs_symbolic(u).base == compacta::MaybeScheme(u));

  CHECK(cpe_verdict(p).cpe);
  CHECK(cpe_verdict(p).rank == 1);
  auto np = cpe_verdict(perfect);
  CHECK_FALSE(np.cpe);
  CHECK(np.witness == compacta::MaybeScheme(perfect));
  auto n3 = cpe_verdict(compacta::nested_accumulation(3));
  CHECK(n3.cpe);
  CHECK(n3.rank == 3);
  CHECK(cpe_verdict(u).witness == compacta::MaybeScheme(perfect));

  for (const auto& s : {p, perfect, u}) {
    auto v = cpe_verdict(s);
    CHECK(v.cpe == gamma::gamma_rank_symbolic(entropy_pairs_symbolic(s)).fixed.is_full());
    CHECK(product_verdict(v, 3) == v);
  }
}
