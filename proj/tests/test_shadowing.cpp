#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lentropy/shadowing.hpp"
#include "lentropy/shifts.hpp"

using namespace lentropy;
using namespace lentropy::shadowing;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

using Kind = ShadowVerdict::Kind;

}  // namespace

TEST_CASE("pseudo-orbit and shadow checks") {
  auto sys = identity_grid(10);
  CHECK(is_pseudo_orbit(sys, {0, 1, 2, 3}, R(1, 10)));
  CHECK_FALSE(is_pseudo_orbit(sys, {0, 2}, R(1, 10)));
  CHECK(shadows(sys, 1, {0, 1, 2}, R(1, 10)));
  CHECK_FALSE(shadows(sys, 1, {0, 1, 3}, R(1, 10)));
  // prefixes of a shadowed sequence stay shadowed
  Sequence seq{3, 4, 5, 4, 3};
  REQUIRE(shadows(sys, 4, seq, R(1, 10)));
  for (std::size_t n = 1; n <= seq.size(); ++n) CHECK(shadows(sys, 4, Sequence(seq.begin(), seq.begin() + n), R(1, 10)));
}

TEST_CASE("identity drift is a shadowing failure") {
  auto sys = identity_grid(10);
  auto v = finite_shadowing_check(sys, R(1, 5), R(1, 10), 10, 1'000'000'000);
  REQUIRE(v.kind == Kind::fails);
  Sequence expect;
  for (Point i = 0; i <= 10; ++i) expect.push_back(i);
  CHECK(v.witness == expect);
  CHECK(is_pseudo_orbit(sys, v.witness, R(1, 10)));
  for (Point y = 0; y < sys.size; ++y) CHECK_FALSE(shadows(sys, y, v.witness, R(1, 5)));
}

TEST_CASE("trivial and contracting systems shadow") {
  auto shift = periodic_full_shift(2, ShiftMetric::discrete);
  CHECK(shift.size == 4);
  CHECK(finite_shadowing_check(shift, R(0), R(0), 6, 1'000'000).kind == Kind::holds_exhaustive);
  for (Point c : {Point{0}, Point{3}, Point{7}}) {
    auto sys = constant_grid(7, c);
    CHECK(finite_shadowing_check(sys, R(1, 7), R(1, 7), 10, 1'000'000'000).kind == Kind::holds_exhaustive);
  }
}

TEST_CASE("holds is monotone in p") {
  auto sys = tent_grid(6);
  for (std::size_t p = 2; p <= 6; ++p) {
    auto v = finite_shadowing_check(sys, R(1, 3), R(1, 6), p, 1'000'000'000);
    REQUIRE(v.kind != Kind::unknown_sampled);
    if (v.kind == Kind::holds_exhaustive) {
      for (std::size_t q = 2; q < p; ++q) {
        CHECK(finite_shadowing_check(sys, R(1, 3), R(1, 6), q, 1'000'000'000).kind == Kind::holds_exhaustive);
      }
    } else {
      CHECK(is_pseudo_orbit(sys, v.witness, R(1, 6)));
      CHECK(v.witness.size() == p + 1);
    }
  }
}

TEST_CASE("small budgets fall back to labelled sampling") {
  auto sys = identity_grid(10);
  auto v = finite_shadowing_check(sys, R(1, 2), R(1, 10), 10, 100, 7);
  CHECK(v.kind == Kind::unknown_sampled);
  CHECK(v.trials > 0);
  auto again = finite_shadowing_check(sys, R(1, 2), R(1, 10), 10, 100, 7);
  CHECK(again.trials == v.trials);
  CHECK_THROWS_AS(finite_shadowing_check(sys, R(1, 2), R(1, 10), 1, 100), DomainError);
  CHECK_THROWS_AS(finite_shadowing_check(periodic_full_shift(20), R(1, 2), R(1, 2), 3, 100), ResourceError);
}

TEST_CASE("weave outputs are pseudo-orbits") {
  auto sys = periodic_full_shift(48);
  auto in = full_shift_weave_input();
  REQUIRE_NOTHROW(check_weave_hypotheses(sys, in));
  const std::vector<std::vector<int>> patterns = {{1, 1, 1, 1}, {3, 3, 3, 3}, {1, 3, 1, 3}, {3, 1, 1, 3}};
  for (const auto& f : patterns) {
    auto seq = weave(sys, in, f);
    CHECK(seq.size() == 8 * f.size());
    CHECK(is_pseudo_orbit(sys, seq, in.delta));
  }
  // junctions of the four-segment block
  auto block = weave_block(sys, in, 1, 3);
  REQUIRE(block.size() == 9);
  for (std::size_t m : {2u, 4u, 6u, 8u}) CHECK(sys.metric(sys.map(block[m - 1]), block[m]) <= in.delta);
  CHECK_THROWS_AS(weave(sys, in, {1, 2}), ValidationError);
}

TEST_CASE("weave hypothesis failures are named") {
  auto sys = periodic_full_shift(48);
  auto in = full_shift_weave_input();
  in.table.y12 = in.a3;
  try {
    check_weave_hypotheses(sys, in);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("y(1,2)") != std::string::npos);
  }
}

TEST_CASE("independence from shadowing on the full shift") {
  auto sys = periodic_full_shift(48);
  auto in = full_shift_weave_input();
  for (std::size_t k : {3u, 6u}) {
    auto r = independence_from_shadowing(sys, R(1, 2), k, in);
    CHECK(r.verified);
    CHECK(r.patterns_checked == (std::size_t{1} << k));
    REQUIRE(r.positions.size() == k);
    CHECK(r.positions.back() == 8 * (k - 1));
    // eps-balls at 1/2 are the one-symbol cylinders [0] and [1]
    std::vector<std::int64_t> f(r.positions.begin(), r.positions.end());
    CHECK(shifts::is_independence_set(shifts::full_shift(2), f, {"0", 0}, {"1", 0}));
  }
}

TEST_CASE("a single cycle has no independence") {
  auto sys = cycle_grid(2);
  WeaveInput in;
  in.a1 = 0;
  in.a2 = 0;
  in.a3 = 1;
  in.table = WeaveTable{0, 0, 0, 0, 1, 0, 0, 0};
  in.delta = R(2);
  auto r = independence_from_shadowing(sys, R(1, 4), 2, in);
  CHECK_FALSE(r.verified);
  CHECK(r.failing_pattern.size() == 2);
}
