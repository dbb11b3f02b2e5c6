#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lentropy/construction.hpp"

using namespace lentropy;
using namespace lentropy::compacta;
using namespace lentropy::construction;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

CoordinateModel acc_model(TailMode tail = TailMode::open) {
  return CoordinateModel::make(accumulation_example(), {R(1, 4), R(7, 16), R(31, 64), R(1, 2)}, {"s0", "s1"}, tail);
}

Scheme cantor() { return Scheme::perfect(R(1, 4), R(3, 4)); }

CoordinateModel cantor_model(TailMode tail) {
  return CoordinateModel::make(cantor(), {R(11, 36), R(5, 12), R(3, 4)}, {"s0", "s1"}, tail);
}

// D_a straight from its definition, one pair at a time.
BitRelation d_oracle(const CoordinateModel& m, std::size_t i, bool edges) {
  const std::size_t k = m.coords().size();
  BitRelation out(m.size());
  for (std::size_t y = 0; y < m.size(); ++y) {
    for (std::size_t y2 = 0; y2 < m.size(); ++y2) {
      bool ok = m.tail(y) == m.tail(y2);
      if (m.tail_mode() == TailMode::immutable) ok = ok && m.tail(y) == m.tail_class(i);
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) ok = ok && m.digit(y, j) == m.digit(y2, j);
        const Rational& c = m.coords()[j];
        if (c >= m.gap(i).hi) {
          const Value& want = m.values()[m.digit(y, j)];
          ok = ok && want.point && *want.point == t_of(m.scheme(), m.gap(i), c).value;
        }
      }
      if (edges) ok = ok && m.related(m.digit(y, i), m.digit(y2, i));
      if (ok) out.set(y, y2);
    }
  }
  return out;
}

bool agree_off(const CoordinateModel& m, std::size_t x, std::size_t y, CoordMask mask) {
  if (m.tail(x) != m.tail(y)) return false;
  for (std::size_t i = 0; i < m.coords().size(); ++i) {
    if (!(mask >> i & 1) && m.digit(x, i) != m.digit(y, i)) return false;
  }
  return true;
}

BitRelation box_oracle(const CoordinateModel& m, CoordMask mask, const BitRelation& rel) {
  BitRelation out(m.size());
  for (std::size_t y = 0; y < m.size(); ++y) {
    rel.for_each_in_row(y, [&](std::size_t y2) {
      for (std::size_t w = 0; w < m.size(); ++w) {
        if (!agree_off(m, w, y, mask)) continue;
        for (std::size_t w2 = 0; w2 < m.size(); ++w2) {
          if (agree_off(m, w2, y2, mask)) out.set(w, w2);
        }
      }
    });
  }
  return out;
}

}  // namespace

TEST_CASE("m, n and t examples") {
  const Scheme acc = accumulation_example();
  CHECK(m_of(acc, R(7, 16)) == MValue{R(1, 2), false});
  const MValue edge = m_of(Scheme::points({R(1, 4), R(1, 2)}), R(1, 4));
  CHECK(edge.value == 1);
  CHECK(edge.boundary);
  CHECK(m_of(cantor(), R(5, 12)) == MValue{R(5, 12), false});
  CHECK_THROWS_AS(m_of(acc, R(1, 3)), DomainError);

  const Gap i{R(1, 4), R(7, 16)};
  CHECK(n_of(acc, i, R(31, 64)) == R(7, 16));
  CHECK(n_of(acc, i, R(7, 16)) == R(7, 16));
  CHECK(n_of(acc, i, R(1, 2)) == R(1, 2));
  CHECK_THROWS_AS(n_of(acc, i, R(1, 4)), DomainError);
  CHECK(t_of(acc, i, R(31, 64)).value == R(1, 2));

  // core point between b and c dominates
  const Scheme u = Scheme::union_of({Scheme::points({R(1, 8)}), cantor()});
  CHECK(n_of(u, gap_right_of(u, R(1, 8)), R(5, 12)) == R(1, 4));
  // perfect core: t is r(I) past the core gap
  const Gap core_gap{R(5, 12), R(7, 12)};
  for (const auto& c : left_endpoints(cantor(), 12)) {
    if (c >= R(7, 12)) CHECK(t_of(cantor(), core_gap, c).value == R(7, 12));
  }
}

TEST_CASE("t values lie in A above r(I)") {
  for (const Scheme& s : {accumulation_example(), nested_accumulation(3), cantor(),
                          Scheme::union_of({Scheme::points({R(1, 8)}), cantor()})}) {
    const auto ends = left_endpoints(s, 12);
    for (const auto& a : ends) {
      const Gap g = gap_right_of(s, a);
      for (const auto& c : ends) {
        if (c < g.hi) continue;
        const MValue t = t_of(s, g, c);
        CHECK(g.hi <= t.value);
        CHECK((t.boundary || contains(s, t.value)));
      }
    }
  }
}

TEST_CASE("model validation") {
  const Scheme acc = accumulation_example();
  CHECK_THROWS_AS(CoordinateModel::make(acc, {R(1, 3), R(1, 2)}), ValidationError);
  CHECK_THROWS_AS(CoordinateModel::make(acc, {R(1, 4)}), ValidationError);
  CHECK_THROWS_AS(CoordinateModel::make(acc, {R(7, 16), R(1, 4), R(1, 2)}), ValidationError);
  CHECK_THROWS_AS(CoordinateModel::make(acc, {R(1, 2)}, {"s0", "s0"}), ValidationError);
  CHECK_THROWS_AS(CoordinateModel::make(acc, {R(1, 2)}, {"a", "b", "c", "d", "e", "f", "g"}), ValidationError);
  CHECK_THROWS_AS(CoordinateModel::make(nested_accumulation(4), left_endpoints(nested_accumulation(4), 6),
                                        {"s0", "s1", "s2", "s3"}, TailMode::immutable),
                  ResourceError);
  const auto m = acc_model();
  CHECK(m.size() == 256);
  REQUIRE(m.values().size() == 4);
  CHECK(to_string(m.values()[0]) == "1/2");
  CHECK(to_string(m.values()[1]) == "1/1");
  CHECK(m.t_index(0, 1) == std::optional<std::size_t>(0));
  CHECK_FALSE(m.t_index(1, 0).has_value());
}

TEST_CASE("relations match their definitions") {
  for (const auto& m : {acc_model(), acc_model(TailMode::immutable), cantor_model(TailMode::immutable),
                        CoordinateModel::make(accumulation_example(), {R(1, 4), R(1, 2)}, {"s0", "s1"},
                                              TailMode::open, true)}) {
    for (std::size_t i = 0; i < m.coords().size(); ++i) {
      CHECK(build_relation(m, RelationKind::D_a, i) == d_oracle(m, i, false));
      CHECK(build_relation(m, RelationKind::B_a, i) == d_oracle(m, i, true));
    }
  }
}

TEST_CASE("D_a examples") {
  const auto single = CoordinateModel::make(Scheme::points({R(1, 2)}), {R(1, 2)});
  CHECK(build_relation(single, RelationKind::D_a, 0).is_full());
  const auto bb = build_relation(single, RelationKind::B_a, 0);
  CHECK(bb.count() == 2);  // only s0-s1 and back

  const auto m = acc_model();
  const auto d = build_relation(m, RelationKind::D_a, 0);
  d.is_symmetric();
  for (std::size_t y = 0; y < m.size(); ++y) {
    d.for_each_in_row(y, [&](std::size_t) { CHECK(m.digit(y, 1) == *m.t_index(0, 1)); });
  }
  CHECK(BitRelation::diagonal(m.size()).subset_of(build_relation(m, RelationKind::D_A)));
  CHECK(build_relation(m, RelationKind::B_A).subset_of(build_relation(m, RelationKind::D_A)));
}

TEST_CASE("box examples and oracle") {
  const auto m = acc_model();
  const auto d0 = build_relation(m, RelationKind::D_a, 0);
  CHECK(box(m, 0, d0) == d0);
  CHECK(box(m, 0b1111, d0).is_full());
  CHECK(box(m, 0b0001, d0) == d0);
  const auto small = CoordinateModel::make(accumulation_example(), {R(1, 4), R(7, 16), R(1, 2)});
  const auto d = build_relation(small, RelationKind::D_a, 1);
  for (CoordMask mask = 0; mask < 8; ++mask) CHECK(box(small, mask, d) == box_oracle(small, mask, d));
}

TEST_CASE("level groups and E sets") {
  const auto m = acc_model();
  const auto g0 = level_groups(m, 0);
  CHECK(g0.size() == 4);
  const auto g1 = level_groups(m, 1);
  REQUIRE(g1.size() == 2);
  CHECK(g1[0].mask == 0b0111);
  CHECK(g1[1].mask == 0b1000);
  CHECK(e_sets(m, 0) == (build_relation(m, RelationKind::D_A) | BitRelation::diagonal(m.size())));
  CHECK_FALSE(e_sets(m, 1).is_full());
  CHECK(e_sets(m, 2).is_full());

  const auto c = cantor_model(TailMode::open);
  CHECK_FALSE(e_sets(c, 0).is_full());
  CHECK(level_groups(c, 0).size() == 3);
}

TEST_CASE("closure") {
  const auto d = BitRelation::diagonal(10);
  CHECK(closure_plus(d) == d);
  const auto m = acc_model();
  const auto e = e_interval(m, 0b0111);
  CHECK(closure_plus(e) == e);
  const auto g = gamma_finite(build_relation(m, RelationKind::D_A));
  CHECK(gamma_finite(g) == g);
}

TEST_CASE("property checks pass on countable and uncountable models") {
  for (const auto& m : {acc_model(), acc_model(TailMode::immutable), cantor_model(TailMode::open),
                        cantor_model(TailMode::immutable),
                        CoordinateModel::make(nested_accumulation(3), left_endpoints(nested_accumulation(3), 4)),
                        CoordinateModel::make(Scheme::union_of({Scheme::points({R(1, 8)}), cantor()}),
                                              {R(1, 8), R(5, 12), R(3, 4)}, {"s0", "s1"}, TailMode::immutable),
                        CoordinateModel::make(accumulation_example(), {R(1, 4), R(7, 16), R(1, 2)}, {"s0", "s1"},
                                              TailMode::open, true)}) {
    const auto r = check_properties(m);
    INFO(model_to_json(m).dump());
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("uncountable separation needs the immutable tail") {
  const auto imm = cantor_model(TailMode::immutable);
  CHECK_FALSE(gamma_finite(build_relation(imm, RelationKind::D_A)).is_full());
  const auto r = check_properties(imm);
  REQUIRE(r.find("uncountable_separation") != nullptr);
  CHECK(r.find("uncountable_separation")->detail.empty());
  CHECK(r.find("e_top_full")->detail.rfind("vacuous", 0) == 0);
}

TEST_CASE("largest model stays fast") {
  const Scheme s = nested_accumulation(4);
  const auto m = CoordinateModel::make(s, left_endpoints(s, 6), {"s0", "s1", "s2", "s3"});
  CHECK(m.size() == 7776);
  CHECK(m.size() <= CoordinateModel::max_points);
  CHECK(check_properties(m).all_passed());
}

TEST_CASE("model json") {
  const auto m = acc_model(TailMode::immutable);
  const json j = model_to_json(m);
  CHECK(j["L"][1] == "7/16");
  CHECK(j["tail_mode"] == "immutable");
  const auto back = model_from_json(j);
  CHECK(back.size() == m.size());
  CHECK(model_to_json(back) == j);
  json bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(model_from_json(bad), ValidationError);
  bad = j;
  bad["tail_mode"] = "closed";
  CHECK_THROWS_AS(model_from_json(bad), ValidationError);
  const json rep = report_to_json(check_properties(m));
  CHECK(rep["all_passed"] == true);
}
