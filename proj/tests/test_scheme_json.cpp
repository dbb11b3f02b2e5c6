#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lentropy/scheme_json.hpp"

using namespace lentropy;
using namespace lentropy::compacta;

TEST_CASE("round trip is exact") {
  std::vector<Scheme> schemes = {
      nested_accumulation(3),
      Scheme::perfect(make_rational(1, 4), make_rational(3, 4)),
      Scheme::union_of({Scheme::points({make_rational(1, 8)}),
                        Scheme::acc(make_rational(3, 4), Side::above, make_rational(1, 3), make_rational(1, 16),
                                    Scheme::perfect(make_rational(1, 4), make_rational(3, 4)))}),
  };
  for (const auto& s : schemes) {
    const std::string text = scheme_to_json(s).dump();
    const Scheme back = scheme_from_json(json::parse(text));
    CHECK(back == s);
    CHECK(scheme_to_json(back).dump() == text);
  }
}

TEST_CASE("literal form") {
  CHECK(scheme_to_json(accumulation_example()).dump() ==
        R"({"body":{"kind":"points","points":["1/2"]},"kind":"acc","ratio":"1/4","side":"below","target":"1/2","window":"1/4"})");
  CHECK(scheme_to_json(MaybeScheme()).is_null());
}

TEST_CASE("rejects malformed documents") {
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"kind":"points","points":["1/2"],"extra":1})")),
                  ValidationError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"kind":"blob"})")), ValidationError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"kind":"points","points":["1/0"]})")), ValidationError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"kind":"perfect","lo":"1/2"})")), ValidationError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"kind":"union","parts":[
      {"kind":"perfect","lo":"1/4","hi":"1/2"},{"kind":"points","points":["1/3"]}]})")),
                  ValidationError);
}

TEST_CASE("rationals are canonicalised") {
  auto s = scheme_from_json(json::parse(R"({"kind":"points","points":["1/8","2/4"]})"));
  CHECK(scheme_to_json(s)["points"][1] == "1/2");
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"kind":"points","points":[1]})")), ValidationError);
}
