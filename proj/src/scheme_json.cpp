#include "lentropy/scheme_json.hpp"

#include <algorithm>
#include <string>

namespace lentropy {

using compacta::Scheme;

json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ValidationError(std::string(what) + ": expected a \"p/q\" rational string");
}

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ValidationError(std::string(what) + ": unknown field '" + key + "'");
  }
}

namespace {

const json& field(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

json scheme_to_json(const Scheme& s) {
  json out;
  switch (s.kind()) {
    case Scheme::Kind::points: {
      out["kind"] = "points";
      json pts = json::array();
      for (const auto& v : s.as_points().values) pts.push_back(rational_to_json(v));
      out["points"] = pts;
      break;
    }
    case Scheme::Kind::acc: {
      const auto& a = s.as_acc();
      out["kind"] = "acc";
      out["target"] = rational_to_json(a.target);
      out["side"] = a.side == compacta::Side::below ? "below" : "above";
      out["ratio"] = rational_to_json(a.ratio);
      out["window"] = rational_to_json(a.window);
      out["body"] = scheme_to_json(a.body);
      break;
    }
    case Scheme::Kind::union_: {
      out["kind"] = "union";
      json parts = json::array();
      for (const auto& p : s.as_union().parts) parts.push_back(scheme_to_json(p));
      out["parts"] = parts;
      break;
    }
    case Scheme::Kind::perfect:
      out["kind"] = "perfect";
      out["lo"] = rational_to_json(s.as_perfect().lo);
      out["hi"] = rational_to_json(s.as_perfect().hi);
      break;
  }
  return out;
}

json scheme_to_json(const compacta::MaybeScheme& s) { return s ? scheme_to_json(*s) : json(nullptr); }

Scheme scheme_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scheme: expected an object");
  const json& kind = field(j, "kind", "scheme");
  if (!kind.is_string()) throw ValidationError("scheme: 'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "points") {
    require_keys(j, {"kind", "points"}, "points");
    const json& pts = field(j, "points", "points");
    if (!pts.is_array()) throw ValidationError("points: 'points' must be an array");
    std::vector<Rational> values;
    for (const auto& p : pts) values.push_back(rational_from_json(p, "points"));
    return Scheme::points(std::move(values));
  }
  if (k == "acc") {
    require_keys(j, {"kind", "target", "side", "ratio", "window", "body"}, "acc");
    const json& side = field(j, "side", "acc");
    if (side != "below" && side != "above") throw ValidationError("acc: 'side' must be below or above");
    return Scheme::acc(rational_from_json(field(j, "target", "acc"), "acc.target"),
                       side == "below" ? compacta::Side::below : compacta::Side::above,
                       rational_from_json(field(j, "ratio", "acc"), "acc.ratio"),
                       rational_from_json(field(j, "window", "acc"), "acc.window"),
                       scheme_from_json(field(j, "body", "acc")));
  }
  if (k == "union") {
    require_keys(j, {"kind", "parts"}, "union");
    const json& parts = field(j, "parts", "union");
    if (!parts.is_array()) throw ValidationError("union: 'parts' must be an array");
    std::vector<Scheme> out;
    for (const auto& p : parts) out.push_back(scheme_from_json(p));
    return Scheme::union_of(std::move(out));
  }
  if (k == "perfect") {
    require_keys(j, {"kind", "lo", "hi"}, "perfect");
    return Scheme::perfect(rational_from_json(field(j, "lo", "perfect"), "perfect.lo"),
                           rational_from_json(field(j, "hi", "perfect"), "perfect.hi"));
  }
  throw ValidationError("scheme: unknown kind '" + k + "'");
}

compacta::MaybeScheme maybe_scheme_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return scheme_from_json(j);
}

}  // namespace lentropy
