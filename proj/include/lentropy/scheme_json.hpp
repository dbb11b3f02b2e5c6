#pragma once

// JSON encoding of schemes: {"kind": "points"|"acc"|"union"|"perfect", ...}
// with every rational written as a "p/q" string. Unknown fields are rejected.

#include "lentropy/compacta.hpp"

#include <json.hpp>

namespace lentropy {

using json = nlohmann::json;

json rational_to_json(const Rational& r);
/// Accepts "p/q" strings and plain integers.
Rational rational_from_json(const json& j, const char* what);

json scheme_to_json(const compacta::Scheme& s);
/// null encodes the empty set.
json scheme_to_json(const compacta::MaybeScheme& s);

compacta::Scheme scheme_from_json(const json& j);
compacta::MaybeScheme maybe_scheme_from_json(const json& j);

/// Throws ValidationError if `j` is not an object or has a key outside `allowed`.
void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* what);

}  // namespace lentropy
