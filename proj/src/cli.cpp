#include "lentropy/cli.hpp"

#include "lentropy/construction.hpp"
#include "lentropy/gamma.hpp"
#include "lentropy/interval_maps.hpp"
#include "lentropy/report.hpp"
#include "lentropy/shadowing.hpp"
#include "lentropy/shifts.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace lentropy::cli {

namespace {

using compacta::Scheme;
using report::Cell;

struct Result {
  json body = json::object();
  std::string csv;
  std::string svg;
};

using Handler = std::function<Result(const json&, const Options&)>;

void require_schema(const json& doc, std::initializer_list<const char*> keys, const char* what) {
  require_keys(doc, keys, what);
  if (!doc.contains("schema") || doc["schema"] != "v1") throw ValidationError(std::string(what) + ": schema must be \"v1\"");
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("missing field: ") + key);
  return doc[key];
}

std::uint64_t count_field(const json& doc, const char* key, std::optional<std::uint64_t> fallback = std::nullopt) {
  if (!doc.contains(key)) {
    if (fallback) return *fallback;
    throw ValidationError(std::string("missing field: ") + key);
  }
  const json& v = doc[key];
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ValidationError(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Rational rational_field(const json& doc, const char* key, std::optional<Rational> fallback = std::nullopt) {
  if (!doc.contains(key)) {
    if (fallback) return *fallback;
    throw ValidationError(std::string("missing field: ") + key);
  }
  return rational_from_json(doc[key], key);
}

std::string text(const Rational& r) { return format_rational(r); }

// --- scheme commands --------------------------------------------------------

Result cb_rank_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "scheme", "depth"}, "cb-rank");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  const std::size_t depth = count_field(doc, "depth", 4);
  const auto r = compacta::cb_rank(s);
  Result out;
  out.body["rank"] = r.rank;
  out.body["countable"] = !r.core.has_value();
  out.body["core"] = scheme_to_json(r.core);
  json levels = json::array();
  std::vector<std::vector<Cell>> rows;
  compacta::MaybeScheme level = s;
  for (std::size_t k = 0; k <= r.rank; ++k) {
    levels.push_back(scheme_to_json(level));
    const auto pts = level ? compacta::realize(*level, depth).size() : 0;
    rows.push_back({static_cast<std::int64_t>(k), compacta::to_string(level), static_cast<std::int64_t>(pts)});
    level = compacta::derivative(level);
  }
  out.body["levels"] = levels;
  out.csv = report::to_csv({"level", "scheme", "realized_points"}, rows);
  out.svg = report::svg_cb_cascade(s, depth);
  return out;
}

Result gamma_rank_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "scheme", "grid_n", "eps"}, "gamma-rank");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  const std::size_t grid_n = count_field(doc, "grid_n", 64);
  const Rational eps = rational_field(doc, "eps", Rational(1, 32));
  if (grid_n < 2 || grid_n > 4096) throw ValidationError("grid_n must be in [2,4096]");
  if (eps <= 0) throw ValidationError("eps must be positive");
  const gamma::IntervalSquareRelation rel{s};
  const auto sym = gamma::gamma_rank_symbolic(rel);
  const auto fin = gamma::gamma_rank_finite(gamma::FiniteSpace::grid(grid_n), gamma::discretize(rel, grid_n), eps);
  Result out;
  out.body["symbolic_rank"] = sym.rank;
  out.body["symbolic_full"] = sym.fixed.is_full();
  out.body["finite_rank"] = fin.rank;
  out.body["finite_full"] = fin.fixed.is_full();
  std::vector<std::size_t> counts;
  std::vector<std::vector<Cell>> rows;
  for (std::size_t k = 0; k < fin.trace.size(); ++k) {
    counts.push_back(fin.trace[k].count());
    rows.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(counts.back())});
  }
  out.body["trace_counts"] = counts;
  out.csv = report::to_csv({"step", "pairs"}, rows);
  out.svg = report::svg_step_chart("Gamma trace on the " + std::to_string(grid_n + 1) + "-point grid", counts);
  return out;
}

Result psi_build_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "scheme", "depth"}, "psi-build");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  const auto f = interval_maps::psi_finite(s, count_field(doc, "depth", 3));
  Result out;
  json xs = json::array(), ys = json::array();
  std::vector<std::vector<Cell>> rows;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    xs.push_back(text(f.breakpoints()[i]));
    ys.push_back(text(f.values()[i]));
    rows.push_back({text(f.breakpoints()[i]), text(f.values()[i])});
  }
  out.body["breakpoints"] = xs;
  out.body["values"] = ys;
  out.body["pieces"] = f.pieces();
  out.body["laps"] = interval_maps::laps(f);
  out.csv = report::to_csv({"x", "y"}, rows);
  return out;
}

Result psi_entropy_cmd(const json& doc, const Options& opt) {
  require_schema(doc, {"schema", "scheme", "depth", "n", "budget"}, "psi-entropy");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  const auto f = interval_maps::psi_finite(s, count_field(doc, "depth", 3));
  const std::size_t n = count_field(doc, "n");
  if (n == 0 || n > 64) throw ValidationError("n must be in [1,64]");
  const std::size_t budget =
      opt.budget ? *opt.budget : count_field(doc, "budget", interval_maps::default_breakpoint_budget);
  Result out;
  json laps = json::array();
  std::vector<std::vector<Cell>> rows;
  interval_maps::PlMap g = f;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) g = interval_maps::compose(f, g, budget);
    const auto l = interval_maps::laps(g);
    laps.push_back(l);
    rows.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(l)});
  }
  out.body["laps"] = laps;
  out.body["budget"] = budget;
  out.body["entropy_estimate"] = std::log(static_cast<double>(laps.back().get<std::size_t>())) / static_cast<double>(n);
  out.csv = report::to_csv({"n", "laps"}, rows);
  return out;
}

Result entropy_pairs_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "scheme"}, "entropy-pairs");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  auto r = interval_maps::entropy_pairs_symbolic(s);
  Result out;
  out.body["base"] = scheme_to_json(r.base);
  const auto rank = gamma::gamma_rank_symbolic(r);
  out.body["gamma_rank"] = rank.rank;
  out.body["stabilizes_full"] = rank.fixed.is_full();
  json bases = json::array();
  std::vector<std::vector<Cell>> rows;
  for (std::size_t k = 0; k <= rank.rank; ++k) {
    bases.push_back(scheme_to_json(r.base));
    rows.push_back({static_cast<std::int64_t>(k), compacta::to_string(r.base)});
    r = gamma::gamma_step_symbolic(r);
  }
  out.body["gamma_bases"] = bases;
  out.csv = report::to_csv({"alpha", "base"}, rows);
  return out;
}

Result cpe_verdict_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "scheme", "dimension"}, "cpe-verdict");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  auto v = interval_maps::cpe_verdict(s);
  if (doc.contains("dimension")) {
    const std::size_t d = count_field(doc, "dimension");
    if (d == 0) throw ValidationError("dimension must be positive");
    v = interval_maps::product_verdict(v, d);
  }
  Result out;
  out.body["verdict"] = v.cpe ? "CPE" : "NotCPE";
  out.body["rank"] = v.rank;
  if (!v.cpe) out.body["witness"] = scheme_to_json(v.witness);
  out.csv = report::to_csv({"verdict", "rank"}, {{std::string(v.cpe ? "CPE" : "NotCPE"), static_cast<std::int64_t>(v.rank)}});
  return out;
}

Result cross_validate_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "scheme", "grid_n", "eps"}, "cross-validate");
  const Scheme s = scheme_from_json(field(doc, "scheme"));
  const std::size_t grid_n = count_field(doc, "grid_n", 1024);
  if (grid_n > 4096) throw ResourceError("grid_n above 4096");
  const auto r = gamma::cross_validate(s, grid_n, rational_field(doc, "eps", Rational(1, 256)));
  Result out;
  out.body["symbolic_rank"] = r.symbolic_rank;
  out.body["finite_rank"] = r.finite_rank;
  out.body["symbolic_full"] = r.symbolic_full;
  out.body["finite_full"] = r.finite_full;
  out.body["agree"] = r.agree;
  out.body["unresolvable"] = r.unresolvable;
  out.body["first_unresolved"] = r.first_unresolved ? json(*r.first_unresolved) : json(nullptr);
  out.body["finite_counts"] = r.finite_counts;
  std::vector<std::vector<Cell>> rows;
  for (std::size_t k = 0; k < r.finite_counts.size(); ++k) {
    rows.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(r.finite_counts[k])});
  }
  out.csv = report::to_csv({"step", "pairs"}, rows);
  out.svg = report::svg_step_chart("Finite Gamma trace", r.finite_counts);
  return out;
}

// --- shift commands ---------------------------------------------------------

shifts::Sft sft_from_json(const json& j) {
  require_keys(j, {"kind", "alphabet", "forbidden", "k", "n"}, "sft");
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "golden_mean") return shifts::golden_mean();
  if (kind == "full_shift") return shifts::full_shift(count_field(j, "k"));
  if (kind == "cycle") return shifts::cycle(count_field(j, "n"));
  if (kind == "forbidden") {
    return shifts::Sft::from_forbidden(field(j, "alphabet").get<std::string>(),
                                       field(j, "forbidden").get<std::vector<std::string>>());
  }
  throw ValidationError("sft: unknown kind " + kind);
}

shifts::Cylinder cylinder_from_json(const json& j) {
  require_keys(j, {"word", "anchor"}, "cylinder");
  shifts::Cylinder c;
  c.word = field(j, "word").get<std::string>();
  if (j.contains("anchor")) c.anchor = j["anchor"].get<std::int64_t>();
  return c;
}

Result ie_verdict_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "sft", "u", "v", "r", "l_max"}, "ie-verdict");
  const auto s = sft_from_json(field(doc, "sft"));
  const auto v = shifts::ie_pair_verdict(s, cylinder_from_json(field(doc, "u")), cylinder_from_json(field(doc, "v")),
                                         rational_field(doc, "r"), count_field(doc, "l_max", 8));
  Result out;
  out.body["positive"] = v.positive;
  out.body["r"] = text(v.r);
  out.body["failing_l"] = v.positive ? json(nullptr) : json(v.failing_l);
  out.body["max_sizes"] = v.max_sizes;
  std::vector<std::vector<Cell>> rows;
  for (std::size_t l = 0; l < v.max_sizes.size(); ++l) {
    rows.push_back({static_cast<std::int64_t>(l + 1), static_cast<std::int64_t>(v.max_sizes[l])});
  }
  out.csv = report::to_csv({"L", "max_size"}, rows);
  return out;
}

Result density_profile_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "sft", "u", "v", "n"}, "density-profile");
  const auto s = sft_from_json(field(doc, "sft"));
  const auto u = cylinder_from_json(field(doc, "u"));
  const auto v = cylinder_from_json(field(doc, "v"));
  const std::size_t n = count_field(doc, "n");
  if (n == 0 || n > 24) throw ValidationError("n must be in [1,24]");
  Result out;
  json profile = json::array();
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> labels;
  std::vector<double> values;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto d = shifts::max_independence_density(s, u, v, k);
    profile.push_back(json{{"n", k}, {"size", d.positions.size()}, {"density", text(d.density)}, {"exact", d.exact},
                           {"positions", d.positions}});
    rows.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(d.positions.size()), text(d.density)});
    labels.push_back(std::to_string(k));
    values.push_back(to_double(d.density));
  }
  out.body["profile"] = profile;
  out.csv = report::to_csv({"n", "size", "density"}, rows);
  out.svg = report::svg_bars("Maximal independence density by window length", labels, values);
  return out;
}

Result sft_entropy_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "sft", "tol", "slope_k"}, "sft-entropy");
  const auto s = sft_from_json(field(doc, "sft"));
  double tol = 1e-12;
  if (doc.contains("tol")) tol = doc["tol"].get<double>();
  if (!(tol > 0)) throw ValidationError("tol must be positive");
  const auto e = shifts::sft_entropy(s, tol);
  Result out;
  out.body["entropy"] = e.value;
  out.body["iterations"] = e.iterations;
  out.body["reducible"] = e.reducible;
  std::vector<Cell> row{e.value};
  if (doc.contains("slope_k")) {
    const double slope = shifts::word_count_slope(s, count_field(doc, "slope_k"));
    out.body["word_count_slope"] = slope;
    row.push_back(slope);
  }
  out.csv = report::to_csv(doc.contains("slope_k") ? std::vector<std::string>{"entropy", "word_count_slope"}
                                                   : std::vector<std::string>{"entropy"},
                           {row});
  return out;
}

// --- shadowing commands -----------------------------------------------------

shadowing::GridSystem system_from_json(const json& j) {
  require_keys(j, {"kind", "n", "value", "period", "metric"}, "system");
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "identity") return shadowing::identity_grid(count_field(j, "n"));
  if (kind == "tent") return shadowing::tent_grid(count_field(j, "n"));
  if (kind == "constant") return shadowing::constant_grid(count_field(j, "n"), count_field(j, "value"));
  if (kind == "cycle") return shadowing::cycle_grid(count_field(j, "n"));
  if (kind == "full_shift") {
    auto metric = shadowing::ShiftMetric::symbolic;
    if (j.contains("metric")) {
      if (j["metric"] == "discrete") metric = shadowing::ShiftMetric::discrete;
      else if (j["metric"] != "symbolic") throw ValidationError("system: metric must be symbolic or discrete");
    }
    return shadowing::periodic_full_shift(count_field(j, "period"), metric);
  }
  throw ValidationError("system: unknown kind " + kind);
}

Result shadow_check_cmd(const json& doc, const Options& opt) {
  require_schema(doc, {"schema", "system", "eps", "delta", "p", "budget", "seed"}, "shadow-check");
  const auto sys = system_from_json(field(doc, "system"));
  const Rational eps = rational_field(doc, "eps");
  const Rational delta = rational_field(doc, "delta");
  const std::size_t p = count_field(doc, "p");
  const std::uint64_t budget = opt.budget ? *opt.budget : count_field(doc, "budget", 1'000'000'000);
  const std::uint64_t seed = opt.seed ? *opt.seed : count_field(doc, "seed", 0);
  const auto v = shadowing::finite_shadowing_check(sys, eps, delta, p, budget, seed);
  Result out;
  out.body["verdict"] = shadowing::to_string(v.kind);
  json witness = json::array();
  for (auto x : v.witness) witness.push_back(sys.label(x));
  out.body["witness"] = witness;
  out.body["trials"] = v.trials;
  out.body["states_visited"] = v.states_visited;
  out.body["budget"] = budget;
  out.body["seed"] = seed;
  out.csv = report::to_csv({"eps", "delta", "p", "verdict"},
                           {{text(eps), text(delta), static_cast<std::int64_t>(p), shadowing::to_string(v.kind)}});
  return out;
}

Result weave_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "system", "pattern", "K", "eps"}, "weave");
  const std::string system = doc.value("system", std::string("full_shift"));
  shadowing::GridSystem sys;
  shadowing::WeaveInput in;
  Rational eps = rational_field(doc, "eps", Rational(1, 2));
  if (system == "full_shift") {
    sys = shadowing::periodic_full_shift(48);
    in = shadowing::full_shift_weave_input();
  } else if (system == "cycle") {
    sys = shadowing::cycle_grid(2);
    in.a1 = 0;
    in.a2 = 0;
    in.a3 = 1;
    in.table = shadowing::WeaveTable{0, 0, 0, 0, 1, 0, 0, 0};
    in.delta = Rational(2);
    if (!doc.contains("eps")) eps = Rational(1, 4);
  } else {
    throw ValidationError("weave: system must be full_shift or cycle");
  }
  shadowing::check_weave_hypotheses(sys, in);
  Result out;
  out.body["delta"] = text(in.delta);
  out.body["eps"] = text(eps);
  out.body["N"] = 2 * in.n1 * in.n3;
  if (doc.contains("pattern")) {
    const auto f = doc["pattern"].get<std::vector<int>>();
    const auto seq = shadowing::weave(sys, in, f);
    json labels = json::array();
    std::vector<std::vector<Cell>> rows;
    for (std::size_t m = 0; m < seq.size(); ++m) {
      labels.push_back(sys.label(seq[m]));
      rows.push_back({static_cast<std::int64_t>(m), sys.label(seq[m])});
    }
    out.body["sequence"] = labels;
    out.body["pseudo_orbit"] = shadowing::is_pseudo_orbit(sys, seq, in.delta);
    const auto y = shadowing::find_shadow(sys, seq, eps);
    out.body["shadow"] = y ? json(sys.label(*y)) : json(nullptr);
    out.csv = report::to_csv({"m", "point"}, rows);
  }
  if (doc.contains("K")) {
    const auto r = shadowing::independence_from_shadowing(sys, eps, count_field(doc, "K"), in);
    out.body["positions"] = r.positions;
    out.body["verified"] = r.verified;
    out.body["patterns_checked"] = r.patterns_checked;
    out.body["failing_pattern"] = r.verified ? json(nullptr) : json(r.failing_pattern);
  }
  if (!doc.contains("pattern") && !doc.contains("K")) throw ValidationError("weave: give pattern, K or both");
  return out;
}

// --- construction -----------------------------------------------------------

Result construct_check_cmd(const json& doc, const Options&) {
  require_schema(doc, {"schema", "model"}, "construct-check");
  const auto m = construction::model_from_json(field(doc, "model"));
  const auto r = construction::check_properties(m);
  Result out;
  out.body = construction::report_to_json(r);
  out.body["points"] = m.size();
  json values = json::array();
  for (const auto& v : m.values()) values.push_back(construction::to_string(v));
  out.body["values"] = values;
  std::vector<std::vector<Cell>> rows;
  for (const auto& c : r.checks) rows.push_back({c.name, std::string(c.passed ? "pass" : "fail"), c.detail});
  out.csv = report::to_csv({"check", "result", "detail"}, rows);
  return out;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"cb-rank", cb_rank_cmd},
      {"gamma-rank", gamma_rank_cmd},
      {"psi-build", psi_build_cmd},
      {"psi-entropy", psi_entropy_cmd},
      {"entropy-pairs", entropy_pairs_cmd},
      {"cpe-verdict", cpe_verdict_cmd},
      {"ie-verdict", ie_verdict_cmd},
      {"density-profile", density_profile_cmd},
      {"sft-entropy", sft_entropy_cmd},
      {"shadow-check", shadow_check_cmd},
      {"weave", weave_cmd},
      {"construct-check", construct_check_cmd},
      {"cross-validate", cross_validate_cmd},
  };
  return table;
}

json error_document(const std::string& command, const char* kind, const std::string& message) {
  return json{{"schema", "v1"}, {"command", command}, {"error", json{{"kind", kind}, {"message", message}}}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

Outcome run(const std::string& command, const std::string& input_text, const Options& options) {
  Outcome out;
  const auto it = handlers().find(command);
  if (it == handlers().end()) {
    out.exit_code = unknown_command;
    out.report = error_document(command, "unknown_command", "unknown command: " + command);
    return out;
  }
  json doc;
  try {
    doc = json::parse(input_text);
  } catch (const json::parse_error& e) {
    out.exit_code = malformed_input;
    out.report = error_document(command, "malformed_json", e.what());
    return out;
  }
  try {
    Result r = it->second(doc, options);
    out.report = json{{"schema", "v1"}, {"command", command}, {"input", doc}, {"result", std::move(r.body)}};
    out.csv = std::move(r.csv);
    out.svg = std::move(r.svg);
  } catch (const ResourceError& e) {
    out.exit_code = resource;
    out.report = error_document(command, "resource", e.what());
  } catch (const ValidationError& e) {
    out.exit_code = validation;
    out.report = error_document(command, "validation", e.what());
  } catch (const DomainError& e) {
    out.exit_code = validation;
    out.report = error_document(command, "domain", e.what());
  } catch (const json::exception& e) {
    out.exit_code = validation;
    out.report = error_document(command, "validation", e.what());
  }
  return out;
}

}  // namespace lentropy::cli
