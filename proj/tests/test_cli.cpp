#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lentropy/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>

using namespace lentropy;
using lentropy::cli::run;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(LENTROPY_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::map<std::string, std::string> samples = {
    {"cb-rank", "cb_rank.json"},
    {"gamma-rank", "gamma_rank.json"},
    {"psi-build", "psi_build.json"},
    {"psi-entropy", "psi_entropy.json"},
    {"entropy-pairs", "entropy_pairs.json"},
    {"cpe-verdict", "cpe_verdict_points.json"},
    {"ie-verdict", "ie_verdict.json"},
    {"density-profile", "density_profile.json"},
    {"sft-entropy", "sft_entropy.json"},
    {"shadow-check", "shadow_check.json"},
    {"weave", "weave.json"},
    {"construct-check", "construct_check.json"},
    {"cross-validate", "cross_validate.json"},
};

}  // namespace

TEST_CASE("every command has a sample and succeeds on it") {
  CHECK(cli::command_names().size() == samples.size());
  for (const auto& name : cli::command_names()) {
    CAPTURE(name);
    auto it = samples.find(name);
    REQUIRE(it != samples.end());
    auto text = slurp(it->second);
    auto out = run(name, text);
    CHECK(out.exit_code == cli::ok);
    CHECK(out.report["schema"] == "v1");
    CHECK(out.report["command"] == name);
    CHECK(out.report["input"] == json::parse(text));
    CHECK(out.report.contains("result"));
  }
}

TEST_CASE("reports are byte-stable across runs") {
  for (const auto& [name, file] : samples) {
    CAPTURE(name);
    auto text = slurp(file);
    auto a = run(name, text);
    auto b = run(name, text);
    CHECK(a.report.dump(2) == b.report.dump(2));
    CHECK(a.csv == b.csv);
    CHECK(a.svg == b.svg);
  }
}

TEST_CASE("echoed input reproduces the report") {
  auto first = run("cb-rank", slurp("cb_rank.json"));
  auto again = run("cb-rank", first.report["input"].dump());
  CHECK(first.report.dump() == again.report.dump());
}

TEST_CASE("cpe verdicts") {
  auto pts = run("cpe-verdict", slurp("cpe_verdict_points.json")).report["result"];
  CHECK(pts["verdict"] == "CPE");
  CHECK(pts["rank"] == 1);
  auto perf = run("cpe-verdict", slurp("cpe_verdict_perfect.json")).report["result"];
  CHECK(perf["verdict"] == "NotCPE");
  CHECK_FALSE(perf["witness"].is_null());
}

TEST_CASE("density profile views") {
  auto out = run("density-profile", slurp("density_profile.json"));
  REQUIRE(out.exit_code == cli::ok);
  CHECK(out.csv.rfind("n,size,density\n", 0) == 0);
  CHECK(out.csv.find("8,4,\"1/2\"\n") != std::string::npos);
  CHECK(out.svg.rfind("<svg", 0) == 0);
}

TEST_CASE("cascade svg has one row per level") {
  auto out = run("cb-rank", slurp("cb_rank.json"));
  REQUIRE(out.exit_code == cli::ok);
  std::size_t rows = 0;
  for (std::size_t pos = 0; (pos = out.svg.find(">level ", pos)) != std::string::npos; ++pos) ++rows;
  CHECK(rows == 4);  // levels 0..3, the last one empty
}

TEST_CASE("weave and construction results") {
  auto w = run("weave", slurp("weave.json")).report["result"];
  CHECK(w["verified"] == true);
  CHECK(w["pseudo_orbit"] == true);
  auto c = run("construct-check", slurp("construct_check.json")).report["result"];
  CHECK(c["all_passed"] == true);
}

TEST_CASE("option overrides") {
  cli::Options opt;
  opt.seed = 42;
  opt.budget = 100;
  auto r = run("shadow-check", slurp("shadow_check.json"), opt).report["result"];
  CHECK(r["seed"] == 42);
  CHECK(r["budget"] == 100);
}

TEST_CASE("exit codes") {
  CHECK(run("no-such-command", "{}").exit_code == cli::unknown_command);
  CHECK(run("cb-rank", "{").exit_code == cli::malformed_input);
  CHECK(run("cb-rank", R"({"schema":"v2","scheme":{"kind":"points","points":["1/2"]},"depth":2})").exit_code ==
        cli::validation);
  CHECK(run("cb-rank", R"({"schema":"v1","scheme":{"kind":"points","points":["1/2"]},"depth":2,"x":1})")
            .exit_code == cli::validation);
  CHECK(run("cb-rank", R"({"schema":"v1","scheme":{"kind":"points","points":["3/2"]},"depth":2})").exit_code ==
        cli::validation);
  CHECK(run("cb-rank", R"({"schema":"v1","scheme":{"kind":"points","points":["1/2"]},"depth":"two"})")
            .exit_code == cli::validation);
  auto res = run("shadow-check",
                 R"({"schema":"v1","system":{"kind":"full_shift","period":20},"eps":"1/2","delta":"1/2","p":3})");
  CHECK(res.exit_code == cli::resource);
  CHECK(res.report["error"]["kind"].is_string());
}
