#pragma once

// Command dispatch for the lentropy driver. Every command reads one JSON
// document with "schema": "v1" and produces a report with sorted keys.

#include "lentropy/scheme_json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lentropy::cli {

enum ExitCode : int { ok = 0, validation = 2, resource = 3, unknown_command = 64, malformed_input = 65 };

struct Options {
  std::optional<std::uint64_t> seed;    // overrides the document's seed
  std::optional<std::uint64_t> budget;  // overrides the document's budget
};

struct Outcome {
  int exit_code = ok;
  json report;      // success report or error document
  std::string csv;  // empty when the command has no tabular view
  std::string svg;  // empty when the command has no plot
};

const std::vector<std::string>& command_names();

Outcome run(const std::string& command, const std::string& input_text, const Options& options = {});

}  // namespace lentropy::cli
