// lentropy: run one workbench command on a JSON document.

#include "lentropy/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int no_input = 66;

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lentropy;
  CLI::App app{"Local entropy workbench"};
  std::string command, input = "-", out_dir, format = "json";
  std::optional<std::uint64_t> seed, budget;
  app.add_option("command", command, "One of: " + join(cli::command_names()))->required();
  app.add_option("--input", input, "JSON document, - for stdin");
  app.add_option("--out", out_dir, "Directory for the report; stdout when omitted");
  app.add_option("--seed", seed, "Seed for randomized paths");
  app.add_option("--budget", budget, "Work budget override");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "svg"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::unknown_command;
  }

  std::string text;
  if (input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << input << "\n";
      return no_input;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  cli::Outcome outcome = cli::run(command, text, cli::Options{seed, budget});
  std::string payload = outcome.report.dump(2) + "\n";
  std::string ext = "json";
  if (outcome.exit_code == cli::ok && format != "json") {
    payload = format == "csv" ? outcome.csv : outcome.svg;
    ext = format;
    if (payload.empty()) {
      std::cerr << command << " has no " << format << " view\n";
      return cli::validation;
    }
  }
  if (outcome.exit_code != cli::ok) std::cerr << outcome.report["error"]["message"].get<std::string>() << "\n";

  if (out_dir.empty()) {
    std::cout << payload;
  } else {
    std::filesystem::create_directories(out_dir);
    const std::string name = outcome.exit_code == cli::ok ? command + "." + ext : command + ".error.json";
    std::ofstream(std::filesystem::path(out_dir) / name, std::ios::binary) << payload;
  }
  return outcome.exit_code;
}
