#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wco/settings.hpp"

namespace wco::cli {

enum class Command {
  VerifyPair,
  ConstructPair,
  Decompose,
  Canonicalize,
  Identify,
  Simulate,
  MpCheck,
  ExampleSection4,
};

const char* to_string(Command c);

struct CommandPlan {
  Command command = Command::VerifyPair;
  std::map<std::string, std::string> inputs;  // role -> path
  Settings cfg;
  std::optional<double> radius;
  std::optional<std::size_t> samples;
  std::string catalog;      // named catalog entry standing in for --sigma
  double witness_tol = 1e-8;
  bool verify_witness = false;
  std::string output;       // result document path; empty writes it to stdout
};

/// Exit codes.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

struct HelpRequested {
  std::string text;
};

/// Arguments exclude the program name. ParseError on bad usage.
CommandPlan parse_arguments(const std::vector<std::string>& args);  // may throw HelpRequested

/// Checks that every input exists and parses, then runs the command.
/// The result document goes to plan.output (or `out`), the summary to `out`
/// (or `err` when the document occupies `out`).
int dispatch(const CommandPlan& plan, std::ostream& out, std::ostream& err);

/// parse_arguments + dispatch, with errors reported on `err` by name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wco::cli
