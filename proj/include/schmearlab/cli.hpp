#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace schmearlab {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string subcommand;  // slope, limit, witness, schmear, average, convexity, oracle

  std::string action;   // slope, limit
  std::string action1;  // witness, schmear, average, convexity
  std::string action2;
  std::string element;   // slope
  std::string family;    // limit
  std::string families;  // limit, witness, convexity: one family per line
  std::string family_a;  // average
  std::string family_b;
  std::string word;  // oracle

  // Schedule 2^schedule_from .. 2^schedule_to.
  int schedule_from = 4;
  int schedule_to = 12;
  std::optional<double> tol;  // 1e-4; 0.02 for average, 1e-2 for convexity
  int radius = 8;
  int mesh = 64;
  int rounds = 2;
  bool equator = false;  // witness: restrict to the horizontal projections

  std::string output;  // empty: stdout
  std::optional<OutputFormat> format;  // json, except csv for schmear
};

inline constexpr const char* kVersion = "0.3.1";

// Exit status 0 on success, 1 on a domain error, 2 on a usage or syntax
// error (with the diagnostic on err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv with CLI11 and calls run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schmearlab
