#ifndef SECRECY_CLI_HPP
#define SECRECY_CLI_HPP

#include <iosfwd>
#include <string>

#include "secrecy/channel.hpp"
#include "secrecy/optimizer.hpp"

namespace secrecy {

enum class Command { region, enhance_verify, misome, misome_highsnr, check };

Command command_from_string(const std::string& s);
std::string to_string(Command c);

struct RunConfig {
  Command command = Command::check;
  ChannelInstance channel;
  SearchBudget solver;
  int mu_grid_size = 32;
  int alpha_grid_size = 101;
  double mu_max = 1e3;
  std::string output;          // empty = stdout
  std::string format = "csv";  // "csv" or "json"
  std::uint64_t seed = 1;
};

// Parses and validates the JSON document described in the README. Schema
// violations name the offending JSON path; a non-PD noise matrix is rejected
// naming the matrix and its minimum eigenvalue.
RunConfig parse_config(const std::string& json_text);

// Inverse of parse_config, for round-trip checks and provenance capture.
std::string serialize_config(const RunConfig& cfg);

// Executes the configured command, writing artifacts to cfg.output (or the
// given stream when output is empty). Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Numeric formatting shared by every writer: 12 significant digits.
std::string format_number(double v);

}  // namespace secrecy

#endif
