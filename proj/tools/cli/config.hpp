#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wrtwist::cli {

struct RunConfig {
  std::string command;
  std::optional<std::string> family;
  std::optional<std::string> n;
  std::optional<std::pair<long, long>> n_range;
  std::optional<std::string> field_conductor;
  std::size_t field_index = 0;
  std::optional<std::string> coords;  // "c0,c1,c2;..." rows in the power basis of rho
  std::optional<std::string> case_id;
  bool good_basis = false;
  bool json = false;
  std::uint64_t seed = 1;
  unsigned precision = 64;
  std::size_t iterations = 200;
  int coeff_bound = 3;
  unsigned threads = 1;
  int t_max = 4;
  std::vector<int> ideal_i;
  std::vector<int> ideal_j;
  int p0 = 0;
  bool all_ideals = false;
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // absent when parsing ended (help or error)
  int exit_code = 0;
  std::string message;
};

ParseOutcome parse_args(int argc, const char* const* argv);

// "a..b" with a <= b. Throws ParseError.
std::pair<long, long> parse_range(const std::string& text);
// Comma separated 1-based indices; empty text gives an empty list.
std::vector<int> parse_index_list(const std::string& text);

}  // namespace wrtwist::cli
