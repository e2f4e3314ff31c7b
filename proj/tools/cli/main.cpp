#include <iostream>

#include "config.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  auto parsed = wrtwist::cli::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  return wrtwist::cli::run(*parsed.config, std::cout, std::cerr);
}
