// Command line front end: each subcommand adapts one library call.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace boxarith::cli {

enum class Format : std::uint8_t { Text, Machine };

struct CliConfig {
  std::string store;    // empty: no store; BOXARITH_STORE when unset
  std::string journal;  // empty: store + ".journal" when a store is given
  std::string theory = "k";
  std::uint64_t budget = 64;
  Format format = Format::Text;
};

/// args excludes the program name. Exit 2 on usage errors, 1 on domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boxarith::cli
