#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wsnsim/config.hpp"

namespace wsnsim::cli {

/// Entry point shared by the wsnsim binary and the CLI tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct RunSummary {
  std::optional<std::uint32_t> final_alive;        // empty series -> nullopt
  std::optional<std::uint32_t> first_dead_round;   // nullopt -> survived
};

RunSummary summarize(const std::vector<RoundMetrics>& series);

/// "survived" or the first round with no alive node.
std::string lifetime_text(const RunSummary& s);

/// Parses "1..5", "1,2,7" or "3" into a seed list. Throws std::invalid_argument.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace wsnsim::cli
