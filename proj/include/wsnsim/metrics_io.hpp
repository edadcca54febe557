#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/error.hpp"

namespace wsnsim {

inline constexpr std::string_view kMetricsHeader =
    "round,time_s,alive,consumed_j,emitted_j,delivered_j,data_bits,ch_count,tour_m,clusters_visited";

std::string format_csv(std::span<const RoundMetrics> series);
std::vector<RoundMetrics> parse_csv(std::string_view text);

void write_csv(std::span<const RoundMetrics> series, const std::filesystem::path& path);
std::vector<RoundMetrics> read_csv(const std::filesystem::path& path);

/// Writes gnuplot scripts alive_<name>.plt, consumed_<name>.plt,
/// harvested_<name>.plt and data_<name>.plt into `out_dir`, each plotting
/// columns of `csv_file` (a path relative to `out_dir`). Returns the paths.
std::vector<std::filesystem::path> emit_plots(std::span<const RoundMetrics> series,
                                              const std::filesystem::path& out_dir,
                                              const std::string& scenario_name,
                                              const std::string& csv_file);

}  // namespace wsnsim
