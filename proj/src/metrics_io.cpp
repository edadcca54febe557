#include "wsnsim/metrics_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace wsnsim {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

namespace {

constexpr std::size_t kColumns = 10;

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw IoError("metrics csv line " + std::to_string(line) + ": bad field '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string format_csv(std::span<const RoundMetrics> series) {
  std::string out;
  out.reserve(64 * (series.size() + 1));
  out.append(kMetricsHeader).push_back('\n');
  for (const auto& m : series) {
    out += std::to_string(m.round_index);
    out += ',';
    out += format_number(m.sim_time);
    out += ',';
    out += std::to_string(m.alive_count);
    out += ',';
    out += format_number(m.consumed_cumulative);
    out += ',';
    out += format_number(m.emitted_cumulative);
    out += ',';
    out += format_number(m.delivered_cumulative);
    out += ',';
    out += std::to_string(m.data_received_cumulative);
    out += ',';
    out += std::to_string(m.ch_count);
    out += ',';
    out += format_number(m.tour_length);
    out += ',';
    out += std::to_string(m.clusters_visited);
    out += '\n';
  }
  return out;
}

std::vector<RoundMetrics> parse_csv(std::string_view text) {
  std::vector<RoundMetrics> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!header_seen) {
      if (line != kMetricsHeader) throw IoError("metrics csv: unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != kColumns) {
      throw IoError("metrics csv line " + std::to_string(line_no) + ": expected 10 columns");
    }
    RoundMetrics m;
    m.round_index = parse_field<std::uint32_t>(f[0], line_no);
    m.sim_time = parse_field<double>(f[1], line_no);
    m.alive_count = parse_field<std::uint32_t>(f[2], line_no);
    m.consumed_cumulative = parse_field<double>(f[3], line_no);
    m.emitted_cumulative = parse_field<double>(f[4], line_no);
    m.delivered_cumulative = parse_field<double>(f[5], line_no);
    m.data_received_cumulative = parse_field<std::uint64_t>(f[6], line_no);
    m.ch_count = parse_field<std::uint32_t>(f[7], line_no);
    m.tour_length = parse_field<double>(f[8], line_no);
    m.clusters_visited = parse_field<std::uint32_t>(f[9], line_no);
    out.push_back(m);
  }
  if (!header_seen) throw IoError("metrics csv: missing header");
  return out;
}

void write_csv(std::span<const RoundMetrics> series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_csv(series);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

std::vector<RoundMetrics> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

namespace {

struct PlotSpec {
  const char* family;
  const char* title;
  const char* ylabel;
  std::vector<std::pair<int, const char*>> columns;  // 1-based CSV column, legend
};

}  // namespace

std::vector<std::filesystem::path> emit_plots(std::span<const RoundMetrics> series,
                                              const std::filesystem::path& out_dir,
                                              const std::string& scenario_name,
                                              const std::string& csv_file) {
  if (series.empty()) throw IoError("emit_plots: empty metrics series");

  const std::vector<PlotSpec> specs = {
      {"alive", "Time Vs. No of Alive Nodes", "No of Alive Nodes", {{3, "alive"}}},
      {"consumed", "Time Vs. Total Consumed Energy", "Total Consumed Energy (J)", {{4, "consumed"}}},
      {"harvested", "Time Vs. Total Harvested Energy", "Total Harvested Energy (J)",
       {{5, "emitted"}, {6, "delivered"}}},
      {"data", "Time Vs. Total Data Received", "Total Data Received (bits)", {{7, "data received"}}},
  };

  std::vector<std::filesystem::path> written;
  for (const auto& spec : specs) {
    const auto path = out_dir / (std::string(spec.family) + "_" + scenario_name + ".plt");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "# gnuplot script\n"
        << "set datafile separator ','\n"
        << "set terminal pngcairo size 800,600\n"
        << "set output '" << spec.family << "_" << scenario_name << ".png'\n"
        << "set title '" << spec.title << " (Node in the network=" << scenario_name << ")'\n"
        << "set xlabel 'Time (s)'\n"
        << "set ylabel '" << spec.ylabel << "'\n"
        << "set key top left\n"
        << "set grid\n"
        << "plot ";
    for (std::size_t i = 0; i < spec.columns.size(); ++i) {
      if (i) out << ", \\\n     ";
      out << "'" << csv_file << "' using 2:" << spec.columns[i].first
          << " skip 1 with lines title '" << spec.columns[i].second << "'";
    }
    out << '\n';
    if (!out.flush()) throw IoError("failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace wsnsim
