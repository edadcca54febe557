#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "wsnsim/config_io.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/error.hpp"
#include "wsnsim/metrics_io.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitIo = 3;

struct Options {
  std::string preset;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> rounds;
  bool no_harvester = false;
  std::string tour_solver;
  bool fixed_ch_count = false;
  std::string dump_topology;
  std::string dump_clusters;
  std::string out_dir;
  std::string seeds;
};

void add_scenario_options(CLI::App& app, Options& o) {
  app.add_option("--preset", o.preset, "Scenario preset (n50, n100, n150)");
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--rounds", o.rounds, "Number of rounds to simulate");
  app.add_flag("--no-harvester", o.no_harvester, "Disable the mobile charger");
  app.add_option("--tour-solver", o.tour_solver, "Tour planner: heuristic or exact")
      ->check(CLI::IsMember({"heuristic", "exact"}));
  app.add_flag("--fixed-ch-count", o.fixed_ch_count, "Elect exactly ceil(p * n) heads per round");
}

void add_output_options(CLI::App& app, Options& o) {
  app.add_option("-o,--out-dir", o.out_dir, "Output directory (default: $WSNSIM_OUT or .)");
}

std::string scenario_tag(const Options& o) {
  if (!o.preset.empty()) return o.preset;
  if (!o.config_path.empty()) return fs::path(o.config_path).stem().string();
  return "n50";
}

SimConfig build_config(const Options& o, bool require_source) {
  const bool has_preset = !o.preset.empty();
  const bool has_file = !o.config_path.empty();
  if (require_source && has_preset == has_file) {
    throw InvalidConfig({"exactly one of --preset or --config is required"});
  }

  SimConfig c;
  const std::string preset = has_preset || has_file ? o.preset : "n50";
  if (!preset.empty() && !apply_preset(preset, c)) {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidConfig({"unknown preset '" + preset + "'; valid presets: " + valid});
  }
  if (has_file) apply_json_file(o.config_path, c);

  if (o.seed) c.rng_seed = *o.seed;
  if (o.rounds) c.total_rounds = *o.rounds;
  if (o.no_harvester) c.harvester_enabled = false;
  if (!o.tour_solver.empty()) c.tour_solver = *parse_tour_solver(o.tour_solver);
  if (o.fixed_ch_count) c.fixed_ch_count = true;
  return c;
}

fs::path output_dir(const Options& o) {
  fs::path dir = o.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("WSNSIM_OUT");
    dir = env && *env ? fs::path(env) : fs::path(".");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::string metrics_name(const std::string& tag, std::uint64_t seed) {
  return "metrics_" + tag + "_s" + std::to_string(seed) + ".csv";
}

int cmd_run(const Options& o, std::ostream& out) {
  const ValidatedConfig config = validate_config(build_config(o, true));
  const fs::path dir = output_dir(o);

  if (!o.dump_topology.empty()) {
    write_topology_csv(deploy(config), o.dump_topology);
    out << "wrote " << o.dump_topology << '\n';
  }

  std::ofstream clusters;
  RoundObserver observer;
  if (!o.dump_clusters.empty()) {
    clusters.open(o.dump_clusters, std::ios::binary | std::ios::trunc);
    if (!clusters) throw IoError("cannot open " + o.dump_clusters + " for writing");
    clusters << "round,head_id,member_id\n";
    observer = [&clusters](const SimState&, const RoundTrace& t) {
      for (const auto& [head, slots] : t.assignment.tdma) {
        if (slots.empty()) clusters << t.round_index << ',' << head << ",\n";
        for (NodeId m : slots) clusters << t.round_index << ',' << head << ',' << m << '\n';
      }
    };
  }

  const auto series = run(config, observer);
  if (clusters.is_open()) {
    if (!clusters.flush()) throw IoError("failed writing " + o.dump_clusters);
    out << "wrote " << o.dump_clusters << '\n';
  }

  const std::string csv = metrics_name(scenario_tag(o), config->rng_seed);
  write_csv(series, dir / csv);
  out << "wrote " << (dir / csv).string() << '\n';
  if (!series.empty()) {
    for (const auto& p : emit_plots(series, dir, std::to_string(config->node_count), csv)) {
      out << "wrote " << p.string() << '\n';
    }
  }
  return 0;
}

std::string optional_text(const std::optional<std::uint32_t>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

int cmd_compare(const Options& o, std::ostream& out) {
  SimConfig base = build_config(o, false);
  SimConfig on = base;
  on.harvester_enabled = true;
  SimConfig off = base;
  off.harvester_enabled = false;
  const ValidatedConfig on_cfg = validate_config(on);
  const ValidatedConfig off_cfg = validate_config(off);
  const fs::path dir = output_dir(o);

  auto on_future = std::async(std::launch::async, [&] { return run(on_cfg); });
  const auto off_series = run(off_cfg);
  const auto on_series = on_future.get();

  const std::string name = "compare_" + scenario_tag(o) + "_s" + std::to_string(base.rng_seed) + ".csv";
  std::ofstream csv(dir / name, std::ios::binary | std::ios::trunc);
  if (!csv) throw IoError("cannot open " + (dir / name).string() + " for writing");
  csv << "round,time_s,alive_harvest,alive_baseline,consumed_harvest_j,consumed_baseline_j,"
         "emitted_harvest_j,delivered_harvest_j,data_harvest_bits,data_baseline_bits\n";
  for (std::size_t i = 0; i < on_series.size(); ++i) {
    const auto& h = on_series[i];
    const auto& b = off_series[i];
    csv << h.round_index << ',' << format_number(h.sim_time) << ',' << h.alive_count << ','
        << b.alive_count << ',' << format_number(h.consumed_cumulative) << ','
        << format_number(b.consumed_cumulative) << ',' << format_number(h.emitted_cumulative) << ','
        << format_number(h.delivered_cumulative) << ',' << h.data_received_cumulative << ','
        << b.data_received_cumulative << '\n';
  }
  if (!csv.flush()) throw IoError("failed writing " + (dir / name).string());

  const RunSummary hs = summarize(on_series);
  const RunSummary bs = summarize(off_series);
  out << "wrote " << (dir / name).string() << '\n';
  out << "summary: final_alive harvesting=" << optional_text(hs.final_alive)
      << " baseline=" << optional_text(bs.final_alive) << "; lifetime=" << lifetime_text(hs) << '/'
      << lifetime_text(bs) << '\n';
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::vector<std::uint64_t> seeds = parse_seed_list(o.seeds);
  const SimConfig base = build_config(o, false);
  const fs::path dir = output_dir(o);
  const std::string tag = scenario_tag(o);

  std::vector<ValidatedConfig> configs;
  configs.reserve(seeds.size());
  for (auto s : seeds) {
    SimConfig c = base;
    c.rng_seed = s;
    configs.push_back(validate_config(c));
  }

  std::vector<std::future<std::vector<RoundMetrics>>> jobs;
  jobs.reserve(configs.size());
  for (const auto& c : configs) {
    jobs.push_back(std::async(std::launch::async, [&c] { return run(c); }));
  }

  std::ostringstream agg;
  agg << "seed,final_alive,lifetime,consumed_j,emitted_j,delivered_j,data_bits\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto series = jobs[i].get();
    const std::string csv = metrics_name(tag, seeds[i]);
    write_csv(series, dir / csv);
    out << "wrote " << (dir / csv).string() << '\n';

    const RunSummary s = summarize(series);
    const RoundMetrics last = series.empty() ? RoundMetrics{} : series.back();
    agg << seeds[i] << ',' << optional_text(s.final_alive) << ',' << lifetime_text(s) << ','
        << format_number(last.consumed_cumulative) << ',' << format_number(last.emitted_cumulative)
        << ',' << format_number(last.delivered_cumulative) << ',' << last.data_received_cumulative
        << '\n';
  }

  const fs::path agg_path = dir / ("sweep_" + tag + ".csv");
  std::ofstream agg_out(agg_path, std::ios::binary | std::ios::trunc);
  if (!agg_out) throw IoError("cannot open " + agg_path.string() + " for writing");
  agg_out << agg.str();
  if (!agg_out.flush()) throw IoError("failed writing " + agg_path.string());
  out << "wrote " << agg_path.string() << '\n';
  return 0;
}

int cmd_dump_topology(const Options& o, std::ostream& out) {
  const ValidatedConfig config = validate_config(build_config(o, false));
  write_topology_csv(deploy(config), o.dump_topology);
  out << "wrote " << o.dump_topology << '\n';
  return 0;
}

}  // namespace

RunSummary summarize(const std::vector<RoundMetrics>& series) {
  RunSummary s;
  if (series.empty()) return s;
  s.final_alive = series.back().alive_count;
  for (const auto& m : series) {
    if (m.alive_count == 0) {
      s.first_dead_round = m.round_index;
      break;
    }
  }
  return s;
}

std::string lifetime_text(const RunSummary& s) {
  return s.first_dead_round ? std::to_string(*s.first_dead_round) : std::string("survived");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  auto parse_one = [](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad seed '" + t + "'");
    }
    return std::stoull(t);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_one(text.substr(0, dots));
    const auto hi = parse_one(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty seed range '" + text + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seeds.push_back(parse_one(item));
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wireless rechargeable sensor network simulator (LEACH + mobile RF charger)"};
  app.require_subcommand(1);

  Options o;
  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario and write metrics and plot scripts");
  add_scenario_options(*run_cmd, o);
  add_output_options(*run_cmd, o);
  run_cmd->add_option("--dump-topology", o.dump_topology, "Also write node positions to this CSV");
  run_cmd->add_option("--dump-clusters", o.dump_clusters, "Also write per-round cluster membership CSV");

  auto* cmp_cmd = app.add_subcommand("compare", "Run with and without the charger and compare");
  add_scenario_options(*cmp_cmd, o);
  add_output_options(*cmp_cmd, o);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario over several seeds");
  add_scenario_options(*sweep_cmd, o);
  add_output_options(*sweep_cmd, o);
  sweep_cmd->add_option("--seeds", o.seeds, "Seed list: 1..5 or 1,2,7")->required();

  auto* topo_cmd = app.add_subcommand("dump-topology", "Write node positions as CSV");
  add_scenario_options(*topo_cmd, o);
  topo_cmd->add_option("path,--dump-topology", o.dump_topology, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (run_cmd->parsed()) return cmd_run(o, out);
    if (cmp_cmd->parsed()) return cmd_compare(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (topo_cmd->parsed()) return cmd_dump_topology(o, out);
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return 1;
}

}  // namespace wsnsim::cli
