#include "wsnsim/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include "wsnsim/error.hpp"

namespace wsnsim {

using nlohmann::json;

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"n50", "n100", "n150"};
  return names;
}

bool apply_preset(std::string_view name, SimConfig& config) {
  std::uint32_t nodes = 0;
  if (name == "n50") {
    nodes = 50;
  } else if (name == "n100") {
    nodes = 100;
  } else if (name == "n150") {
    nodes = 150;
  } else {
    return false;
  }
  config.node_count = nodes;
  config.area_width = 100.0;
  config.area_height = 100.0;
  config.ch_probability = 0.05;
  config.initial_energy = 2.0;
  config.battery_capacity = 2.0;
  config.round_duration = 20.0;
  return true;
}

std::string_view to_string(TourSolver solver) noexcept {
  return solver == TourSolver::Exact ? "exact" : "heuristic";
}

std::optional<TourSolver> parse_tour_solver(std::string_view text) noexcept {
  if (text == "heuristic") return TourSolver::Heuristic;
  if (text == "exact") return TourSolver::Exact;
  return std::nullopt;
}

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  template <typename T>
  void field(const json& obj, const std::string& prefix, const char* key, T& target) {
    seen_.push_back(key);
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string name = prefix + key;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw std::invalid_argument("expected a boolean");
        target = it->get<bool>();
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() &&
                                         it->get<std::int64_t>() < 0)) {
          throw std::invalid_argument("expected a non-negative integer");
        }
        target = it->get<T>();
      } else {
        if (!it->is_number()) throw std::invalid_argument("expected a number");
        target = it->get<T>();
      }
    } catch (const std::exception& e) {
      errors_.push_back(name + ": " + e.what());
    }
  }

  void point(const json& obj, const char* key, std::optional<Point>& target) {
    seen_.push_back(key);
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (it->is_null()) {
      target.reset();
      return;
    }
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
      errors_.push_back(std::string(key) + ": expected [x, y]");
      return;
    }
    target = Point{(*it)[0].get<double>(), (*it)[1].get<double>()};
  }

  void nested(const json& obj, const char* key, const std::function<void(const json&)>& read) {
    seen_.push_back(key);
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_object()) {
      errors_.push_back(std::string(key) + ": expected an object");
      return;
    }
    read(*it);
  }

  void unknown_keys(const json& obj, const std::string& prefix) {
    for (const auto& [k, _] : obj.items()) {
      if (std::find(seen_.begin(), seen_.end(), k) == seen_.end()) {
        errors_.push_back(prefix + k + ": unknown key");
      }
    }
    seen_.clear();
  }

 private:
  std::vector<std::string>& errors_;
  std::vector<std::string> seen_;
};

}  // namespace

void apply_json(const json& j, SimConfig& c) {
  std::vector<std::string> errors;
  if (!j.is_object()) throw InvalidConfig({"configuration root must be a JSON object"});

  Reader top(errors);
  top.field(j, "", "area_width", c.area_width);
  top.field(j, "", "area_height", c.area_height);
  top.field(j, "", "node_count", c.node_count);
  top.field(j, "", "ch_probability", c.ch_probability);
  top.field(j, "", "initial_energy", c.initial_energy);
  top.field(j, "", "battery_capacity", c.battery_capacity);
  top.field(j, "", "round_duration", c.round_duration);
  top.field(j, "", "total_rounds", c.total_rounds);
  top.field(j, "", "packet_bits", c.packet_bits);
  top.field(j, "", "rng_seed", c.rng_seed);
  top.field(j, "", "harvester_enabled", c.harvester_enabled);
  top.field(j, "", "fixed_ch_count", c.fixed_ch_count);
  top.point(j, "bs_position", c.bs_position);
  top.point(j, "depot_position", c.depot_position);
  top.nested(j, "radio", [&](const json& r) {
    Reader rd(errors);
    rd.field(r, "radio.", "e_elec", c.radio.e_elec);
    rd.field(r, "radio.", "eps_fs", c.radio.eps_fs);
    rd.field(r, "radio.", "eps_mp", c.radio.eps_mp);
    rd.field(r, "radio.", "e_aggregate", c.radio.e_aggregate);
    rd.field(r, "radio.", "p_listen", c.radio.p_listen);
    rd.field(r, "radio.", "p_sleep", c.radio.p_sleep);
    rd.field(r, "radio.", "e_sample", c.radio.e_sample);
    rd.field(r, "radio.", "death_threshold", c.radio.death_threshold);
    rd.unknown_keys(r, "radio.");
  });
  top.nested(j, "harvest", [&](const json& h) {
    Reader rd(errors);
    rd.field(h, "harvest.", "transfer_efficiency", c.harvest.transfer_efficiency);
    rd.field(h, "harvest.", "d_min", c.harvest.d_min);
    rd.field(h, "harvest.", "dwell_time", c.harvest.dwell_time);
    rd.field(h, "harvest.", "harvester_speed", c.harvest.harvester_speed);
    rd.field(h, "harvest.", "harvester_capacity", c.harvest.harvester_capacity);
    rd.field(h, "harvest.", "allow_revival", c.harvest.allow_revival);
    rd.field(h, "harvest.", "carry_over", c.harvest.carry_over);
    rd.unknown_keys(h, "harvest.");
  });
  {
    const auto it = j.find("tour_solver");
    if (it != j.end()) {
      const auto parsed = it->is_string() ? parse_tour_solver(it->get<std::string>()) : std::nullopt;
      if (parsed) {
        c.tour_solver = *parsed;
      } else {
        errors.push_back("tour_solver: expected \"heuristic\" or \"exact\"");
      }
    }
  }
  // tour_solver is handled above, outside the Reader bookkeeping.
  json rest = j;
  rest.erase("tour_solver");
  top.unknown_keys(rest, "");

  if (!errors.empty()) throw InvalidConfig(std::move(errors));
}

void apply_json_file(const std::filesystem::path& path, SimConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig({"config file " + path.string() + ": " + e.what()});
  }
  apply_json(j, config);
}

json to_json(const SimConfig& c) {
  json j = {
      {"area_width", c.area_width},
      {"area_height", c.area_height},
      {"node_count", c.node_count},
      {"ch_probability", c.ch_probability},
      {"initial_energy", c.initial_energy},
      {"battery_capacity", c.battery_capacity},
      {"round_duration", c.round_duration},
      {"total_rounds", c.total_rounds},
      {"packet_bits", c.packet_bits},
      {"rng_seed", c.rng_seed},
      {"harvester_enabled", c.harvester_enabled},
      {"fixed_ch_count", c.fixed_ch_count},
      {"tour_solver", std::string(to_string(c.tour_solver))},
      {"radio",
       {{"e_elec", c.radio.e_elec},
        {"eps_fs", c.radio.eps_fs},
        {"eps_mp", c.radio.eps_mp},
        {"e_aggregate", c.radio.e_aggregate},
        {"p_listen", c.radio.p_listen},
        {"p_sleep", c.radio.p_sleep},
        {"e_sample", c.radio.e_sample},
        {"death_threshold", c.radio.death_threshold}}},
      {"harvest",
       {{"transfer_efficiency", c.harvest.transfer_efficiency},
        {"d_min", c.harvest.d_min},
        {"dwell_time", c.harvest.dwell_time},
        {"harvester_speed", c.harvest.harvester_speed},
        {"harvester_capacity", c.harvest.harvester_capacity},
        {"allow_revival", c.harvest.allow_revival},
        {"carry_over", c.harvest.carry_over}}},
  };
  j["bs_position"] = c.bs_position ? json::array({c.bs_position->x, c.bs_position->y}) : json(nullptr);
  j["depot_position"] =
      c.depot_position ? json::array({c.depot_position->x, c.depot_position->y}) : json(nullptr);
  return j;
}

}  // namespace wsnsim
