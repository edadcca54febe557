// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/config_io.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/harvester.hpp"
#include "wsnsim/metrics_io.hpp"
#include "wsnsim/random.hpp"
#include "wsnsim/tour.hpp"

using namespace wsnsim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SimConfig preset(const char* name, std::uint64_t seed = 42) {
  SimConfig c;
  apply_preset(name, c);
  c.rng_seed = seed;
  return c;
}

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome conservation() {
  const auto t0 = Clock::now();
  const auto cfg = validate_config(preset("n50"));
  double worst = 0.0;
  std::uint32_t rounds = 0;
  run(cfg, [&](const SimState&, const RoundTrace& t) {
    const double lhs = t.energy_after - t.energy_before;
    const double rhs = t.visits.delivered - t.ledger.total;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
    ++rounds;
  });
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%u rounds, worst relative error %.3g, %.3f s", rounds, worst, secs);
  return {rounds == 50 && worst <= 1e-9 && secs < 1.0, buf};
}

Outcome determinism() {
  const auto cfg = validate_config(preset("n150"));
  const auto a = format_csv(run(cfg));
  const auto b = format_csv(run(validate_config(preset("n150"))));
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes, identical=" + (a == b ? "yes" : "no")};
}

Outcome baseline_vs_harvest() {
  auto off = preset("n50");
  off.harvester_enabled = false;
  const auto base = run(validate_config(off));
  const auto harv = run(validate_config(preset("n50")));
  bool monotone = true;
  for (std::size_t i = 1; i < base.size(); ++i) monotone &= base[i].alive_count <= base[i - 1].alive_count;
  const auto hb = harv.back().alive_count;
  const auto bb = base.back().alive_count;
  return {monotone && bb < hb && hb > 0,
          "final alive harvesting=" + std::to_string(hb) + " baseline=" + std::to_string(bb) +
              ", baseline non-increasing=" + (monotone ? "yes" : "no")};
}

Outcome dip_and_recover() {
  const auto cfg = validate_config(preset("n50"));
  const auto s = run(cfg);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].alive_count >= cfg->node_count) continue;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j].alive_count > s[i].alive_count) {
        return {true, "alive " + std::to_string(s[i].alive_count) + " at round " + std::to_string(i) +
                          ", " + std::to_string(s[j].alive_count) + " at round " + std::to_string(j)};
      }
    }
  }
  return {false, "no dip followed by a rise"};
}

Outcome eq1_oracle() {
  RandomStream rng(2024, "eq1");
  HarvestParams p;
  const double capacity = 2.0;
  double worst = 0.0;
  bool capped = true;
  for (int i = 0; i < 1000; ++i) {
    const double e_c = rng.uniform() * capacity;
    const double e_h = rng.uniform() * 5.0;
    const double d = p.d_min + rng.uniform() * 150.0;
    std::vector<NodeState> nodes = {{0, {d, 0.0}, e_c, 0.0}};
    const std::vector<NodeId> who = {0};
    HarvesterState hv;
    const auto g = recharge_cluster(nodes, who, {0.0, 0.0}, e_h, p, capacity, hv);
    const double expected = e_h / (d * d);
    if (g.empty()) return {false, "no gain reported"};
    worst = std::max(worst, std::abs(g[0].nominal - expected) / expected);
    const double want_energy = std::min(e_c + expected, capacity);
    worst = std::max(worst, std::abs(nodes[0].energy() - want_energy) / want_energy);
    capped &= nodes[0].energy() <= capacity;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "1000 triples, worst relative error %.3g, capacity respected=%s", worst,
                capped ? "yes" : "no");
  return {worst <= 1e-12 && capped, buf};
}

Outcome tour_optimality() {
  const auto t0 = Clock::now();
  RandomStream rng(7, "tours");
  double worst_ratio = 0.0;
  bool ge = true;
  bool two_opt_ok = true;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(6));
    std::vector<Waypoint> heads;
    for (std::size_t k = 0; k < n; ++k) {
      heads.push_back({static_cast<NodeId>(k), {rng.uniform() * 100.0, rng.uniform() * 100.0}});
    }
    const Point depot{-10.0, 50.0};
    const Tour nn = nearest_neighbor_tour(heads, depot);
    const double plan = plan_tour(heads, depot).total_length;
    const double best = exact_tour(heads, depot).total_length;
    ge &= plan >= best;
    two_opt_ok &= two_opt(nn).total_length <= nn.total_length;
    worst_ratio = std::max(worst_ratio, plan / best);
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst plan/exact %.4f, plan>=exact=%s, 2-opt<=NN=%s, %.3f s", worst_ratio,
                ge ? "yes" : "no", two_opt_ok ? "yes" : "no", secs);
  return {ge && two_opt_ok && worst_ratio <= 1.2 && secs < 10.0, buf};
}

Outcome election_stats() {
  auto c = preset("n100");
  const auto nodes_init = deploy(validate_config(c)).nodes;
  auto nodes = nodes_init;
  RandomStream rng(42, "elect");
  const double p = 0.05;
  const std::uint32_t epoch = epoch_length(p);
  std::vector<std::uint32_t> last(nodes.size(), std::numeric_limits<std::uint32_t>::max());
  std::size_t total = 0;
  bool rotation = true;
  for (std::uint32_t r = 0; r < 2000; ++r) {
    const auto heads = elect_heads(nodes, r, p, rng);
    total += heads.size();
    for (NodeId h : heads) {
      if (last[h] != std::numeric_limits<std::uint32_t>::max() && last[h] / epoch == r / epoch) rotation = false;
      last[h] = r;
      nodes[h].rounds_since_ch = 0;
    }
    for (auto& n : nodes) {
      if (n.rounds_since_ch < NodeState::kNeverHead) ++n.rounds_since_ch;
    }
  }
  const double mean = static_cast<double>(total) / 2000.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "mean heads per round %.3f, rotation=%s", mean, rotation ? "yes" : "no");
  return {mean >= 4.0 && mean <= 6.0 && rotation, buf};
}

Outcome data_accounting() {
  SimConfig c;
  c.node_count = 10;
  c.ch_probability = 0.2;
  c.initial_energy = 4e-4;  // a few packets' worth, so some heads die mid-round
  c.radio.p_listen = 1e-5;
  c.total_rounds = 60;
  const auto cfg = validate_config(c);
  std::uint64_t prev_bits = 0;
  bool ok = true;
  std::size_t checked = 0;
  std::size_t failed_heads = 0;
  run(cfg, [&](const SimState& s, const RoundTrace& t) {
    std::size_t completed = 0;
    for (const auto& e : t.ledger.log) {
      if (e.action != Action::HeadTxToBs) continue;
      if (e.completed) {
        ++completed;
      } else {
        ++failed_heads;
      }
    }
    const std::uint64_t now = s.history.back().data_received_cumulative;
    ok &= now - prev_bits == static_cast<std::uint64_t>(c.packet_bits) * completed;
    prev_bits = now;
    ++checked;
  });
  return {ok && checked == 60,
          std::to_string(checked) + " rounds recounted, " + std::to_string(failed_heads) + " failed BS transmissions"};
}

Outcome budget_rule() {
  const auto cfg = validate_config(preset("n50"));
  bool ok = true;
  std::optional<double> prev;
  std::size_t with_alloc = 0;
  run(cfg, [&](const SimState&, const RoundTrace& t) {
    const double want = prev ? std::min(cfg->harvest.transfer_efficiency * *prev, cfg->harvest.harvester_capacity)
                             : 0.0;
    ok &= t.budget == want;
    if (!t.allocations.empty()) {
      double s = 0.0;
      for (const auto& [_, v] : t.allocations) s += v;
      ok &= s == t.budget;
      ++with_alloc;
    }
    prev = t.ledger.total;
  });
  return {ok, std::to_string(with_alloc) + " rounds with allocations, all exact=" + (ok ? "yes" : "no")};
}

Outcome scale() {
  const auto t0 = Clock::now();
  const auto s = run(validate_config(preset("n150")));
  const double secs = seconds_since(t0);
  char buf[80];
  std::snprintf(buf, sizeof buf, "n150, %zu rounds in %.3f s", s.size(), secs);
  return {s.size() == 50 && secs < 5.0, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"conservation", conservation},
      {"determinism", determinism},
      {"baseline death vs sustained operation", baseline_vs_harvest},
      {"dip and recover", dip_and_recover},
      {"inverse-square recharge oracle", eq1_oracle},
      {"tour optimality", tour_optimality},
      {"election statistics", election_stats},
      {"data accounting", data_accounting},
      {"budget rule", budget_rule},
      {"scale", scale},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
