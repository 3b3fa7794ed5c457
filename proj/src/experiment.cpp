#include "redist/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "redist/objective.hpp"

namespace redist {

namespace {

// Shortest round-trippable decimal representation of a double.
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    // Try shorter forms first for readability.
    for (int prec = 1; prec <= 16; ++prec) {
      std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
      if (std::strtod(buf, nullptr) == v) break;
    }
  }
  return buf;
}

}  // namespace

const std::vector<std::string>& known_presets() {
  static const std::vector<std::string> presets = {
      "greedy", "kl", "tabu", "greedy_cm", "kl_cm", "tabu_cm"};
  return presets;
}

SearchConfig preset_config(const std::string& preset, const SearchConfig& base) {
  SearchConfig c = base;
  std::string method = preset;
  c.composite_enabled = false;
  if (method.size() > 3 && method.ends_with("_cm")) {
    c.composite_enabled = true;
    method = method.substr(0, method.size() - 3);
  }
  c.method = method_from_string(method);
  return c;
}

ExperimentResult run_experiment(const Instance& instance,
                                const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  ExperimentResult result;
  const bool write_files = !config.output_dir.empty();
  if (write_files) fs::create_directories(config.output_dir);

  SearchConfig base;
  base.r = config.districts;
  base.weight_popdev = config.weight_popdev;
  base.weight_compactness = config.weight_compactness;
  base.seed = config.base_seed;

  for (const std::string& preset : config.presets) {
    SearchConfig sc = preset_config(preset, base);
    auto runs = multi_restart(instance, sc, config.restarts, config.parallelism);
    std::vector<double> scores, times;
    scores.reserve(runs.size());
    times.reserve(runs.size());
    for (const RunResult& r : runs) {
      scores.push_back(r.best_value.combined);
      times.push_back(r.seconds);
    }
    result.stats[preset] = summarize(scores, times);
    result.scores[preset] = scores;
    result.times[preset] = times;

    if (write_files) {
      // Scores and times live in separate files: score files depend only on
      // the seed, so reruns are byte-identical; timings never are.
      std::ofstream sf(fs::path(config.output_dir) / ("scores_" + preset + ".csv"));
      sf << "restart,score\n";
      for (std::size_t i = 0; i < scores.size(); ++i)
        sf << i << "," << fmt_double(scores[i]) << "\n";
      std::ofstream tf(fs::path(config.output_dir) / ("times_" + preset + ".csv"));
      tf << "restart,seconds\n";
      for (std::size_t i = 0; i < times.size(); ++i)
        tf << i << "," << fmt_double(times[i]) << "\n";
    }
  }

  for (std::size_t i = 0; i < config.presets.size(); ++i)
    for (std::size_t j = i + 1; j < config.presets.size(); ++j) {
      const std::string& a = config.presets[i];
      const std::string& b = config.presets[j];
      result.pairwise[a + "_vs_" + b] =
          rank_sum_test(result.scores[a], result.scores[b]);
    }

  if (write_files) {
    nlohmann::json summary;
    for (const auto& [preset, st] : result.stats) {
      summary[preset] = {{"min", st.min},       {"p5", st.p5},
                         {"q1", st.q1},         {"median", st.median},
                         {"q3", st.q3},         {"p95", st.p95},
                         {"max", st.max},       {"iqr", st.iqr},
                         {"stddev", st.stddev},
                         {"mean_time_per_run", st.mean_time_per_run}};
    }
    std::ofstream(fs::path(config.output_dir) / "summary.json")
        << summary.dump(2) << "\n";

    nlohmann::json tests;
    for (const auto& [name, rs] : result.pairwise)
      tests[name] = {{"u", rs.u}, {"p_value", rs.p_value}, {"exact", rs.exact}};
    std::ofstream(fs::path(config.output_dir) / "pairwise_tests.json")
        << tests.dump(2) << "\n";
  }
  return result;
}

void write_plan_csv(const Instance& instance, const Plan& plan,
                    std::ostream& out) {
  out << "unit_id,district\n";
  for (int u = 0; u < instance.size(); ++u)
    out << instance.id_of(u) << "," << plan.assignment[u] << "\n";
}

Plan read_plan_csv(const Instance& instance, std::istream& in) {
  Plan plan;
  plan.assignment.assign(instance.size(), -1);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("plan csv: empty stream");
  int max_d = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string id_str, d_str;
    if (!std::getline(row, id_str, ',') || !std::getline(row, d_str, ','))
      throw std::invalid_argument("plan csv: malformed row: " + line);
    int u = instance.index_of(std::stoll(id_str));
    if (u < 0) throw std::invalid_argument("plan csv: unknown unit " + id_str);
    int d = std::stoi(d_str);
    if (d < 0) throw std::invalid_argument("plan csv: negative district");
    if (plan.assignment[u] != -1)
      throw std::invalid_argument("plan csv: duplicate unit " + id_str);
    plan.assignment[u] = d;
    max_d = std::max(max_d, d);
  }
  for (int u = 0; u < instance.size(); ++u)
    if (plan.assignment[u] == -1)
      throw std::invalid_argument("plan csv: unit " +
                                  std::to_string(instance.id_of(u)) +
                                  " unassigned");
  plan.num_districts = max_d + 1;
  return plan;
}

PlanReport validate_plan(const Instance& instance, const Plan& plan) {
  PlanReport report;
  auto aggs = build_aggregates(instance, plan);
  for (int d = 0; d < plan.num_districts; ++d) {
    if (!is_contiguous(instance, plan, d)) {
      report.all_contiguous = false;
      report.discontiguous_districts.push_back(d);
    }
    report.popdev += pop_dev_term(aggs[d].population, plan.num_districts,
                                  instance.total_population());
    report.district_ppi.push_back(
        aggs[d].area > 0 && aggs[d].perimeter > 0
            ? ppi(aggs[d].area, aggs[d].perimeter)
            : 0.0);
  }
  bool geometry_ok = true;
  for (const auto& a : aggs)
    if (a.area <= 0 || a.perimeter <= 0) geometry_ok = false;
  if (geometry_ok)
    report.compactness_value = compactness(aggs, instance.total_population());
  return report;
}

void write_plan_summary_json(const Instance& instance, const Plan& plan,
                             std::ostream& out) {
  PlanReport report = validate_plan(instance, plan);
  auto aggs = build_aggregates(instance, plan);
  nlohmann::json j;
  j["num_districts"] = plan.num_districts;
  j["all_contiguous"] = report.all_contiguous;
  j["discontiguous_districts"] = report.discontiguous_districts;
  j["popdev"] = report.popdev;
  j["compactness"] = report.compactness_value;
  nlohmann::json districts = nlohmann::json::array();
  for (int d = 0; d < plan.num_districts; ++d) {
    districts.push_back({{"district", d},
                         {"population", aggs[d].population},
                         {"area", aggs[d].area},
                         {"perimeter", aggs[d].perimeter},
                         {"unit_count", aggs[d].unit_count},
                         {"ppi", report.district_ppi[d]}});
  }
  j["districts"] = districts;
  out << j.dump(2) << "\n";
}

}  // namespace redist
