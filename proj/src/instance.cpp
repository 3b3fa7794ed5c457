#include "redist/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace redist {

Instance::Instance(std::vector<Unit> units, std::vector<Edge> edges)
    : units_(std::move(units)), edges_(std::move(edges)) {
  id_to_index_.reserve(units_.size());
  for (int i = 0; i < static_cast<int>(units_.size()); ++i) {
    auto [it, inserted] = id_to_index_.emplace(units_[i].id, i);
    if (!inserted)
      throw InstanceError("duplicate unit id " + std::to_string(units_[i].id));
    total_population_ += units_[i].population;
  }
  adjacency_.assign(units_.size(), {});
  for (const Edge& e : edges_) {
    int iu = index_of(e.u);
    int iv = index_of(e.v);
    if (iu < 0 || iv < 0)
      throw InstanceError("edge references unknown unit id " +
                          std::to_string(iu < 0 ? e.u : e.v));
    if (iu == iv)
      throw InstanceError("self-loop edge on unit id " + std::to_string(e.u));
    adjacency_[iu].push_back({iv, e.shared_length});
    adjacency_[iv].push_back({iu, e.shared_length});
  }
  // Detect the same unordered pair appearing twice. A repeat with equal
  // shared_length is collapsed; conflicting lengths are an error.
  for (int i = 0; i < size(); ++i) {
    auto& nbrs = adjacency_[i];
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.unit < b.unit; });
    for (std::size_t k = 1; k < nbrs.size(); ++k) {
      if (nbrs[k].unit == nbrs[k - 1].unit) {
        if (nbrs[k].shared_length != nbrs[k - 1].shared_length)
          throw InstanceError(
              "duplicate edge {" + std::to_string(id_of(i)) + "," +
              std::to_string(id_of(nbrs[k].unit)) + "} with conflicting shared_length");
        nbrs.erase(nbrs.begin() + static_cast<long>(k));
        --k;
      }
    }
  }
}

int Instance::index_of(std::int64_t id) const {
  auto it = id_to_index_.find(id);
  return it == id_to_index_.end() ? -1 : it->second;
}

namespace {

int count_components(const Instance& inst) {
  const int n = inst.size();
  if (n == 0) return 0;
  std::vector<char> seen(n, 0);
  int components = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    stack.push_back(s);
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : inst.neighbors(u)) {
        if (!seen[nb.unit]) {
          seen[nb.unit] = 1;
          stack.push_back(nb.unit);
        }
      }
    }
  }
  return components;
}

Instance build_validated(std::vector<Unit> units, std::vector<Edge> edges) {
  Instance inst(std::move(units), std::move(edges));
  auto report = validate_instance(inst);
  if (!report.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& line : report) msg += "\n  " + line;
    throw InstanceError(msg);
  }
  return inst;
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& instance) {
  std::vector<std::string> report;
  std::int64_t pop_sum = 0;
  for (const Unit& u : instance.units()) {
    if (u.population < 0)
      report.push_back("negative population on unit " + std::to_string(u.id));
    if (u.area < 0)
      report.push_back("negative area on unit " + std::to_string(u.id));
    if (u.perimeter < 0)
      report.push_back("negative perimeter on unit " + std::to_string(u.id));
    pop_sum += u.population;
  }
  if (pop_sum != instance.total_population())
    report.push_back("total_population cache inconsistent");
  for (const Edge& e : instance.edges()) {
    int iu = instance.index_of(e.u);
    int iv = instance.index_of(e.v);
    if (iu < 0 || iv < 0) continue;  // construction already rejects these
    if (e.shared_length < 0)
      report.push_back("negative shared_length on edge {" + std::to_string(e.u) +
                       "," + std::to_string(e.v) + "}");
    double cap = std::min(instance.unit(iu).perimeter, instance.unit(iv).perimeter);
    if (e.shared_length > cap)
      report.push_back("shared_length exceeds unit perimeter on edge {" +
                       std::to_string(e.u) + "," + std::to_string(e.v) + "}");
  }
  if (instance.size() > 0) {
    int components = count_components(instance);
    if (components != 1)
      report.push_back("disconnected: " + std::to_string(components) +
                       " components");
  }
  return report;
}

Instance load_instance_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("JSON parse failure: ") + e.what());
  }
  std::vector<Unit> units;
  std::vector<Edge> edges;
  try {
    for (const auto& ju : j.at("units")) {
      Unit u;
      u.id = ju.at("id").get<std::int64_t>();
      u.population = ju.at("population").get<std::int64_t>();
      u.area = ju.at("area").get<double>();
      u.perimeter = ju.at("perimeter").get<double>();
      units.push_back(u);
    }
    for (const auto& je : j.at("edges")) {
      Edge e;
      e.u = je.at("u").get<std::int64_t>();
      e.v = je.at("v").get<std::int64_t>();
      e.shared_length = je.at("shared_length").get<double>();
      edges.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("JSON schema failure: ") + e.what());
  }
  return build_validated(std::move(units), std::move(edges));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

Instance load_instance_csv(std::istream& units_csv, std::istream& edges_csv) {
  std::vector<Unit> units;
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(units_csv, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_line(line);
    if (lineno == 1 && f.size() >= 1 && f[0] == "id") continue;  // header
    if (f.size() != 4)
      throw InstanceError("units.csv line " + std::to_string(lineno) +
                          ": expected 4 fields");
    try {
      units.push_back({std::stoll(f[0]), std::stoll(f[1]), std::stod(f[2]),
                       std::stod(f[3])});
    } catch (const std::exception&) {
      throw InstanceError("units.csv line " + std::to_string(lineno) +
                          ": parse failure");
    }
  }
  lineno = 0;
  while (std::getline(edges_csv, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_line(line);
    if (lineno == 1 && f.size() >= 1 && f[0] == "u") continue;
    if (f.size() != 3)
      throw InstanceError("edges.csv line " + std::to_string(lineno) +
                          ": expected 3 fields");
    try {
      edges.push_back({std::stoll(f[0]), std::stoll(f[1]), std::stod(f[2])});
    } catch (const std::exception&) {
      throw InstanceError("edges.csv line " + std::to_string(lineno) +
                          ": parse failure");
    }
  }
  return build_validated(std::move(units), std::move(edges));
}

Instance load_instance(std::istream& in, InstanceFormat format) {
  if (format == InstanceFormat::json) return load_instance_json(in);
  throw InstanceError(
      "csv-pair format needs two streams; use load_instance_csv");
}

void export_instance_json(const Instance& instance, std::ostream& out) {
  nlohmann::json j;
  j["units"] = nlohmann::json::array();
  for (const Unit& u : instance.units())
    j["units"].push_back({{"id", u.id},
                          {"population", u.population},
                          {"area", u.area},
                          {"perimeter", u.perimeter}});
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : instance.edges())
    j["edges"].push_back(
        {{"u", e.u}, {"v", e.v}, {"shared_length", e.shared_length}});
  out << j.dump(2) << "\n";
}

Instance generate_grid(int rows, int cols, const PopulationModel& model,
                       std::uint64_t seed) {
  if (rows < 1 || cols < 1)
    throw InstanceError("generate_grid: rows and cols must be positive");
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> lognormal(model.mu, model.sigma);
  std::vector<Unit> units;
  units.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Unit u;
      u.id = static_cast<std::int64_t>(r) * cols + c;
      u.area = 1.0;
      u.perimeter = 4.0;
      if (model.kind == PopulationModel::Kind::uniform) {
        u.population = model.uniform_value;
      } else {
        u.population = std::max<std::int64_t>(
            0, static_cast<std::int64_t>(std::llround(lognormal(rng))));
      }
      units.push_back(u);
    }
  }
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::int64_t id = static_cast<std::int64_t>(r) * cols + c;
      if (c + 1 < cols) edges.push_back({id, id + 1, 1.0});
      if (r + 1 < rows) edges.push_back({id, id + cols, 1.0});
    }
  }
  return build_validated(std::move(units), std::move(edges));
}

Instance load_instance_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".json")) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open " + path);
    return load_instance_json(in);
  }
  // Otherwise treat as a directory holding units.csv + edges.csv, or a
  // comma-separated "units.csv,edges.csv" pair.
  std::string units_path, edges_path;
  auto comma = path.find(',');
  if (comma != std::string::npos) {
    units_path = path.substr(0, comma);
    edges_path = path.substr(comma + 1);
  } else {
    units_path = path + "/units.csv";
    edges_path = path + "/edges.csv";
  }
  std::ifstream units_in(units_path), edges_in(edges_path);
  if (!units_in) throw InstanceError("cannot open " + units_path);
  if (!edges_in) throw InstanceError("cannot open " + edges_path);
  return load_instance_csv(units_in, edges_in);
}

}  // namespace redist
