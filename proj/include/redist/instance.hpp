#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace redist {

struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unit {
  std::int64_t id = 0;
  std::int64_t population = 0;
  double area = 0.0;
  double perimeter = 0.0;
};

struct Edge {
  std::int64_t u = 0;
  std::int64_t v = 0;
  double shared_length = 0.0;
};

struct Neighbor {
  int unit = -1;  // dense index
  double shared_length = 0.0;
};

/// Immutable problem input: units, symmetric adjacency with shared-boundary
/// lengths, and cached totals. Units are addressed by dense index internally;
/// external ids appear only at the I/O boundary.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Unit> units, std::vector<Edge> edges);

  int size() const { return static_cast<int>(units_.size()); }
  const std::vector<Unit>& units() const { return units_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Unit& unit(int idx) const { return units_[idx]; }
  std::int64_t id_of(int idx) const { return units_[idx].id; }
  const std::vector<Neighbor>& neighbors(int idx) const { return adjacency_[idx]; }
  std::int64_t total_population() const { return total_population_; }

  /// Dense index for an external id; -1 if unknown.
  int index_of(std::int64_t id) const;

 private:
  std::vector<Unit> units_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::int64_t, int> id_to_index_;
  std::int64_t total_population_ = 0;
};

enum class InstanceFormat { json, csv_pair };

/// Parses and validates. Throws InstanceError on parse failure or any
/// invariant violation (duplicate id, dangling endpoint, conflicting
/// duplicate edge, disconnected graph, ...).
Instance load_instance(std::istream& in, InstanceFormat format);
Instance load_instance_json(std::istream& in);
Instance load_instance_csv(std::istream& units_csv, std::istream& edges_csv);
Instance load_instance_path(const std::string& path);

void export_instance_json(const Instance& instance, std::ostream& out);

struct PopulationModel {
  enum class Kind { uniform, lognormal } kind = Kind::uniform;
  std::int64_t uniform_value = 1;
  double mu = 0.0;
  double sigma = 1.0;

  static PopulationModel uniform(std::int64_t value) {
    PopulationModel m;
    m.kind = Kind::uniform;
    m.uniform_value = value;
    return m;
  }
  static PopulationModel lognormal(double mu, double sigma) {
    PopulationModel m;
    m.kind = Kind::lognormal;
    m.mu = mu;
    m.sigma = sigma;
    return m;
  }
};

/// 4-neighbor grid; area 1, perimeter 4 per cell, shared_length 1 per
/// interior edge. Deterministic for a given seed.
Instance generate_grid(int rows, int cols, const PopulationModel& model,
                       std::uint64_t seed);

/// Enumerates invariant violations; empty report means valid.
std::vector<std::string> validate_instance(const Instance& instance);

}  // namespace redist
