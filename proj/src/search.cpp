#include "redist/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace redist {

Method method_from_string(const std::string& name) {
  if (name == "greedy") return Method::greedy;
  if (name == "kl") return Method::kl;
  if (name == "tabu") return Method::tabu;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::greedy: return "greedy";
    case Method::kl: return "kl";
    case Method::tabu: return "tabu";
  }
  return "?";
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 over base advanced by the restart index.
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Plan init_plan(const Instance& instance, int r, std::uint64_t seed) {
  const int n = instance.size();
  if (r < 1 || r > n)
    throw std::invalid_argument("init_plan: r must be in [1, n]");
  std::mt19937_64 rng(seed);

  Plan plan;
  plan.num_districts = r;
  plan.assignment.assign(n, -1);

  // r distinct random seed units (partial Fisher-Yates).
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < r; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
    plan.assignment[order[i]] = i;
  }

  int unassigned = n - r;
  std::vector<int> candidates;
  std::vector<char> marked(n, 0);
  while (unassigned > 0) {
    for (int d = 0; d < r && unassigned > 0; ++d) {
      // Distinct unassigned neighbors of district d's current extent.
      candidates.clear();
      for (int u = 0; u < n; ++u) {
        if (plan.assignment[u] != d) continue;
        for (const Neighbor& nb : instance.neighbors(u)) {
          if (plan.assignment[nb.unit] == -1 && !marked[nb.unit]) {
            marked[nb.unit] = 1;
            candidates.push_back(nb.unit);
          }
        }
      }
      for (int u : candidates) marked[u] = 0;
      if (candidates.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      plan.assignment[candidates[pick(rng)]] = d;
      --unassigned;
    }
  }
  return plan;
}

namespace {

struct MoveIdentity {
  std::vector<int> members;
  int source;
  int dest;
  bool operator==(const MoveIdentity&) const = default;
};

struct MoveIdentityHash {
  std::size_t operator()(const MoveIdentity& id) const {
    std::size_t h = std::hash<int>()(id.source * 8191 + id.dest);
    for (int u : id.members) h = h * 1000003u + static_cast<std::size_t>(u) + 1;
    return h;
  }
};

/// Bounded FIFO of prohibited move identities. capacity 0 disables the list,
/// capacity < 0 means entries never expire.
class TabuList {
 public:
  explicit TabuList(std::int64_t capacity) : capacity_(capacity) {}

  void insert(MoveIdentity id) {
    if (capacity_ == 0) return;
    ++counts_[id];
    if (capacity_ > 0) {
      fifo_.push_back(std::move(id));
      while (static_cast<std::int64_t>(fifo_.size()) > capacity_) {
        auto it = counts_.find(fifo_.front());
        if (it != counts_.end() && --it->second == 0) counts_.erase(it);
        fifo_.pop_front();
      }
    }
  }

  bool contains(const MoveIdentity& id) const { return counts_.count(id) > 0; }

 private:
  std::int64_t capacity_;
  std::deque<MoveIdentity> fifo_;
  std::unordered_map<MoveIdentity, int, MoveIdentityHash> counts_;
};

MoveIdentity identity_of(const Move& m) { return {m.members, m.source, m.dest}; }
MoveIdentity reverse_of(const Move& m) { return {m.members, m.dest, m.source}; }

struct Candidate {
  Move m1;
  Move m2;  // meaningful only when is_switch
  bool is_switch = false;
  double delta = 0.0;
};

void debug_check(const Instance& instance, const Plan& plan,
                 const std::vector<DistrictAggregate>& aggs, int a, int b) {
  for (int d : {a, b}) {
    if (aggs[d].unit_count < 1)
      throw std::logic_error("debug oracle: empty district");
    if (!is_contiguous(instance, plan, d))
      throw std::logic_error("debug oracle: discontiguous district");
  }
  auto fresh = build_aggregates(instance, plan);
  for (int d = 0; d < plan.num_districts; ++d) {
    if (fresh[d].population != aggs[d].population ||
        fresh[d].unit_count != aggs[d].unit_count)
      throw std::logic_error("debug oracle: integer aggregate drift");
    double scale = std::max(1.0, std::abs(fresh[d].perimeter));
    if (std::abs(fresh[d].perimeter - aggs[d].perimeter) > 1e-9 * scale ||
        std::abs(fresh[d].area - aggs[d].area) > 1e-9 * std::max(1.0, fresh[d].area))
      throw std::logic_error("debug oracle: real aggregate drift");
  }
}

}  // namespace

RunResult run(const Instance& instance, const SearchConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = instance.size();

  std::int64_t k = 0;
  std::int64_t max_nim = 0;
  switch (config.method) {
    case Method::greedy:
      k = 0;
      max_nim = 0;
      break;
    case Method::kl:
      k = -1;
      max_nim = std::numeric_limits<std::int64_t>::max();
      break;
    case Method::tabu:
      k = std::llround(config.tabu_factor * n);
      max_nim = std::llround(config.nim_factor * n);
      break;
  }

  ObjectiveConfig obj;
  obj.weight_popdev = config.weight_popdev;
  obj.weight_compactness = config.weight_compactness;
  obj.r = config.r;
  obj.total_population = instance.total_population();
  if (obj.weight_popdev <= 0 && obj.weight_compactness <= 0)
    throw std::invalid_argument("run: at least one objective weight must be positive");

  std::mt19937_64 rng(mix_seed(config.seed, 0x5ea2c4));
  Plan plan = init_plan(instance, config.r, config.seed);
  auto aggs = build_aggregates(instance, plan);
  CandidatePool pool =
      enumerate_candidates(instance, plan, config.composite_enabled);

  ObjectiveValue current = evaluate(aggs, obj);
  RunResult result;
  result.best_plan = plan;
  result.best_value = current;

  TabuList tabu(config.method == Method::kl ? 0 : k);
  std::vector<char> unit_moved(n, 0);
  std::int64_t non_improving = 0;

  auto move_allowed = [&](const Move& m) {
    if (config.method == Method::kl) {
      for (int u : m.members)
        if (unit_moved[u]) return false;
      return true;
    }
    if (tabu.contains(identity_of(m))) {
      if (!config.aspiration) return false;
      double predicted =
          current.combined - score_move(m, aggs[m.source], aggs[m.dest], obj);
      return predicted < result.best_value.combined;
    }
    return true;
  };

  while (result.iterations < config.max_iterations) {
    std::vector<Candidate> top;
    double best_delta = -std::numeric_limits<double>::infinity();
    auto offer = [&](Candidate c) {
      if (top.empty() || c.delta > best_delta) {
        best_delta = c.delta;
        top.clear();
        top.push_back(std::move(c));
      } else if (c.delta == best_delta) {
        top.push_back(std::move(c));
      }
    };

    for (const auto& [key, moves] : pool.pairs()) {
      for (const Move& m : moves) {
        if (!move_allowed(m)) continue;
        offer(Candidate{m, {}, false,
                        score_move(m, aggs[m.source], aggs[m.dest], obj)});
      }
    }
    auto switch_allowed = [&](const Move& m1, const Move& m2) {
      return move_allowed(m1) && move_allowed(m2);
    };
    for (const auto& [key, moves] : pool.pairs()) {
      auto [a, b] = key;
      if (a > b) continue;  // one evaluation per unordered pair
      const auto* back = pool.moves_between(b, a);
      if (!back) continue;
      auto sw = best_switch(moves, *back, instance, aggs, obj,
                            config.switch_window, switch_allowed);
      if (sw) offer(Candidate{sw->m1, sw->m2, true, sw->delta});
    }
    if (top.empty()) break;  // no feasible non-tabu candidate remains

    std::uniform_int_distribution<std::size_t> pick(0, top.size() - 1);
    Candidate chosen = top[pick(rng)];  // copy: the pool mutates below

    double predicted = current.combined - chosen.delta;
    bool improves = predicted < result.best_value.combined;
    if (!improves && non_improving + 1 > max_nim) break;

    int src = chosen.m1.source;
    int dst = chosen.m1.dest;
    if (chosen.is_switch) {
      apply_switch(instance, plan, aggs, chosen.m1, chosen.m2);
      ++result.accepted_switches;
    } else {
      apply_move(instance, plan, aggs, chosen.m1);
      ++result.accepted_moves;
    }
    if (config.method == Method::kl) {
      for (int u : chosen.m1.members) unit_moved[u] = 1;
      if (chosen.is_switch)
        for (int u : chosen.m2.members) unit_moved[u] = 1;
    } else {
      tabu.insert(identity_of(chosen.m1));
      tabu.insert(reverse_of(chosen.m1));
      if (chosen.is_switch) {
        tabu.insert(identity_of(chosen.m2));
        tabu.insert(reverse_of(chosen.m2));
      }
    }
    update_candidates(pool, instance, plan, src, dst, config.composite_enabled);
    if (config.debug_oracle) debug_check(instance, plan, aggs, src, dst);

    current = evaluate(aggs, obj);
    ++result.iterations;
    if (current.combined < result.best_value.combined) {
      result.best_value = current;
      result.best_plan = plan;
      non_improving = 0;
    } else {
      ++non_improving;
      if (non_improving > max_nim) break;
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

std::vector<RunResult> multi_restart(const Instance& instance,
                                     const SearchConfig& config, int restarts,
                                     int parallelism) {
  if (restarts < 1)
    throw std::invalid_argument("multi_restart: restarts must be >= 1");
  std::vector<RunResult> results(restarts);
  parallelism = std::max(1, parallelism);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= restarts || failed.load()) return;
      SearchConfig c = config;
      c.seed = mix_seed(config.seed, static_cast<std::uint64_t>(i));
      try {
        results[i] = run(instance, c);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed = true;
        error = e.what();
        return;
      }
    }
  };
  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(parallelism);
    for (int t = 0; t < parallelism; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failed) throw std::runtime_error("multi_restart: " + error);
  return results;
}

}  // namespace redist
