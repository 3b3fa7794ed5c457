#include "redist/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace redist {

std::int64_t pop_dev_term(std::int64_t population, int r, std::int64_t total) {
  // floor(|p - total/r|) with the ideal kept exact: scale by r and use
  // integer division (all quantities non-negative after the abs).
  std::int64_t scaled = std::llabs(r * population - total);
  return scaled / r;
}

std::int64_t pop_dev(const std::vector<std::int64_t>& district_populations,
                     int r, std::int64_t total) {
  if (r <= 0) throw std::invalid_argument("pop_dev: r must be positive");
  if (static_cast<int>(district_populations.size()) != r)
    throw std::invalid_argument("pop_dev: r does not match list length");
  std::int64_t sum = 0;
  for (std::int64_t p : district_populations) sum += pop_dev_term(p, r, total);
  return sum;
}

double ppi(double area, double perimeter) {
  if (area <= 0 || perimeter <= 0)
    throw std::invalid_argument("ppi: area and perimeter must be positive");
  return 4.0 * std::numbers::pi * area / (perimeter * perimeter);
}

namespace {

double compactness_term(double area, double perimeter, std::int64_t total_pop) {
  return (static_cast<double>(total_pop) / 1000.0) * (1.0 - ppi(area, perimeter));
}

}  // namespace

double compactness(const std::vector<DistrictAggregate>& aggregates,
                   std::int64_t total_population) {
  double sum = 0;
  for (const DistrictAggregate& a : aggregates)
    sum += compactness_term(a.area, a.perimeter, total_population);
  return sum;
}

ObjectiveValue evaluate(const std::vector<DistrictAggregate>& aggregates,
                        const ObjectiveConfig& config) {
  ObjectiveValue v;
  for (const DistrictAggregate& a : aggregates)
    v.popdev += pop_dev_term(a.population, config.r, config.total_population);
  bool geometry_ok = true;
  for (const DistrictAggregate& a : aggregates)
    if (a.area <= 0 || a.perimeter <= 0) geometry_ok = false;
  if (geometry_ok)
    v.compactness = compactness(aggregates, config.total_population);
  else if (config.weight_compactness != 0.0)
    throw std::invalid_argument("evaluate: degenerate district geometry");
  v.combined = config.weight_popdev * static_cast<double>(v.popdev) +
               config.weight_compactness * v.compactness;
  return v;
}

double score_move(const Move& move, const DistrictAggregate& source_agg,
                  const DistrictAggregate& dest_agg,
                  const ObjectiveConfig& config) {
  std::int64_t dpop = 0;
  if (config.weight_popdev != 0.0) {
    std::int64_t old_terms =
        pop_dev_term(source_agg.population, config.r, config.total_population) +
        pop_dev_term(dest_agg.population, config.r, config.total_population);
    std::int64_t new_terms =
        pop_dev_term(source_agg.population - move.population, config.r,
                     config.total_population) +
        pop_dev_term(dest_agg.population + move.population, config.r,
                     config.total_population);
    dpop = old_terms - new_terms;
  }
  double dcomp = 0;
  if (config.weight_compactness != 0.0) {
    double dissolved = move.dissolved_perimeter();
    double src_perim_new =
        source_agg.perimeter - dissolved + 2.0 * move.shared_src_rest;
    double dst_perim_new =
        dest_agg.perimeter + dissolved - 2.0 * move.shared_dest;
    double old_terms = compactness_term(source_agg.area, source_agg.perimeter,
                                        config.total_population) +
                       compactness_term(dest_agg.area, dest_agg.perimeter,
                                        config.total_population);
    double new_terms =
        compactness_term(source_agg.area - move.area, src_perim_new,
                         config.total_population) +
        compactness_term(dest_agg.area + move.area, dst_perim_new,
                         config.total_population);
    dcomp = old_terms - new_terms;
  }
  return config.weight_popdev * static_cast<double>(dpop) +
         config.weight_compactness * dcomp;
}

double score_switch(const Move& m1, const Move& m2, const Instance& instance,
                    const std::vector<DistrictAggregate>& aggregates,
                    const ObjectiveConfig& config) {
  const int a = m1.source;
  const int b = m1.dest;
  const DistrictAggregate& agg_a = aggregates[a];
  const DistrictAggregate& agg_b = aggregates[b];

  std::int64_t dpop = 0;
  if (config.weight_popdev != 0.0) {
    std::int64_t pa_new = agg_a.population - m1.population + m2.population;
    std::int64_t pb_new = agg_b.population - m2.population + m1.population;
    dpop = pop_dev_term(agg_a.population, config.r, config.total_population) +
           pop_dev_term(agg_b.population, config.r, config.total_population) -
           pop_dev_term(pa_new, config.r, config.total_population) -
           pop_dev_term(pb_new, config.r, config.total_population);
  }
  double dcomp = 0;
  if (config.weight_compactness != 0.0) {
    // Shared length between the two member sets; both sets are small.
    double s12 = 0;
    std::vector<char> in_m2(instance.size(), 0);
    for (int u : m2.members) in_m2[u] = 1;
    for (int u : m1.members)
      for (const Neighbor& nb : instance.neighbors(u))
        if (in_m2[nb.unit]) s12 += nb.shared_length;

    double d1 = m1.dissolved_perimeter();
    double d2 = m2.dissolved_perimeter();
    double perim_a_new = agg_a.perimeter - d1 + 2.0 * m1.shared_src_rest + d2 -
                         2.0 * (m2.shared_dest - s12);
    double perim_b_new = agg_b.perimeter - d2 + 2.0 * m2.shared_src_rest + d1 -
                         2.0 * (m1.shared_dest - s12);
    double area_a_new = agg_a.area - m1.area + m2.area;
    double area_b_new = agg_b.area - m2.area + m1.area;
    dcomp = compactness_term(agg_a.area, agg_a.perimeter, config.total_population) +
            compactness_term(agg_b.area, agg_b.perimeter, config.total_population) -
            compactness_term(area_a_new, perim_a_new, config.total_population) -
            compactness_term(area_b_new, perim_b_new, config.total_population);
  }
  return config.weight_popdev * static_cast<double>(dpop) +
         config.weight_compactness * dcomp;
}

}  // namespace redist
