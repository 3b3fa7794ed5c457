#include "redist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace redist {

namespace {

// Nearest-rank percentile: the ceil(q*n)-th order statistic (1-based).
double percentile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

}  // namespace

RunStats summarize(const std::vector<double>& scores,
                   const std::vector<double>& times) {
  if (scores.empty())
    throw std::invalid_argument("summarize: empty score list");
  if (!times.empty() && times.size() != scores.size())
    throw std::invalid_argument("summarize: times/scores length mismatch");

  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());

  RunStats s;
  s.min = sorted.front();
  s.p5 = percentile(sorted, 0.05);
  s.q1 = percentile(sorted, 0.25);
  s.median = percentile(sorted, 0.50);
  s.q3 = percentile(sorted, 0.75);
  s.p95 = percentile(sorted, 0.95);
  s.max = sorted.back();
  s.iqr = s.q3 - s.q1;

  const double n = static_cast<double>(sorted.size());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  if (sorted.size() > 1) {
    double ss = 0;
    for (double x : sorted) ss += (x - mean) * (x - mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  if (!times.empty())
    s.mean_time_per_run =
        std::accumulate(times.begin(), times.end(), 0.0) / n;
  return s;
}

namespace {

// Midranks of the pooled sample; returns ranks aligned with the input order.
std::vector<double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mid;
    i = j + 1;
  }
  return ranks;
}

// U statistic of sample 1 from pairwise comparisons (ties count one half).
double u_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a)
    for (double y : b) {
      if (x > y)
        u += 1.0;
      else if (x == y)
        u += 0.5;
    }
  return u;
}

// Exact two-sided p-value by enumerating every split of the pooled sample
// into groups of sizes |a| and |b| (feasible for the small-sample branch).
double exact_p(const std::vector<double>& pooled, std::size_t n1, double u_obs) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> pickv(n1);
  std::iota(pickv.begin(), pickv.end(), 0);
  double total = 0, le = 0, ge = 0;
  const double eps = 1e-9;
  for (;;) {
    std::vector<double> ga, gb;
    std::vector<char> in(n, 0);
    for (std::size_t i : pickv) in[i] = 1;
    for (std::size_t i = 0; i < n; ++i)
      (in[i] ? ga : gb).push_back(pooled[i]);
    double u = u_statistic(ga, gb);
    total += 1.0;
    if (u <= u_obs + eps) le += 1.0;
    if (u >= u_obs - eps) ge += 1.0;
    // Next combination in lexicographic order.
    std::size_t k = n1;
    while (k > 0 && pickv[k - 1] == n - n1 + (k - 1)) --k;
    if (k == 0) break;
    ++pickv[k - 1];
    for (std::size_t t = k; t < n1; ++t) pickv[t] = pickv[t - 1] + 1;
  }
  double p = 2.0 * std::min(le / total, ge / total);
  return std::min(1.0, p);
}

}  // namespace

RankSumResult rank_sum_test(const std::vector<double>& a,
                            const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("rank_sum_test: empty sample");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());

  RankSumResult res;
  std::vector<double> ranks = midranks(pooled);
  double r1 = 0;
  for (std::size_t i = 0; i < n1; ++i) r1 += ranks[i];
  res.u = r1 - static_cast<double>(n1) * (n1 + 1) / 2.0;

  if (n1 <= 8 && n2 <= 8) {
    res.exact = true;
    res.p_value = exact_p(pooled, n1, res.u);
    return res;
  }

  // Normal approximation with tie correction and continuity correction.
  const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
  std::map<double, std::size_t> tie_counts;
  for (double x : pooled) ++tie_counts[x];
  double tie_sum = 0;
  for (const auto& [v, t] : tie_counts) {
    double td = static_cast<double>(t);
    tie_sum += td * td * td - td;
  }
  const double nn = static_cast<double>(n);
  double var = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
               ((nn + 1.0) - tie_sum / (nn * (nn - 1.0)));
  if (var <= 0) {
    res.p_value = 1.0;  // all pooled values identical
    return res;
  }
  double diff = res.u - mu;
  double cc = diff > 0 ? -0.5 : (diff < 0 ? 0.5 : 0.0);
  double z = (diff + cc) / std::sqrt(var);
  res.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  return res;
}

}  // namespace redist
