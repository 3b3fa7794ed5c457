#pragma once

#include <vector>

namespace redist {

/// Distributional summary of a restart ensemble. Percentiles use the
/// nearest-rank rule (ceil(q*n)-th order statistic); stddev is the sample
/// (n-1) form.
struct RunStats {
  double min = 0, p5 = 0, q1 = 0, median = 0, q3 = 0, p95 = 0, max = 0;
  double iqr = 0;
  double stddev = 0;
  double mean_time_per_run = 0;
};

RunStats summarize(const std::vector<double>& scores,
                   const std::vector<double>& times);

struct RankSumResult {
  double u = 0;        // Mann-Whitney U for the first sample
  double p_value = 1;  // two-sided
  bool exact = false;
};

/// Mann-Whitney-Wilcoxon with midrank ties. Exact enumeration when both
/// samples have at most 8 observations, normal approximation with tie
/// correction otherwise.
RankSumResult rank_sum_test(const std::vector<double>& a,
                            const std::vector<double>& b);

}  // namespace redist
