#pragma once

#include <vector>

namespace entcover {

// Finite-n proxy for the limsup of log2(value)/n. Never claims a limit:
// all per-n slopes are reported, together with the max over the last
// ceil(n_max/2) entries and the slope at n_max itself.
struct EstimateReport {
  std::vector<double> slopes;  // slopes[i] = log2(value at n=i+1)/(i+1)
  double tail_max = 0.0;       // max slope over the last ceil(n_max/2) radii
  double last_slope = 0.0;     // slope at n = n_max
  int stabilized_at = -1;      // least n from which values are constant, -1 if never
};

// log2_values[i] = log2 of the complexity value at radius n = i+1.
EstimateReport estimate_from_log2(const std::vector<double>& log2_values,
                                  const std::vector<bool>& equal_to_next);

}  // namespace entcover
