#include "entcover/estimate.hpp"

#include <algorithm>

#include "entcover/errors.hpp"

namespace entcover {

EstimateReport estimate_from_log2(const std::vector<double>& log2_values,
                                  const std::vector<bool>& equal_to_next) {
  const int n_max = static_cast<int>(log2_values.size());
  if (n_max < 1) throw validation_error("estimate needs at least one value");
  EstimateReport r;
  r.slopes.reserve(log2_values.size());
  for (int n = 1; n <= n_max; ++n)
    r.slopes.push_back(log2_values[static_cast<std::size_t>(n - 1)] / n);
  const int tail_len = (n_max + 1) / 2;
  r.tail_max = *std::max_element(r.slopes.end() - tail_len, r.slopes.end());
  r.last_slope = r.slopes.back();
  if (equal_to_next.size() + 1 == log2_values.size()) {
    int stab = n_max;
    while (stab > 1 && equal_to_next[static_cast<std::size_t>(stab - 2)]) --stab;
    // Only report stabilization if the last observed step did not move.
    if (stab < n_max) r.stabilized_at = stab;
  }
  return r;
}

}  // namespace entcover
