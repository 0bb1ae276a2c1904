#pragma once

#include <optional>
#include <vector>

#include "entcover/action.hpp"
#include "entcover/topology.hpp"

namespace entcover {

struct BipartiteRelation {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> pairs;
};

// Exactly one of the two variants is present: a full injective matching
// respecting the relation, or a left subset violating Hall's condition.
struct MatchingResult {
  std::optional<std::vector<int>> injection;  // left index -> right index
  std::optional<std::vector<int>> violator;   // left subset Z with |Z| > |N(Z)|
};

MatchingResult hall_matching(const BipartiteRelation& r);

// Neighborhood of a left subset, for checking violators.
std::vector<int> relation_neighborhood(const BipartiteRelation& r,
                                       const std::vector<int>& z);

// Injective map u -> v with u meeting its image, under the minimality
// hypothesis that u is a minimum-cardinality cover among subfamilies of
// the ambient family n. Precondition (3) is verified by exact search.
std::vector<int> refinement_map(const FiniteSpace& space, const Cover& u,
                                const Cover& v, const std::vector<PointSet>& n);

}  // namespace entcover
