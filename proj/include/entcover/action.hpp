#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "entcover/estimate.hpp"
#include "entcover/group.hpp"
#include "entcover/topology.hpp"

namespace entcover {

using Perm = std::vector<int>;

// Continuous action of a finitely generated group on a finite space by
// homeomorphisms, given by one point permutation per generator. The
// constructor checks continuity, bijectivity, and consistency of the
// action law on products of generators.
class FiniteAction {
 public:
  FiniteAction(std::shared_ptr<const GroupModel> group, FiniteSpace space,
               std::vector<Perm> generator_maps);

  const GroupModel& group() const { return *group_; }
  std::shared_ptr<const GroupModel> group_ptr() const { return group_; }
  const FiniteSpace& space() const { return space_; }

  // Point permutation of an arbitrary group element, resolved by breadth
  // first search over generators and their inverses.
  Perm permutation_for(const Element& g) const;

  PointSet apply(const Perm& p, PointSet a) const;
  PointSet apply(const Element& g, PointSet a) const;

 private:
  std::shared_ptr<const GroupModel> group_;
  FiniteSpace space_;
  std::vector<Perm> gen_maps_;
  // Behind a pointer so actions stay movable.
  std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
  mutable std::map<Element, Perm> perm_cache_;
};

// True iff for every g in W the image cover alpha(g,V) refines U.
bool s_refines(const FiniteAction& act, const Cover& v, const Cover& u,
               const std::vector<Element>& w);

// All maximal open N with U W-refined by the single-set cover {N}. Every
// admissible open set is contained in some returned set.
std::vector<PointSet> admissible_sets(const FiniteAction& act, const Cover& u,
                                      const std::vector<Element>& w);

struct RefinementResult {
  int value = 0;
  Cover optimal_cover;
  bool exhaustive = true;          // false: bracketed greedy run beyond caps
  std::vector<int> separated_points;  // pairwise non-co-coverable points
  int lower_bound = 0;             // = value when exhaustive
};

// Exact minimum cardinality of a W-refining cover of U, with witnesses.
// Branch-and-bound over maximal admissible sets, seeded by a greedy cover.
RefinementResult min_refining_cover(const FiniteAction& act, const Cover& u,
                                    const std::vector<Element>& w,
                                    std::size_t exhaustive_member_cap = 16);

// Values (S^n : U)_alpha for n = 1..n_max.
std::vector<std::pair<int, int>> complexity_sequence(const FiniteAction& act,
                                                     const Cover& u, int n_max);

EstimateReport entropy_estimate(const FiniteAction& act, const Cover& u, int n_max);

struct ComparisonReport {
  int m = 0;  // least k with T in S^k
  int n = 0;  // least k with S in T^k
  std::vector<int> s_values;   // (S^k : U) for k = 1..n_max
  std::vector<int> t_values;   // (T^(k*n) : U) for k = 1..n_max
  bool inequality_holds = true;
  double slope_ratio = 0.0;    // tail slope(S) / tail slope(T)
};

ComparisonReport compare_generating_sets(const FiniteAction& act,
                                         const std::vector<Element>& t_gens,
                                         const Cover& u, int n_max);

}  // namespace entcover
