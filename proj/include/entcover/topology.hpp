#pragma once

#include <cstdint>
#include <vector>

namespace entcover {

// Point subsets of a finite space, as bitmasks over at most 64 points.
using PointSet = std::uint64_t;

inline int popcount(PointSet a) { return __builtin_popcountll(a); }

// Finite topological space given by an open basis. Opens are exactly the
// unions of basis sets (plus the empty set); the constructor checks that
// pairwise basis intersections are open, so the result is a topology.
class FiniteSpace {
 public:
  FiniteSpace(int n_points, std::vector<PointSet> open_basis);

  static FiniteSpace discrete(int n);

  int size() const { return n_points_; }
  PointSet full() const { return full_; }
  const std::vector<PointSet>& basis() const { return basis_; }

  bool is_open(PointSet a) const;
  PointSet interior(PointSet a) const;
  // Minimal open set containing point x.
  PointSet min_nbhd(int x) const { return min_nbhd_[static_cast<std::size_t>(x)]; }

 private:
  int n_points_;
  PointSet full_;
  std::vector<PointSet> basis_;
  std::vector<PointSet> min_nbhd_;
};

// Finite open cover. Construction strips empty members, deduplicates, and
// validates that every member is open and the union is the whole space.
struct Cover {
  std::vector<PointSet> sets;

  Cover() = default;
  Cover(const FiniteSpace& space, std::vector<PointSet> members);

  std::size_t size() const { return sets.size(); }
};

// True iff every member of v lies inside some member of u.
bool refines(const Cover& v, const Cover& u);

// Greedy set cover; deterministic tie-breaking by index.
std::vector<int> greedy_set_cover(const std::vector<PointSet>& candidates,
                                  PointSet universe);

// Exact minimum set cover by branch-and-bound seeded with the greedy
// solution. Returns indices into candidates.
std::vector<int> min_set_cover(const std::vector<PointSet>& candidates,
                               PointSet universe);

}  // namespace entcover
