#include "entcover/matching.hpp"

#include <algorithm>

#include "entcover/errors.hpp"

namespace entcover {

namespace {

// Kuhn augmenting-path search; index order gives deterministic output.
bool try_augment(int u, const std::vector<std::vector<int>>& adj,
                 std::vector<bool>& visited_right, std::vector<int>& match_right) {
  for (int v : adj[static_cast<std::size_t>(u)]) {
    if (visited_right[static_cast<std::size_t>(v)]) continue;
    visited_right[static_cast<std::size_t>(v)] = true;
    if (match_right[static_cast<std::size_t>(v)] < 0 ||
        try_augment(match_right[static_cast<std::size_t>(v)], adj, visited_right, match_right)) {
      match_right[static_cast<std::size_t>(v)] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

MatchingResult hall_matching(const BipartiteRelation& r) {
  if (r.left < 0 || r.right < 0) throw validation_error("negative relation size");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(r.left));
  for (auto [x, y] : r.pairs) {
    if (x < 0 || x >= r.left || y < 0 || y >= r.right)
      throw validation_error("relation pair out of range");
    adj[static_cast<std::size_t>(x)].push_back(y);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<int> match_right(static_cast<std::size_t>(r.right), -1);
  int unmatched = -1;
  for (int u = 0; u < r.left; ++u) {
    std::vector<bool> visited(static_cast<std::size_t>(r.right), false);
    if (!try_augment(u, adj, visited, match_right)) {
      unmatched = u;
      break;
    }
  }

  MatchingResult out;
  if (unmatched < 0) {
    std::vector<int> injection(static_cast<std::size_t>(r.left), -1);
    for (int v = 0; v < r.right; ++v)
      if (match_right[static_cast<std::size_t>(v)] >= 0)
        injection[static_cast<std::size_t>(match_right[static_cast<std::size_t>(v)])] = v;
    out.injection = std::move(injection);
    return out;
  }

  // Koenig-style cut: the unmatched left vertex together with all left
  // vertices reachable by alternating paths forms a Hall violator.
  std::vector<bool> left_seen(static_cast<std::size_t>(r.left), false);
  std::vector<bool> right_seen(static_cast<std::size_t>(r.right), false);
  std::vector<int> stack{unmatched};
  left_seen[static_cast<std::size_t>(unmatched)] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (right_seen[static_cast<std::size_t>(v)]) continue;
      right_seen[static_cast<std::size_t>(v)] = true;
      int w = match_right[static_cast<std::size_t>(v)];
      if (w >= 0 && !left_seen[static_cast<std::size_t>(w)]) {
        left_seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> violator;
  for (int u = 0; u < r.left; ++u)
    if (left_seen[static_cast<std::size_t>(u)]) violator.push_back(u);
  std::vector<int> nbhd = relation_neighborhood(r, violator);
  if (violator.size() <= nbhd.size())
    throw invariant_violation("extracted violator does not violate Hall's condition");
  out.violator = std::move(violator);
  return out;
}

std::vector<int> relation_neighborhood(const BipartiteRelation& r,
                                       const std::vector<int>& z) {
  std::vector<bool> in_z(static_cast<std::size_t>(r.left), false);
  for (int x : z) in_z[static_cast<std::size_t>(x)] = true;
  std::vector<bool> seen(static_cast<std::size_t>(r.right), false);
  for (auto [x, y] : r.pairs)
    if (in_z[static_cast<std::size_t>(x)]) seen[static_cast<std::size_t>(y)] = true;
  std::vector<int> out;
  for (int y = 0; y < r.right; ++y)
    if (seen[static_cast<std::size_t>(y)]) out.push_back(y);
  return out;
}

std::vector<int> refinement_map(const FiniteSpace& space, const Cover& u,
                                const Cover& v, const std::vector<PointSet>& n) {
  auto member_of = [&n](PointSet m) {
    return std::find(n.begin(), n.end(), m) != n.end();
  };
  for (PointSet m : u.sets)
    if (!member_of(m)) throw validation_error("U is not contained in N");
  for (PointSet m : v.sets)
    if (!member_of(m)) throw validation_error("V is not contained in N");
  std::vector<int> min_cover = min_set_cover(n, space.full());
  if (min_cover.size() != u.sets.size())
    throw validation_error("U not minimal in N");

  BipartiteRelation rel;
  rel.left = static_cast<int>(u.sets.size());
  rel.right = static_cast<int>(v.sets.size());
  for (int i = 0; i < rel.left; ++i)
    for (int j = 0; j < rel.right; ++j)
      if (u.sets[static_cast<std::size_t>(i)] & v.sets[static_cast<std::size_t>(j)])
        rel.pairs.emplace_back(i, j);
  MatchingResult m = hall_matching(rel);
  if (!m.injection)
    throw invariant_violation(
        "refinement map does not exist although preconditions verified");
  return *m.injection;
}

}  // namespace entcover
