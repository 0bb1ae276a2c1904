#include "entcover/topology.hpp"

#include <algorithm>

#include "entcover/errors.hpp"

namespace entcover {

FiniteSpace::FiniteSpace(int n_points, std::vector<PointSet> open_basis)
    : n_points_(n_points), basis_(std::move(open_basis)) {
  if (n_points <= 0 || n_points > 64)
    throw validation_error("finite space must have between 1 and 64 points");
  full_ = (n_points == 64) ? ~PointSet{0} : ((PointSet{1} << n_points) - 1);
  PointSet covered = 0;
  for (PointSet b : basis_) {
    if (b & ~full_) throw validation_error("basis set mentions unknown point");
    covered |= b;
  }
  if (covered != full_) throw validation_error("open basis does not cover the space");

  min_nbhd_.resize(static_cast<std::size_t>(n_points));
  for (int x = 0; x < n_points; ++x) {
    PointSet n = full_;
    for (PointSet b : basis_)
      if (b & (PointSet{1} << x)) n &= b;
    min_nbhd_[static_cast<std::size_t>(x)] = n;
  }
  // Genuine basis: pairwise intersections must again be unions of basis
  // sets. Checked against the basis itself, not min_nbhd_, which would be
  // circular: every x in the intersection needs a basis member through x
  // inside it.
  auto basis_union = [&](PointSet a) {
    PointSet rest = a;
    while (rest) {
      PointSet bit = rest & (~rest + 1);
      rest &= rest - 1;
      bool inside = false;
      for (PointSet b : basis_)
        if ((b & bit) && !(b & ~a)) {
          inside = true;
          break;
        }
      if (!inside) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (!basis_union(basis_[i] & basis_[j]))
        throw validation_error("open basis is not closed under intersection up to union");
}

FiniteSpace FiniteSpace::discrete(int n) {
  std::vector<PointSet> basis;
  for (int x = 0; x < n; ++x) basis.push_back(PointSet{1} << x);
  return FiniteSpace(n, std::move(basis));
}

bool FiniteSpace::is_open(PointSet a) const {
  PointSet rest = a;
  while (rest) {
    int x = __builtin_ctzll(rest);
    rest &= rest - 1;
    if (min_nbhd_[static_cast<std::size_t>(x)] & ~a) return false;
  }
  return true;
}

PointSet FiniteSpace::interior(PointSet a) const {
  PointSet out = 0;
  PointSet rest = a;
  while (rest) {
    int x = __builtin_ctzll(rest);
    rest &= rest - 1;
    if (!(min_nbhd_[static_cast<std::size_t>(x)] & ~a)) out |= PointSet{1} << x;
  }
  return out;
}

Cover::Cover(const FiniteSpace& space, std::vector<PointSet> members) {
  PointSet covered = 0;
  for (PointSet m : members) {
    if (m == 0) continue;  // empty members are stripped
    if (!space.is_open(m)) throw validation_error("cover member is not open");
    covered |= m;
    sets.push_back(m);
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (covered != space.full()) throw validation_error("cover does not cover the space");
}

std::vector<int> greedy_set_cover(const std::vector<PointSet>& candidates,
                                  PointSet universe) {
  std::vector<int> out;
  PointSet uncovered = universe;
  while (uncovered) {
    int pick = -1, gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      int g = popcount(candidates[i] & uncovered);
      if (g > gain) {
        gain = g;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) throw validation_error("set cover instance has no solution");
    out.push_back(pick);
    uncovered &= ~candidates[static_cast<std::size_t>(pick)];
  }
  return out;
}

namespace {

struct CoverSearch {
  const std::vector<PointSet>& cand;
  int max_size = 1;
  std::vector<int> best;
  std::vector<int> chosen;
  std::vector<std::vector<int>> covering_by_point;

  void dfs(PointSet uncovered) {
    if (!uncovered) {
      best = chosen;
      return;
    }
    int need = (popcount(uncovered) + max_size - 1) / max_size;
    if (static_cast<int>(chosen.size()) + need >= static_cast<int>(best.size())) return;
    // Branch on the uncovered point with the fewest candidates.
    int branch_point = -1;
    std::size_t fewest = cand.size() + 1;
    PointSet rest = uncovered;
    while (rest) {
      int x = __builtin_ctzll(rest);
      rest &= rest - 1;
      if (covering_by_point[static_cast<std::size_t>(x)].size() < fewest) {
        fewest = covering_by_point[static_cast<std::size_t>(x)].size();
        branch_point = x;
      }
    }
    std::vector<int> order = covering_by_point[static_cast<std::size_t>(branch_point)];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return popcount(cand[static_cast<std::size_t>(a)] & uncovered) >
             popcount(cand[static_cast<std::size_t>(b)] & uncovered);
    });
    for (int ci : order) {
      chosen.push_back(ci);
      dfs(uncovered & ~cand[static_cast<std::size_t>(ci)]);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<int> min_set_cover(const std::vector<PointSet>& candidates,
                               PointSet universe) {
  CoverSearch search{candidates, 1, greedy_set_cover(candidates, universe), {}, {}};
  for (PointSet c : candidates) search.max_size = std::max(search.max_size, popcount(c));
  search.covering_by_point.resize(64);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    PointSet rest = candidates[i];
    while (rest) {
      int x = __builtin_ctzll(rest);
      rest &= rest - 1;
      search.covering_by_point[static_cast<std::size_t>(x)].push_back(static_cast<int>(i));
    }
  }
  search.dfs(universe);
  return search.best;
}

bool refines(const Cover& v, const Cover& u) {
  for (PointSet m : v.sets) {
    bool inside = false;
    for (PointSet w : u.sets)
      if (!(m & ~w)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

}  // namespace entcover
