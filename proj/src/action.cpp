#include "entcover/action.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "entcover/errors.hpp"

namespace entcover {

namespace {

Perm compose(const Perm& f, const Perm& g) {
  // (f after g)(x) = f(g(x))
  Perm r(f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    r[x] = f[static_cast<std::size_t>(g[x])];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
  return r;
}

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

}  // namespace

FiniteAction::FiniteAction(std::shared_ptr<const GroupModel> group, FiniteSpace space,
                           std::vector<Perm> generator_maps)
    : group_(std::move(group)), space_(std::move(space)), gen_maps_(std::move(generator_maps)) {
  const auto& gens = group_->generators();
  if (gen_maps_.size() != gens.size())
    throw validation_error("need exactly one generator map per generator");
  const int n = space_.size();
  for (std::size_t i = 0; i < gen_maps_.size(); ++i) {
    const Perm& p = gen_maps_[i];
    if (static_cast<int>(p.size()) != n)
      throw validation_error("generator map has wrong number of points");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x : p) {
      if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
        throw validation_error("generator map is not a bijection");
      seen[static_cast<std::size_t>(x)] = true;
    }
    // Continuity: preimage of every basic open set is open.
    const Perm pinv = inverse(p);
    for (PointSet b : space_.basis()) {
      PointSet pre = 0;
      PointSet rest = b;
      while (rest) {
        int x = __builtin_ctzll(rest);
        rest &= rest - 1;
        pre |= PointSet{1} << pinv[static_cast<std::size_t>(x)];
      }
      if (!space_.is_open(pre))
        throw validation_error("generator map is not continuous");
    }
    if (gens[i] == group_->identity() && p != identity_perm(n))
      throw validation_error("identity generator must act as the identity map");
  }
  // Action-law audit over ball(2): two words reaching the same canonical
  // element must induce the same permutation.
  perm_cache_[group_->identity()] = identity_perm(n);
  std::deque<Element> frontier{group_->identity()};
  for (int step = 0; step < 2; ++step) {
    std::deque<Element> next;
    for (const Element& g : frontier) {
      const Perm pg = perm_cache_.at(g);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element gs = group_->mul(g, gens[i]);
        Perm ps = compose(pg, gen_maps_[i]);
        auto it = perm_cache_.find(gs);
        if (it == perm_cache_.end()) {
          perm_cache_.emplace(gs, std::move(ps));
          next.push_back(gs);
        } else if (it->second != ps) {
          throw validation_error("generator maps violate the action law on ball(2)");
        }
      }
    }
    frontier.swap(next);
  }
}

Perm FiniteAction::permutation_for(const Element& g) const {
  group_->validate_element(g);
  std::lock_guard<std::mutex> lock(*cache_mutex_);
  auto hit = perm_cache_.find(g);
  if (hit != perm_cache_.end()) return hit->second;
  // BFS over generators and their inverses from everything already known.
  const auto& gens = group_->generators();
  std::vector<std::pair<Element, Perm>> steps;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    steps.emplace_back(gens[i], gen_maps_[i]);
    steps.emplace_back(group_->inv(gens[i]), inverse(gen_maps_[i]));
  }
  std::deque<Element> frontier;
  for (const auto& kv : perm_cache_) frontier.push_back(kv.first);
  const std::size_t cap = group_->ball_cap();
  while (!frontier.empty()) {
    Element h = frontier.front();
    frontier.pop_front();
    const Perm ph = perm_cache_.at(h);
    for (const auto& [s, ps] : steps) {
      Element hs = group_->mul(h, s);
      if (perm_cache_.count(hs)) continue;
      perm_cache_.emplace(hs, compose(ph, ps));
      if (hs == g) return perm_cache_.at(g);
      frontier.push_back(hs);
      if (perm_cache_.size() > cap)
        throw resource_limit_error("element not reachable within ball cap");
    }
  }
  throw validation_error("element not reachable from the generating set");
}

PointSet FiniteAction::apply(const Perm& p, PointSet a) const {
  PointSet out = 0;
  while (a) {
    int x = __builtin_ctzll(a);
    a &= a - 1;
    out |= PointSet{1} << p[static_cast<std::size_t>(x)];
  }
  return out;
}

PointSet FiniteAction::apply(const Element& g, PointSet a) const {
  return apply(permutation_for(g), a);
}

bool s_refines(const FiniteAction& act, const Cover& v, const Cover& u,
               const std::vector<Element>& w) {
  for (const Element& g : w) {
    const Perm p = act.permutation_for(g);
    Cover image;
    for (PointSet m : v.sets) image.sets.push_back(act.apply(p, m));
    if (!refines(image, u)) return false;
  }
  return true;
}

std::vector<PointSet> admissible_sets(const FiniteAction& act, const Cover& u,
                                      const std::vector<Element>& w) {
  if (u.sets.empty()) throw validation_error("empty cover");
  std::vector<PointSet> family{act.space().full()};
  for (const Element& g : w) {
    const Perm pinv = inverse(act.permutation_for(g));
    // N admissible for g iff alpha(g,N) inside some member, i.e. N inside
    // some preimage alpha(g)^{-1}(U_i).
    std::vector<PointSet> pre;
    pre.reserve(u.sets.size());
    for (PointSet m : u.sets) pre.push_back(act.apply(pinv, m));
    std::vector<PointSet> next;
    for (PointSet f : family)
      for (PointSet p : pre) {
        PointSet c = f & p;
        if (c) next.push_back(c);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    // Keep the maximal sets only.
    std::vector<PointSet> maximal;
    for (PointSet c : next) {
      bool dominated = false;
      for (PointSet d : next)
        if (d != c && (c & ~d) == 0) {
          dominated = true;
          break;
        }
      if (!dominated) maximal.push_back(c);
    }
    family.swap(maximal);
  }
  // Preimages of opens are open and finite intersections stay open, so no
  // interior pass is needed.
  std::sort(family.begin(), family.end());
  return family;
}

namespace {

std::vector<int> separated_family(const std::vector<PointSet>& cand, int n_points) {
  // Points no two of which fit in a single candidate set; a lower-bound
  // witness for the cover cardinality.
  std::vector<int> out;
  for (int x = 0; x < n_points; ++x) {
    bool independent = true;
    for (int y : out) {
      for (PointSet c : cand)
        if ((c >> x & 1) && (c >> y & 1)) {
          independent = false;
          break;
        }
      if (!independent) break;
    }
    if (independent) out.push_back(x);
  }
  return out;
}

}  // namespace

RefinementResult min_refining_cover(const FiniteAction& act, const Cover& u,
                                    const std::vector<Element>& w,
                                    std::size_t exhaustive_member_cap) {
  std::vector<PointSet> cand = admissible_sets(act, u, w);
  PointSet all = act.space().full();
  PointSet covered = 0;
  for (PointSet c : cand) covered |= c;
  if (covered != all)
    throw invariant_violation(
        "no refining cover: admissible sets fail to cover (corrupt action input)");

  RefinementResult r;
  std::vector<int> greedy = greedy_set_cover(cand, all);
  r.separated_points = separated_family(cand, act.space().size());

  if (greedy.size() > exhaustive_member_cap) {
    r.exhaustive = false;
    r.value = static_cast<int>(greedy.size());
    r.lower_bound = static_cast<int>(r.separated_points.size());
    std::vector<PointSet> members;
    for (int ci : greedy) members.push_back(cand[static_cast<std::size_t>(ci)]);
    r.optimal_cover = Cover(act.space(), members);
    return r;
  }

  std::vector<int> best = min_set_cover(cand, all);
  r.value = static_cast<int>(best.size());
  r.lower_bound = r.value;
  std::vector<PointSet> members;
  for (int ci : best) members.push_back(cand[static_cast<std::size_t>(ci)]);
  r.optimal_cover = Cover(act.space(), members);
  if (static_cast<int>(r.separated_points.size()) > r.value)
    throw invariant_violation("separation lower bound exceeds exact value");
  if (!s_refines(act, r.optimal_cover, u, w))
    throw invariant_violation("optimal cover fails to W-refine U");
  return r;
}

std::vector<std::pair<int, int>> complexity_sequence(const FiniteAction& act,
                                                     const Cover& u, int n_max) {
  if (n_max < 1) throw validation_error("n_max must be at least 1");
  std::vector<std::pair<int, int>> out;
  int prev = 0;
  for (int n = 1; n <= n_max; ++n) {
    RefinementResult r = min_refining_cover(act, u, act.group().ball(n).elements);
    if (r.value < prev)
      throw invariant_violation("complexity sequence decreased");
    prev = r.value;
    out.emplace_back(n, r.value);
  }
  return out;
}

EstimateReport entropy_estimate(const FiniteAction& act, const Cover& u, int n_max) {
  if (n_max < 2) throw validation_error("entropy estimate needs n_max >= 2");
  auto seq = complexity_sequence(act, u, n_max);
  std::vector<double> log2v;
  std::vector<bool> eq;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    log2v.push_back(std::log2(static_cast<double>(seq[i].second)));
    if (i + 1 < seq.size()) eq.push_back(seq[i].second == seq[i + 1].second);
  }
  return estimate_from_log2(log2v, eq);
}

ComparisonReport compare_generating_sets(const FiniteAction& act,
                                         const std::vector<Element>& t_gens,
                                         const Cover& u, int n_max) {
  const GroupModel& gs = act.group();
  GroupModel gt(gs.family(), gs.param(), t_gens, gs.ball_cap());
  ComparisonReport r;
  r.m = gs.covering_index(t_gens);
  r.n = gt.covering_index(gs.generators());
  for (int k = 1; k <= n_max; ++k) {
    int sv = min_refining_cover(act, u, gs.ball(k).elements).value;
    int tv = min_refining_cover(act, u, gt.ball(k * r.n).elements).value;
    r.s_values.push_back(sv);
    r.t_values.push_back(tv);
    if (sv > tv) r.inequality_holds = false;
  }
  double slope_s = std::log2(static_cast<double>(r.s_values.back())) / n_max;
  int tv_base = min_refining_cover(act, u, gt.ball(n_max).elements).value;
  double slope_t = std::log2(static_cast<double>(tv_base)) / n_max;
  r.slope_ratio = (slope_t == 0.0) ? (slope_s == 0.0 ? 1.0 : 0.0) : slope_s / slope_t;
  return r;
}

}  // namespace entcover
