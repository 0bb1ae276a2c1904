#include "entcover/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "entcover/errors.hpp"

namespace entcover {

bool Ball::contains(const Element& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

GroupModel::GroupModel(Family family, int param, std::vector<Element> generators,
                       std::size_t ball_cap)
    : family_(family), param_(param), gens_(std::move(generators)), ball_cap_(ball_cap) {
  if (param_ <= 0) throw validation_error("group parameter must be positive");
  if (gens_.empty()) throw validation_error("generating set must be non-empty");
  for (const Element& g : gens_) validate_element(g);
  const Element e = identity();
  if (std::find(gens_.begin(), gens_.end(), e) == gens_.end())
    throw validation_error("generating set must contain the identity");
  free_length_shortcut_ = standard_free_generators();
  ball_cache_.push_back({e});
}

bool GroupModel::symmetric_generators() const {
  for (const Element& g : gens_)
    if (std::find(gens_.begin(), gens_.end(), inv(g)) == gens_.end()) return false;
  return true;
}

bool GroupModel::standard_free_generators() const {
  if (family_ != Family::FreeGroup) return false;
  // {e} together with all letters and their inverses, nothing longer.
  std::vector<Element> expected;
  expected.push_back(identity());
  for (Int i = 1; i <= param_; ++i) {
    expected.push_back(Element{{i}});
    expected.push_back(Element{{-i}});
  }
  std::vector<Element> gens = gens_;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::sort(expected.begin(), expected.end());
  return gens == expected;
}

Element GroupModel::identity() const {
  switch (family_) {
    case Family::IntegerLattice:
      return Element{std::vector<Int>(static_cast<std::size_t>(param_), 0)};
    case Family::FreeGroup:
      return Element{{}};
    case Family::Cyclic:
      return Element{{0}};
    case Family::Permutation: {
      Element e;
      e.v.resize(static_cast<std::size_t>(param_));
      std::iota(e.v.begin(), e.v.end(), 0);
      return e;
    }
  }
  throw invariant_violation("unknown group family");
}

void GroupModel::validate_element(const Element& g) const {
  switch (family_) {
    case Family::IntegerLattice:
      if (g.v.size() != static_cast<std::size_t>(param_))
        throw validation_error("lattice element has wrong dimension");
      return;
    case Family::FreeGroup:
      for (std::size_t i = 0; i < g.v.size(); ++i) {
        Int a = g.v[i];
        if (a == 0 || a > param_ || a < -param_)
          throw validation_error("free-group letter out of range");
        if (i + 1 < g.v.size() && g.v[i + 1] == -a)
          throw validation_error("free-group word not freely reduced");
      }
      return;
    case Family::Cyclic:
      if (g.v.size() != 1 || g.v[0] < 0 || g.v[0] >= param_)
        throw validation_error("cyclic element out of range");
      return;
    case Family::Permutation: {
      if (g.v.size() != static_cast<std::size_t>(param_))
        throw validation_error("permutation has wrong degree");
      std::vector<bool> seen(static_cast<std::size_t>(param_), false);
      for (Int x : g.v) {
        if (x < 0 || x >= param_ || seen[static_cast<std::size_t>(x)])
          throw validation_error("not a permutation");
        seen[static_cast<std::size_t>(x)] = true;
      }
      return;
    }
  }
  throw invariant_violation("unknown group family");
}

Element GroupModel::mul(const Element& g, const Element& h) const {
  validate_element(g);
  validate_element(h);
  switch (family_) {
    case Family::IntegerLattice: {
      Element r = g;
      for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += h.v[i];
      return r;
    }
    case Family::FreeGroup: {
      Element r = g;
      for (Int a : h.v) {
        if (!r.v.empty() && r.v.back() == -a)
          r.v.pop_back();
        else
          r.v.push_back(a);
      }
      return r;
    }
    case Family::Cyclic:
      return Element{{(g.v[0] + h.v[0]) % param_}};
    case Family::Permutation: {
      // (g*h)(x) = g(h(x)): composition matching action composition.
      Element r;
      r.v.resize(g.v.size());
      for (std::size_t x = 0; x < g.v.size(); ++x)
        r.v[x] = g.v[static_cast<std::size_t>(h.v[x])];
      return r;
    }
  }
  throw invariant_violation("unknown group family");
}

Element GroupModel::inv(const Element& g) const {
  validate_element(g);
  switch (family_) {
    case Family::IntegerLattice: {
      Element r = g;
      for (Int& x : r.v) x = -x;
      return r;
    }
    case Family::FreeGroup: {
      Element r;
      r.v.reserve(g.v.size());
      for (auto it = g.v.rbegin(); it != g.v.rend(); ++it) r.v.push_back(-*it);
      return r;
    }
    case Family::Cyclic:
      return Element{{(param_ - g.v[0]) % param_}};
    case Family::Permutation: {
      Element r;
      r.v.resize(g.v.size());
      for (std::size_t x = 0; x < g.v.size(); ++x)
        r.v[static_cast<std::size_t>(g.v[x])] = static_cast<Int>(x);
      return r;
    }
  }
  throw invariant_violation("unknown group family");
}

bool GroupModel::is_finite() const {
  return family_ == Family::Cyclic || family_ == Family::Permutation;
}

const std::vector<Element>& GroupModel::ball_elems(int n) const {
  if (n < 0) throw validation_error("ball radius must be non-negative");
  std::lock_guard<std::mutex> lock(cache_mutex_);
  while (static_cast<int>(ball_cache_.size()) <= n) {
    const std::vector<Element>& prev = ball_cache_.back();
    std::vector<Element> next;
    next.reserve(prev.size() * gens_.size());
    for (const Element& g : prev)
      for (const Element& s : gens_) next.push_back(mul(g, s));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > ball_cap_)
      throw resource_limit_error("ball size cap exceeded at radius " +
                                 std::to_string(ball_cache_.size()));
    ball_cache_.push_back(std::move(next));
  }
  return ball_cache_[static_cast<std::size_t>(n)];
}

Ball GroupModel::ball(int n) const {
  return Ball{n, ball_elems(n)};
}

bool GroupModel::in_ball(const Element& g, int n) const {
  if (n < 0) return false;
  validate_element(g);
  if (free_length_shortcut_)
    return static_cast<int>(g.v.size()) <= n;
  const std::vector<Element>& b = ball_elems(n);
  return std::binary_search(b.begin(), b.end(), g);
}

int GroupModel::covering_index(const std::vector<Element>& T, int radius_cap) const {
  if (T.empty()) throw validation_error("covering_index: empty target set");
  for (const Element& t : T) validate_element(t);
  for (int n = 1; n <= radius_cap; ++n) {
    bool all = true;
    for (const Element& t : T)
      if (!in_ball(t, n)) {
        all = false;
        break;
      }
    if (all) return n;
  }
  throw resource_limit_error(
      "covering_index not reached within cap; S may not generate or cap too small");
}

std::vector<std::pair<int, std::size_t>> GroupModel::word_growth(int n_max) const {
  std::vector<std::pair<int, std::size_t>> out;
  for (int n = 0; n <= n_max; ++n) out.emplace_back(n, ball_elems(n).size());
  return out;
}

std::vector<Element> GroupModel::inverse_generators() const {
  std::vector<Element> out;
  out.reserve(gens_.size());
  for (const Element& g : gens_) out.push_back(inv(g));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void GroupModel::audit(unsigned seed) const {
  std::mt19937 rng(seed);
  std::vector<Element> sample = ball_elems(is_finite() ? 2 : 3);
  if (sample.size() > 12) {
    std::shuffle(sample.begin(), sample.end(), rng);
    sample.resize(12);
  }
  const Element e = identity();
  for (const Element& g : sample) {
    if (mul(g, e) != g || mul(e, g) != g)
      throw invariant_violation("identity law failed");
    if (mul(g, inv(g)) != e || mul(inv(g), g) != e)
      throw invariant_violation("inverse law failed");
    for (const Element& h : sample)
      for (const Element& k : sample)
        if (mul(mul(g, h), k) != mul(g, mul(h, k)))
          throw invariant_violation("associativity failed");
  }
}

std::string GroupModel::describe_element(const Element& g) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < g.v.size(); ++i) {
    if (i) os << ",";
    os << g.v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace entcover
