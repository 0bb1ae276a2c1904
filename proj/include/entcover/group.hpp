#pragma once

#include <compare>
#include <cstddef>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace entcover {

using Int = long long;

// Canonical element data. Interpretation depends on the owning model:
// lattice coordinates, freely reduced word of signed letters, a single
// residue, or a one-line permutation.
struct Element {
  std::vector<Int> v;
  auto operator<=>(const Element&) const = default;
};

enum class Family { IntegerLattice, FreeGroup, Cyclic, Permutation };

struct Ball {
  int radius = 0;
  std::vector<Element> elements;  // sorted, deduplicated
  bool contains(const Element& g) const;
};

// Finitely generated discrete group with exact arithmetic and Cayley-ball
// enumeration. The generating set must contain the identity; it is not
// required to be symmetric.
class GroupModel {
 public:
  GroupModel(Family family, int param, std::vector<Element> generators,
             std::size_t ball_cap = 1'000'000);

  Family family() const { return family_; }
  int param() const { return param_; }
  const std::vector<Element>& generators() const { return gens_; }
  std::size_t ball_cap() const { return ball_cap_; }
  bool symmetric_generators() const;

  Element identity() const;
  Element mul(const Element& g, const Element& h) const;
  Element inv(const Element& g) const;
  void validate_element(const Element& g) const;
  bool is_finite() const;

  Ball ball(int n) const;
  bool in_ball(const Element& g, int n) const;

  // Least n with T contained in ball(n); throws resource_limit_error when
  // radius_cap is exceeded (S may not generate, or the cap is too small).
  int covering_index(const std::vector<Element>& T, int radius_cap = 64) const;

  std::vector<std::pair<int, std::size_t>> word_growth(int n_max) const;
  std::vector<Element> inverse_generators() const;

  // Randomized sanity audit of associativity and two-sided inverses on
  // small samples; throws invariant_violation on failure.
  void audit(unsigned seed = 1) const;

  std::string describe_element(const Element& g) const;

 private:
  const std::vector<Element>& ball_elems(int n) const;
  bool standard_free_generators() const;

  Family family_;
  int param_;
  std::vector<Element> gens_;
  std::size_t ball_cap_;
  bool free_length_shortcut_ = false;
  mutable std::mutex cache_mutex_;
  mutable std::vector<std::vector<Element>> ball_cache_;
};

}  // namespace entcover
