#pragma once

#include <map>
#include <vector>

#include "entcover/amenability.hpp"
#include "entcover/group.hpp"

namespace entcover {

// Witness family certifying (S^{2n} : V) >= 2^n for the canonical action
// on the dual unit ball with counting measure. Functionals are never
// materialized; they are represented by their finitely supported kernels
// and evaluated only against the finitely many needed test functions.
struct DualBallWitness {
  int n = 0;
  std::vector<Element> s_seq;      // escape sequence, length 2n
  std::vector<Element> t_seq;      // t_j = s_{2j} * s_{2j-1}
  std::vector<Element> supports;   // support translate (t_j...t_1)^{-1} * supp(f)
  std::map<Element, Rational> f;   // kernel, sup-norm 1, f(e) = 1
  Rational c;                      // sum of f^2 under counting measure
  // pairing[d][i-1] = <f_delta, f o lambda(t_i...t_1)> where bit j-1 of d
  // encodes delta(j).
  std::vector<std::vector<Rational>> pairing;
};

// Sequence with all partial products s_m...s_n outside ball(m-n), found
// by depth-first backtracking with exact ball membership tests. Finite
// groups are rejected, mirroring the non-compactness hypothesis.
std::vector<Element> escape_sequence(const GroupModel& group, int length);

DualBallWitness build_witness(const GroupModel& group, int n);

// Re-checks every witness invariant from the data: escape property,
// pairwise disjoint supports, sup-norm bound, exact pairing identities,
// and the threshold dichotomy (c/3 vs 2c/3) separating every pair of
// delta vectors. Throws verification_error on the first failure.
void verify_witness(const GroupModel& group, const DualBallWitness& w);

struct LowerBoundReport {
  int k = 0;        // least j with S^j an identity neighborhood (discrete: 1)
  int n = 0;
  Rational bound;   // 1 / (2k)
  DualBallWitness witness;
};

LowerBoundReport lower_bound_entropy(const GroupModel& group, int n);

}  // namespace entcover
