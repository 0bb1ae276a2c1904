#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "entcover/action.hpp"

namespace entcover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Real-valued observable on a finite space, with exact rational values.
struct Observable {
  std::string name;
  std::vector<Rational> values;  // one per point

  Rational sup_norm() const;
  Rational oscillation(PointSet a) const;  // diam of the image of a
};

struct RatioIndexResult {
  bool found = false;
  int index = 0;          // least n with a_{n+1} - a_n <= theta * a_n
  Rational min_gap = 0;   // observed minimum of (a_{n+1} - a_n) / a_n
};

RatioIndexResult ratio_condition_index(const std::vector<Rational>& seq,
                                       const Rational& theta);

struct RatioDiagnostic {
  std::vector<double> ratios;           // a_{n+1} / a_n
  std::vector<double> running_min;      // running minimum of the ratios
  std::vector<double> slopes;           // log2(a_n) / n
  double min_ratio = 0.0;
  double last_slope = 0.0;
};

RatioDiagnostic liminf_ratio_diagnostic(const std::vector<Rational>& seq);

// Exact check of the geometric lower bound a_{m+n0} >= a^m * a_{n0} for
// all prefixes, assuming all tail ratios from n0 on are at least a.
bool ratio_lemma_bound_holds(const std::vector<Rational>& seq, const Rational& a,
                             int n0);

struct ApproxInvariantMean {
  std::vector<int> support;          // the finite set F
  Rational theta;
  Rational epsilon;
  int n_used = 0;
  Rational defect;
  Cover cover_u0;                    // oscillation cover
  Cover cover_u;                     // minimal S^{-1}-refining cover of U0
  Cover cover_v;                     // optimal cover at S^n
  std::vector<int> representatives;  // pi(V) per member of cover_v
  std::vector<int> complexity_values;
};

// Constructive finite empirical mean with certified invariance defect,
// following the vanishing-entropy pipeline: oscillation cover, minimal
// S^{-1}-refinement, ratio condition, representatives of a minimal cover.
// Postcondition (asserted): defect <= epsilon.
ApproxInvariantMean construct_mean(const FiniteAction& act,
                                   const std::vector<Observable>& h,
                                   const Rational& epsilon, int n_cap);

// Max over f in H and generators s of |m(f) - m(f o alpha_{s^{-1}})| for
// the uniform mean on the given support.
Rational invariance_defect(const FiniteAction& act, const std::vector<int>& support,
                           const std::vector<Observable>& h);

}  // namespace entcover
