#pragma once

#include <map>
#include <memory>
#include <vector>

#include "entcover/amenability.hpp"
#include "entcover/estimate.hpp"
#include "entcover/group.hpp"

namespace entcover {

// Finite pattern: symbols on a finite set of group elements.
struct SubshiftPattern {
  std::vector<std::pair<Element, int>> cells;  // sorted by element
};

enum class CountMethod { Exhaustive, TransferMatrix, LocallyAdmissible };

struct PatternCount {
  int n = 0;
  BigInt count;
  CountMethod method = CountMethod::Exhaustive;
  bool exact = true;  // false: locally-admissible upper-side value
};

// One point per admissible pattern on the stated domain; any two distinct
// points are separated by the symbol cylinder at the coordinate where
// they first differ, so no member of an S^n-refining cover of the symbol
// cover may contain two of them.
struct SeparationCertificate {
  std::vector<Element> domain;               // ball(n) elements, sorted
  std::vector<std::vector<int>> points;      // symbols aligned with domain
};

struct SubshiftComplexity {
  int n = 0;
  BigInt value;
  CountMethod method = CountMethod::Exhaustive;
  bool exact = true;
  SeparationCertificate certificate;
  bool certificate_complete = true;  // false when elided beyond the cap
};

// Shift action of a finitely generated group on A^G restricted by a
// finite list of forbidden patterns. The convention for the action is
// alpha(g,x)(h) = x(h*g), so the canonical symbol-at-identity cover is
// separated along the elements of S^n themselves. Note that under this
// two-sided ball convention the full shift on Z with S={-1,0,1} has
// entropy 2*log2|A|, twice the classical one-sided value.
class SubshiftModel {
 public:
  SubshiftModel(int alphabet, std::shared_ptr<const GroupModel> group,
                std::vector<SubshiftPattern> forbidden);

  int alphabet() const { return alphabet_; }
  const GroupModel& group() const { return *group_; }
  std::shared_ptr<const GroupModel> group_ptr() const { return group_; }
  const std::vector<SubshiftPattern>& forbidden() const { return forbidden_; }
  bool is_full_shift() const { return forbidden_.empty(); }

  PatternCount pattern_count(int n) const;
  BigInt count_on_domain(const std::vector<Element>& domain,
                         CountMethod* method_out = nullptr) const;

  // Admissible patterns on ball(n); exact (global) for full shifts and
  // Z-SFTs, locally admissible otherwise. Throws resource_limit_error
  // when more than cap patterns would be produced.
  std::vector<std::vector<int>> enumerate_patterns(int n, std::size_t cap) const;

  std::vector<std::pair<int, BigInt>> count_sequence(int n_max) const;
  EstimateReport entropy_estimate(int n_max) const;

 private:
  bool z_contiguous_domain(const std::vector<Element>& domain) const;
  BigInt transfer_matrix_count(long long lo, long long hi,
                               bool* exact_out) const;
  std::vector<std::vector<int>> enumerate_z_words(long long lo, long long hi,
                                                  std::size_t cap) const;

  int alphabet_;
  std::shared_ptr<const GroupModel> group_;
  std::vector<SubshiftPattern> forbidden_;
};

SubshiftComplexity certified_complexity(const SubshiftModel& model, int n,
                                        std::size_t enum_cap = 1u << 18);

// Re-checks a certificate from its data: domain matches ball(n), points
// pairwise distinct and admissible, count matches. For small families the
// pairwise witness coordinates are checked explicitly.
void verify_certificate(const SubshiftModel& model, const SubshiftComplexity& c);

struct SubshiftComparison {
  int m = 0;                        // least k with T in S^k
  int n = 0;                        // least k with S in T^k
  std::vector<BigInt> s_counts;     // (S^k : U) for k = 1..n_max
  std::vector<BigInt> t_counts_kn;  // (T^(k*n) : U) for k = 1..n_max
  bool inequality_holds = true;
  double s_tail_slope = 0.0;        // slope at k = n_max under S
  double t_tail_slope = 0.0;        // slope at k = n_max under T
};

SubshiftComparison compare_generating_sets_subshift(const SubshiftModel& model,
                                                    const std::vector<Element>& t_gens,
                                                    int n_max);

double log2_big(const BigInt& v);

}  // namespace entcover
