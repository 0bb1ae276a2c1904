#include "entcover/amenability.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "entcover/errors.hpp"

namespace entcover {

namespace {

double to_double(const Rational& r) {
  return static_cast<double>(boost::multiprecision::cpp_bin_float_100(r));
}

void validate_sequence(const std::vector<Rational>& seq) {
  if (seq.size() < 2) throw validation_error("sequence needs at least two entries");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 1) throw validation_error("sequence values must be >= 1");
    if (i && seq[i] < seq[i - 1])
      throw validation_error("sequence must be non-decreasing");
  }
}

}  // namespace

Rational Observable::sup_norm() const {
  Rational m = 0;
  for (const Rational& v : values) m = std::max(m, static_cast<Rational>(abs(v)));
  return m;
}

Rational Observable::oscillation(PointSet a) const {
  bool first = true;
  Rational lo = 0, hi = 0;
  PointSet rest = a;
  while (rest) {
    int x = __builtin_ctzll(rest);
    rest &= rest - 1;
    const Rational& v = values[static_cast<std::size_t>(x)];
    if (first) {
      lo = hi = v;
      first = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return hi - lo;
}

RatioIndexResult ratio_condition_index(const std::vector<Rational>& seq,
                                       const Rational& theta) {
  validate_sequence(seq);
  if (theta < 0) throw validation_error("theta must be non-negative");
  RatioIndexResult out;
  bool have_gap = false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    Rational gap = (seq[i + 1] - seq[i]) / seq[i];
    if (!have_gap || gap < out.min_gap) {
      out.min_gap = gap;
      have_gap = true;
    }
    if (gap <= theta) {
      out.found = true;
      out.index = static_cast<int>(i) + 1;
      return out;
    }
  }
  return out;
}

RatioDiagnostic liminf_ratio_diagnostic(const std::vector<Rational>& seq) {
  validate_sequence(seq);
  RatioDiagnostic out;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    double r = to_double(seq[i + 1] / seq[i]);
    out.ratios.push_back(r);
    out.running_min.push_back(out.ratios.size() == 1
                                  ? r
                                  : std::min(out.running_min.back(), r));
  }
  for (std::size_t i = 0; i < seq.size(); ++i)
    out.slopes.push_back(std::log2(to_double(seq[i])) / static_cast<double>(i + 1));
  out.min_ratio = out.running_min.back();
  out.last_slope = out.slopes.back();
  return out;
}

bool ratio_lemma_bound_holds(const std::vector<Rational>& seq, const Rational& a,
                             int n0) {
  validate_sequence(seq);
  if (n0 < 1 || static_cast<std::size_t>(n0) > seq.size())
    throw validation_error("n0 out of range");
  // Hypothesis: a_{n+1}/a_n >= a for n >= n0.
  for (std::size_t i = static_cast<std::size_t>(n0) - 1; i + 1 < seq.size(); ++i)
    if (seq[i + 1] < a * seq[i]) return false;
  Rational power = 1;
  for (std::size_t m = 1; m + static_cast<std::size_t>(n0) <= seq.size(); ++m) {
    power *= a;
    if (seq[m + static_cast<std::size_t>(n0) - 1] <
        power * seq[static_cast<std::size_t>(n0) - 1])
      return false;
  }
  return true;
}

ApproxInvariantMean construct_mean(const FiniteAction& act,
                                   const std::vector<Observable>& h,
                                   const Rational& epsilon, int n_cap) {
  if (epsilon <= 0) throw validation_error("epsilon must be positive");
  if (n_cap < 1) throw validation_error("n_cap must be at least 1");
  const FiniteSpace& space = act.space();
  for (const Observable& f : h)
    if (static_cast<int>(f.values.size()) != space.size())
      throw validation_error("observable has wrong number of points");

  ApproxInvariantMean mean;
  mean.epsilon = epsilon;
  Rational sup = 0;
  for (const Observable& f : h) sup = std::max(sup, f.sup_norm());
  mean.theta = epsilon / (1 + 2 * sup);
  const Rational osc_bound = mean.theta / 3;

  // Oscillation cover: the minimal open neighborhoods are the finest
  // possible members, so a suitable cover exists iff each of them meets
  // the bound; any open set containing x contains min_nbhd(x).
  std::vector<PointSet> members;
  for (int x = 0; x < space.size(); ++x) {
    PointSet n = space.min_nbhd(x);
    for (const Observable& f : h)
      if (f.oscillation(n) > osc_bound)
        throw validation_error(
            "oscillation cover unavailable: observable '" + f.name +
            "' varies more than theta/3 on the minimal neighborhood of point " +
            std::to_string(x));
    members.push_back(n);
  }
  // Keep the maximal distinct neighborhoods; each point x stays covered
  // through its own min_nbhd or a superset of it.
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<PointSet> maximal;
  for (PointSet m : members) {
    bool dominated = false;
    for (PointSet d : members)
      if (d != m && (m & ~d) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(m);
  }
  mean.cover_u0 = Cover(space, maximal);

  mean.cover_u =
      min_refining_cover(act, mean.cover_u0, act.group().inverse_generators())
          .optimal_cover;

  if (n_cap < 2)
    throw validation_error("n_cap too small for the ratio condition");
  // Extend the complexity sequence only until the ratio condition fires.
  int found = 0;
  for (int n = 1; n <= n_cap; ++n) {
    int v = min_refining_cover(act, mean.cover_u, act.group().ball(n).elements).value;
    mean.complexity_values.push_back(v);
    if (n >= 2) {
      Rational prev = mean.complexity_values[static_cast<std::size_t>(n) - 2];
      if (Rational(v) - prev <= mean.theta * prev) {
        found = n - 1;
        break;
      }
    }
  }
  if (!found)
    throw resource_limit_error(
        "ratio condition not reached within n_cap: entropy not vanishing at "
        "this scale");
  mean.n_used = found;

  mean.cover_v =
      min_refining_cover(act, mean.cover_u, act.group().ball(mean.n_used).elements)
          .optimal_cover;

  // Minimality gives each member a private point; pick the least one.
  for (std::size_t i = 0; i < mean.cover_v.sets.size(); ++i) {
    PointSet others = 0;
    for (std::size_t j = 0; j < mean.cover_v.sets.size(); ++j)
      if (j != i) others |= mean.cover_v.sets[j];
    PointSet eligible = mean.cover_v.sets[i] & ~others;
    if (!eligible)
      throw invariant_violation("minimal cover member has no private point");
    mean.representatives.push_back(__builtin_ctzll(eligible));
  }
  mean.support = mean.representatives;
  std::sort(mean.support.begin(), mean.support.end());

  mean.defect = invariance_defect(act, mean.support, h);
  if (mean.defect > epsilon)
    throw invariant_violation("constructed mean exceeds the requested defect");
  return mean;
}

Rational invariance_defect(const FiniteAction& act, const std::vector<int>& support,
                           const std::vector<Observable>& h) {
  if (support.empty()) throw validation_error("mean support must be non-empty");
  for (int x : support)
    if (x < 0 || x >= act.space().size())
      throw validation_error("mean support outside the space");
  const auto card = static_cast<Rational>(support.size());
  Rational defect = 0;
  for (const Element& s : act.group().generators()) {
    const Perm p_inv = act.permutation_for(act.group().inv(s));
    for (const Observable& f : h) {
      Rational direct = 0, shifted = 0;
      for (int x : support) {
        direct += f.values[static_cast<std::size_t>(x)];
        shifted += f.values[static_cast<std::size_t>(p_inv[static_cast<std::size_t>(x)])];
      }
      Rational d = abs(direct - shifted) / card;
      defect = std::max(defect, d);
    }
  }
  return defect;
}

}  // namespace entcover
