#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "entcover/amenability.hpp"
#include "entcover/errors.hpp"

using namespace entcover;

namespace {

Element el(std::vector<Int> v) { return Element{std::move(v)}; }

PointSet pts(std::initializer_list<int> xs) {
  PointSet s = 0;
  for (int x : xs) s |= PointSet{1} << x;
  return s;
}

FiniteAction rotation4() {
  auto g = std::make_shared<GroupModel>(
      Family::Cyclic, 4, std::vector<Element>{el({0}), el({1}), el({3})});
  return FiniteAction(g, FiniteSpace::discrete(4),
                      {{0, 1, 2, 3}, {1, 2, 3, 0}, {3, 0, 1, 2}});
}

FiniteAction swap2() {
  auto g = std::make_shared<GroupModel>(Family::Cyclic, 2,
                                        std::vector<Element>{el({0}), el({1})});
  return FiniteAction(g, FiniteSpace::discrete(2), {{0, 1}, {1, 0}});
}

FiniteAction trivial_z2pts() {
  auto g = std::make_shared<GroupModel>(
      Family::IntegerLattice, 1, std::vector<Element>{el({-1}), el({0}), el({1})});
  return FiniteAction(g, FiniteSpace::discrete(2), {{0, 1}, {0, 1}, {0, 1}});
}

Observable indicator(const std::string& name, int point, int n_points) {
  Observable f;
  f.name = name;
  f.values.assign(static_cast<std::size_t>(n_points), 0);
  f.values[static_cast<std::size_t>(point)] = 1;
  return f;
}

std::vector<Rational> rseq(std::initializer_list<long long> xs) {
  std::vector<Rational> out;
  for (long long x : xs) out.push_back(Rational(x));
  return out;
}

}  // namespace

TEST_CASE("observable norms and oscillation") {
  Observable f;
  f.values = {Rational(-3), Rational(1, 2), Rational(2)};
  CHECK(f.sup_norm() == Rational(3));
  CHECK(f.oscillation(pts({0, 2})) == Rational(5));
  CHECK(f.oscillation(pts({1})) == Rational(0));
}

TEST_CASE("ratio condition index examples") {
  // Constant sequence: difference 0 at the first step.
  RatioIndexResult c = ratio_condition_index(rseq({1, 1, 1, 1}), Rational(1, 10));
  CHECK(c.found);
  CHECK(c.index == 1);

  // Geometric: gap always 1, never below theta = 1/2.
  RatioIndexResult g =
      ratio_condition_index(rseq({2, 4, 8, 16, 32}), Rational(1, 2));
  CHECK_FALSE(g.found);
  CHECK(g.min_gap == Rational(1));

  // a_n = n: least n with 1 <= n/5 is 5.
  RatioIndexResult l =
      ratio_condition_index(rseq({1, 2, 3, 4, 5, 6, 7}), Rational(1, 5));
  CHECK(l.found);
  CHECK(l.index == 5);

  CHECK_THROWS_AS(ratio_condition_index(rseq({3, 2}), Rational(1)),
                  validation_error);
  CHECK_THROWS_AS(ratio_condition_index(rseq({1}), Rational(1)), validation_error);
}

TEST_CASE("liminf ratio diagnostics") {
  std::vector<Rational> linear;
  for (int n = 1; n <= 40; ++n) linear.push_back(Rational(n));
  RatioDiagnostic dl = liminf_ratio_diagnostic(linear);
  CHECK(dl.min_ratio == doctest::Approx(40.0 / 39));
  CHECK(dl.last_slope == doctest::Approx(std::log2(40.0) / 40));

  std::vector<Rational> geometric;
  Rational p = 1;
  for (int n = 1; n <= 20; ++n) geometric.push_back(p *= 2);
  RatioDiagnostic dg = liminf_ratio_diagnostic(geometric);
  CHECK(dg.min_ratio == doctest::Approx(2.0));
  CHECK(dg.last_slope == doctest::Approx(1.0));
  CHECK(ratio_lemma_bound_holds(geometric, Rational(2), 1));

  std::vector<Rational> fib{1, 2};
  for (int n = 2; n < 30; ++n)
    fib.push_back(fib[static_cast<std::size_t>(n - 1)] +
                  fib[static_cast<std::size_t>(n - 2)]);
  RatioDiagnostic df = liminf_ratio_diagnostic(fib);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(df.ratios.back() == doctest::Approx(phi).epsilon(1e-6));
  CHECK(df.last_slope == doctest::Approx(std::log2(phi)).epsilon(0.05));
}

TEST_CASE("ratio lemma bound detects violations") {
  CHECK_FALSE(ratio_lemma_bound_holds(rseq({1, 2, 3}), Rational(2), 1));
  CHECK(ratio_lemma_bound_holds(rseq({1, 2, 4, 8}), Rational(2), 1));
  CHECK(ratio_lemma_bound_holds(rseq({5, 5, 10, 20}), Rational(2), 2));
  CHECK_THROWS_AS(ratio_lemma_bound_holds(rseq({1, 2}), Rational(2), 5),
                  validation_error);
}

TEST_CASE("construct_mean on the trivial action") {
  FiniteAction t = trivial_z2pts();
  std::vector<Observable> h{indicator("p", 0, 2)};
  ApproxInvariantMean m = construct_mean(t, h, Rational(1, 10), 16);
  CHECK(m.defect == Rational(0));
  CHECK(m.theta == Rational(1, 30));
  CHECK_FALSE(m.support.empty());
}

TEST_CASE("construct_mean on the rotation: exactly invariant uniform mean") {
  FiniteAction a = rotation4();
  std::vector<Observable> h{indicator("zero", 0, 4)};
  ApproxInvariantMean m = construct_mean(a, h, Rational(1, 2), 16);
  CHECK(m.defect == Rational(0));
  CHECK(m.support == std::vector<int>{0, 1, 2, 3});
  // Representatives are injective and private to their member.
  for (std::size_t i = 0; i < m.cover_v.sets.size(); ++i) {
    PointSet rep = PointSet{1} << m.representatives[i];
    CHECK((m.cover_v.sets[i] & rep) != 0);
    for (std::size_t j = 0; j < m.cover_v.sets.size(); ++j)
      if (j != i) CHECK((m.cover_v.sets[j] & rep) == 0);
  }
}

TEST_CASE("defect stays within epsilon across scales") {
  for (const Rational& eps : {Rational(1, 2), Rational(1, 10), Rational(1, 100)}) {
    FiniteAction a = rotation4();
    std::vector<Observable> h{indicator("zero", 0, 4), indicator("two", 2, 4)};
    ApproxInvariantMean m = construct_mean(a, h, eps, 32);
    CHECK(m.defect <= eps);
    CHECK(m.defect == Rational(0));  // symmetric generating set
  }
}

TEST_CASE("oscillation cover unavailable on a coarse topology") {
  // Two points, only opens are {0} and the whole space; any observable
  // separating the points oscillates on min_nbhd(1) = {0,1}.
  auto g = std::make_shared<GroupModel>(
      Family::IntegerLattice, 1, std::vector<Element>{el({-1}), el({0}), el({1})});
  FiniteSpace sierp(2, {pts({0}), pts({0, 1})});
  FiniteAction t(g, sierp, {{0, 1}, {0, 1}, {0, 1}});
  std::vector<Observable> h{indicator("sep", 0, 2)};
  CHECK_THROWS_WITH_AS(
      construct_mean(t, h, Rational(1, 10), 16),
      "oscillation cover unavailable: observable 'sep' varies more than "
      "theta/3 on the minimal neighborhood of point 1",
      validation_error);
  // A huge epsilon makes theta/3 exceed the oscillation and the run succeed.
  ApproxInvariantMean m = construct_mean(t, h, Rational(10), 16);
  CHECK(m.defect <= Rational(10));
}

TEST_CASE("invariance defect direct cases") {
  FiniteAction t = trivial_z2pts();
  std::vector<Observable> h{indicator("p", 0, 2)};
  CHECK(invariance_defect(t, {0}, h) == Rational(0));

  FiniteAction sw = swap2();
  std::vector<Observable> hs{indicator("one", 1, 2)};
  CHECK(invariance_defect(sw, {0}, hs) == Rational(1));
  CHECK(invariance_defect(sw, {0, 1}, hs) == Rational(0));
  CHECK_THROWS_AS(invariance_defect(sw, {}, hs), validation_error);
  CHECK_THROWS_AS(invariance_defect(sw, {5}, hs), validation_error);
}

TEST_CASE("defect is invariant under point relabeling") {
  // Swap action relabeled through the permutation (0 1): same defect.
  FiniteAction sw = swap2();
  std::vector<Observable> h{indicator("one", 1, 2)};
  Rational d1 = invariance_defect(sw, {0}, h);
  std::vector<Observable> h_rel{indicator("one", 0, 2)};
  Rational d2 = invariance_defect(sw, {1}, h_rel);
  CHECK(d1 == d2);
}
