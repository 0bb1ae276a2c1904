#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>

#include "entcover/dualball.hpp"
#include "entcover/errors.hpp"

using namespace entcover;

namespace {

Element el(std::vector<Int> v) { return Element{std::move(v)}; }

GroupModel z_group() {
  return GroupModel(Family::IntegerLattice, 1, {el({-1}), el({0}), el({1})});
}

GroupModel z2_group() {
  return GroupModel(Family::IntegerLattice, 2,
                    {el({0, 0}), el({1, 0}), el({-1, 0}), el({0, 1}), el({0, -1})});
}

GroupModel f2_group() {
  return GroupModel(Family::FreeGroup, 2,
                    {el({}), el({1}), el({-1}), el({2}), el({-2})});
}

void check_escape(const GroupModel& g, const std::vector<Element>& s) {
  for (std::size_t m = 1; m < s.size(); ++m) {
    Element p = s[m];
    for (std::size_t n = m; n-- > 0;) {
      p = g.mul(p, s[n]);
      CHECK_FALSE(g.in_ball(p, static_cast<int>(m - n)));
    }
  }
}

}  // namespace

TEST_CASE("escape sequences leave every matching ball") {
  GroupModel z = z_group();
  std::vector<Element> s = escape_sequence(z, 6);
  REQUIRE(s.size() == 6);
  for (const Element& g : s)
    CHECK(std::find(z.generators().begin(), z.generators().end(), g) !=
          z.generators().end());
  check_escape(z, s);

  GroupModel f = f2_group();
  check_escape(f, escape_sequence(f, 4));
  GroupModel z2 = z2_group();
  check_escape(z2, escape_sequence(z2, 6));
}

TEST_CASE("finite groups are rejected") {
  GroupModel c6(Family::Cyclic, 6, {el({0}), el({2}), el({3})});
  CHECK_THROWS_WITH_AS(escape_sequence(c6, 2),
                       "escape sequence requires an infinite group",
                       validation_error);
  CHECK_THROWS_AS(lower_bound_entropy(c6, 2), validation_error);
  CHECK_THROWS_AS(escape_sequence(z_group(), 0), validation_error);
}

TEST_CASE("witness structure for the line at level 2") {
  GroupModel z = z_group();
  DualBallWitness w = build_witness(z, 2);
  CHECK(w.n == 2);
  CHECK(w.s_seq.size() == 4);
  CHECK(w.t_seq.size() == 2);
  CHECK(w.c == Rational(1));
  // t_j products have word length 2, so the two support translates sit at
  // distance 2 and 4 from the origin on opposite sides of the kernel.
  CHECK(w.supports[0] != w.supports[1]);
  // Pairing table realizes P[d][i] = delta(i) * c for all four deltas.
  for (std::size_t d = 0; d < 4; ++d)
    for (int i = 0; i < 2; ++i)
      CHECK(w.pairing[d][static_cast<std::size_t>(i)] ==
            ((d >> i & 1) ? w.c : Rational(0)));
}

TEST_CASE("single bit witness") {
  GroupModel z = z_group();
  DualBallWitness w = build_witness(z, 1);
  CHECK(w.pairing.size() == 2);
  CHECK(w.pairing[0][0] == Rational(0));
  CHECK(w.pairing[1][0] == w.c);
}

TEST_CASE("witnesses verify for several groups and levels") {
  GroupModel z = z_group();
  GroupModel z2 = z2_group();
  GroupModel f = f2_group();
  for (int n = 1; n <= 6; ++n) CHECK_NOTHROW(build_witness(z, n));
  for (int n = 1; n <= 4; ++n) {
    CHECK_NOTHROW(build_witness(z2, n));
    CHECK_NOTHROW(build_witness(f, n));
  }
}

TEST_CASE("tampered witnesses are rejected") {
  GroupModel z = z_group();
  DualBallWitness w = build_witness(z, 2);

  DualBallWitness bad_pairing = w;
  bad_pairing.pairing[2][0] += 1;
  CHECK_THROWS_AS(verify_witness(z, bad_pairing), verification_error);

  DualBallWitness bad_t = w;
  bad_t.t_seq[0] = z.identity();
  CHECK_THROWS_AS(verify_witness(z, bad_t), verification_error);

  DualBallWitness bad_support = w;
  bad_support.supports[0] = el({17});
  CHECK_THROWS_AS(verify_witness(z, bad_support), verification_error);

  DualBallWitness bad_kernel = w;
  bad_kernel.f[z.identity()] = Rational(1, 2);
  CHECK_THROWS_AS(verify_witness(z, bad_kernel), verification_error);

  DualBallWitness bad_gen = w;
  bad_gen.s_seq[0] = el({5});
  CHECK_THROWS_AS(verify_witness(z, bad_gen), verification_error);

  DualBallWitness bad_norm = w;
  bad_norm.f[el({9})] = Rational(3);
  CHECK_THROWS_AS(verify_witness(z, bad_norm), verification_error);
}

TEST_CASE("a non escaping sequence fails verification") {
  GroupModel z = z_group();
  DualBallWitness w = build_witness(z, 2);
  // Insert a backtracking step: products fall back into small balls.
  DualBallWitness bad = w;
  bad.s_seq = {el({1}), el({-1}), el({1}), el({-1})};
  CHECK_THROWS_AS(verify_witness(z, bad), verification_error);
}

TEST_CASE("lower bound reports") {
  GroupModel z = z_group();
  LowerBoundReport r = lower_bound_entropy(z, 3);
  CHECK(r.k == 1);
  CHECK(r.bound == Rational(1, 2));
  CHECK(r.n == 3);
  CHECK(r.witness.pairing.size() == 8);

  GroupModel f = f2_group();
  LowerBoundReport rf = lower_bound_entropy(f, 2);
  CHECK(rf.k == 1);
  CHECK(rf.bound == Rational(1, 2));
}
