#include "entcover/dualball.hpp"

#include <algorithm>

#include "entcover/errors.hpp"

namespace entcover {

namespace {

void check_escape(const GroupModel& g, const std::vector<Element>& s) {
  for (std::size_t m = 1; m < s.size(); ++m) {
    Element p = s[m];
    for (std::size_t n = m; n-- > 0;) {
      // p = s_m ... s_n after extending on the right
      p = g.mul(p, s[n]);
      if (g.in_ball(p, static_cast<int>(m - n)))
        throw verification_error("escape property fails at (m,n) = (" +
                                 std::to_string(m + 1) + "," + std::to_string(n + 1) +
                                 ")");
    }
  }
}

}  // namespace

std::vector<Element> escape_sequence(const GroupModel& group, int length) {
  if (group.is_finite())
    throw validation_error("escape sequence requires an infinite group");
  if (length < 1) throw validation_error("length must be positive");

  const auto& gens = group.generators();
  std::vector<Element> seq;
  // prefix_products[k][j] = s_k ... s_j for j <= k
  std::vector<std::vector<Element>> prefix_products;

  auto dfs = [&](auto&& self) -> bool {
    if (static_cast<int>(seq.size()) == length) return true;
    for (const Element& s : gens) {
      std::vector<Element> row;
      bool ok = true;
      // New products s_k ... s_j = s * (s_{k-1} ... s_j); radius k - j.
      for (std::size_t j = 0; j <= seq.size() && ok; ++j) {
        Element p = (j == seq.size()) ? s : group.mul(s, prefix_products.back()[j]);
        if (j < seq.size() && group.in_ball(p, static_cast<int>(seq.size() - j)))
          ok = false;
        else
          row.push_back(p);
      }
      if (!ok) continue;
      seq.push_back(s);
      prefix_products.push_back(std::move(row));
      if (self(self)) return true;
      seq.pop_back();
      prefix_products.pop_back();
    }
    return false;
  };
  if (!dfs(dfs))
    throw resource_limit_error(
        "escape sequence search exhausted; generating set may not escape within "
        "the ball cap");
  return seq;
}

DualBallWitness build_witness(const GroupModel& group, int n) {
  if (n < 1) throw validation_error("witness level must be positive");
  DualBallWitness w;
  w.n = n;
  w.s_seq = escape_sequence(group, 2 * n);
  for (int j = 1; j <= n; ++j)
    w.t_seq.push_back(group.mul(w.s_seq[static_cast<std::size_t>(2 * j - 1)],
                                w.s_seq[static_cast<std::size_t>(2 * j - 2)]));
  // Counting measure; f is the indicator of {e}: supp(f) = {e} is open in
  // the discrete topology, f(e) = 1, so the Urysohn step degenerates.
  w.f[group.identity()] = 1;
  w.c = 0;
  for (const auto& [g, val] : w.f) w.c += val * val;

  // Support translate of f o lambda(t_j...t_1) is (t_j...t_1)^{-1} supp(f).
  std::vector<Element> g_prods;  // t_j ... t_1
  Element acc = group.identity();
  for (const Element& t : w.t_seq) {
    acc = group.mul(t, acc);
    g_prods.push_back(acc);
    w.supports.push_back(group.inv(acc));
  }

  // Gram entries <f o lambda(g_i), f o lambda(g_j)> computed exactly.
  std::vector<std::vector<Rational>> gram(static_cast<std::size_t>(n),
                                          std::vector<Rational>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational sum = 0;
      for (const auto& [x, fx] : w.f) {
        // (f o lambda(g_j))(y) at y = g_i^{-1} x, i.e. f(g_j g_i^{-1} x)
        Element y = group.mul(g_prods[static_cast<std::size_t>(j)],
                              group.mul(group.inv(g_prods[static_cast<std::size_t>(i)]), x));
        auto it = w.f.find(y);
        if (it != w.f.end()) sum += fx * it->second;
      }
      gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum;
    }

  const std::size_t families = std::size_t{1} << n;
  w.pairing.assign(families, std::vector<Rational>(static_cast<std::size_t>(n), 0));
  for (std::size_t d = 0; d < families; ++d)
    for (int i = 0; i < n; ++i) {
      Rational p = 0;
      for (int j = 0; j < n; ++j)
        if (d >> j & 1)
          p += gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      w.pairing[d][static_cast<std::size_t>(i)] = p;
    }
  verify_witness(group, w);
  return w;
}

void verify_witness(const GroupModel& group, const DualBallWitness& w) {
  if (w.n < 1 || w.s_seq.size() != static_cast<std::size_t>(2 * w.n) ||
      w.t_seq.size() != static_cast<std::size_t>(w.n))
    throw verification_error("witness has inconsistent dimensions");
  for (int j = 1; j <= w.n; ++j) {
    Element t = group.mul(w.s_seq[static_cast<std::size_t>(2 * j - 1)],
                          w.s_seq[static_cast<std::size_t>(2 * j - 2)]);
    if (t != w.t_seq[static_cast<std::size_t>(j - 1)])
      throw verification_error("t sequence does not match the escape sequence");
  }
  for (const Element& s : w.s_seq) {
    const auto& gens = group.generators();
    if (std::find(gens.begin(), gens.end(), s) == gens.end())
      throw verification_error("escape sequence leaves the generating set");
  }
  check_escape(group, w.s_seq);

  auto fe = w.f.find(group.identity());
  if (fe == w.f.end() || fe->second != 1)
    throw verification_error("kernel must satisfy f(e) = 1");
  Rational c = 0;
  for (const auto& [g, val] : w.f) {
    if (abs(val) > 1) throw verification_error("kernel exceeds sup-norm 1");
    c += val * val;
  }
  if (c != w.c || c <= 0) throw verification_error("stored c disagrees with sum of f^2");

  // Supports of the translates must be pairwise disjoint.
  std::vector<std::vector<Element>> supp;
  Element acc = group.identity();
  for (int j = 0; j < w.n; ++j) {
    acc = group.mul(w.t_seq[static_cast<std::size_t>(j)], acc);
    if (w.supports[static_cast<std::size_t>(j)] != group.inv(acc))
      throw verification_error("stored support translate mismatch");
    std::vector<Element> s;
    for (const auto& [x, val] : w.f)
      if (val != 0) s.push_back(group.mul(group.inv(acc), x));
    std::sort(s.begin(), s.end());
    supp.push_back(std::move(s));
  }
  for (int i = 0; i < w.n; ++i)
    for (int j = i + 1; j < w.n; ++j)
      for (const Element& x : supp[static_cast<std::size_t>(i)])
        if (std::binary_search(supp[static_cast<std::size_t>(j)].begin(),
                               supp[static_cast<std::size_t>(j)].end(), x))
          throw verification_error("support translates are not disjoint");

  // Pairing identity P[delta][i] = delta(i) * c, exactly.
  const std::size_t families = std::size_t{1} << w.n;
  if (w.pairing.size() != families)
    throw verification_error("pairing table has the wrong number of rows");
  for (std::size_t d = 0; d < families; ++d) {
    if (w.pairing[d].size() != static_cast<std::size_t>(w.n))
      throw verification_error("pairing row has the wrong length");
    for (int i = 0; i < w.n; ++i) {
      Rational expected = (d >> i & 1) ? w.c : Rational(0);
      if (w.pairing[d][static_cast<std::size_t>(i)] != expected)
        throw verification_error("pairing identity fails at P[" + std::to_string(d) +
                                 "][" + std::to_string(i + 1) + "]");
    }
  }
  // Threshold dichotomy: every distinct pair lands on opposite sides of
  // c/3 and 2c/3 at the first differing coordinate, forcing distinct
  // members in any refining cover.
  const Rational lo = w.c / 3, hi = 2 * w.c / 3;
  for (std::size_t d0 = 0; d0 < families; ++d0)
    for (std::size_t d1 = d0 + 1; d1 < families; ++d1) {
      std::size_t diff = d0 ^ d1;
      int i = __builtin_ctzll(diff);
      const Rational& p0 = w.pairing[d0][static_cast<std::size_t>(i)];
      const Rational& p1 = w.pairing[d1][static_cast<std::size_t>(i)];
      const Rational& small = (d0 >> i & 1) ? p1 : p0;
      const Rational& large = (d0 >> i & 1) ? p0 : p1;
      if (!(small < lo && large > hi))
        throw verification_error("threshold dichotomy fails for a pair of deltas");
    }
}

LowerBoundReport lower_bound_entropy(const GroupModel& group, int n) {
  LowerBoundReport r;
  r.n = n;
  // Least j with S^j an identity neighborhood; in the discrete topology
  // this is the least j with e in ball(j), which is 1 since e is in S.
  r.k = group.covering_index({group.identity()});
  r.bound = Rational(1, 2 * r.k);
  r.witness = build_witness(group, n);
  return r;
}

}  // namespace entcover
