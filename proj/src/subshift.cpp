#include "entcover/subshift.hpp"

#include <algorithm>
#include <cmath>

#include "entcover/errors.hpp"

namespace entcover {

namespace {

constexpr std::size_t kMaxTransferStates = 1u << 16;
constexpr double kMaxEnumerationWork = 24.0;  // log2 of tolerated leaf count

BigInt big_pow(BigInt base, long long exp) {
  BigInt out = 1;
  while (exp > 0) {
    if (exp & 1) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

// 1-D window form of a forbidden pattern: symbols with -1 wildcards.
struct Window {
  std::vector<int> cells;
};

}  // namespace

double log2_big(const BigInt& v) {
  if (v <= 0) throw validation_error("log2 of non-positive value");
  const std::size_t bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log2(static_cast<double>(v));
  BigInt shifted = v >> (bits - 52);
  return std::log2(static_cast<double>(shifted)) + static_cast<double>(bits - 52);
}

SubshiftModel::SubshiftModel(int alphabet, std::shared_ptr<const GroupModel> group,
                             std::vector<SubshiftPattern> forbidden)
    : alphabet_(alphabet), group_(std::move(group)), forbidden_(std::move(forbidden)) {
  if (alphabet_ < 1) throw validation_error("alphabet must be non-empty");
  for (SubshiftPattern& p : forbidden_) {
    if (p.cells.empty()) throw validation_error("forbidden pattern with empty domain");
    for (auto& [g, sym] : p.cells) {
      group_->validate_element(g);
      if (sym < 0 || sym >= alphabet_)
        throw validation_error("forbidden pattern symbol out of range");
    }
    std::sort(p.cells.begin(), p.cells.end());
    for (std::size_t i = 1; i < p.cells.size(); ++i)
      if (p.cells[i].first == p.cells[i - 1].first)
        throw validation_error("forbidden pattern assigns one cell twice");
  }
}

bool SubshiftModel::z_contiguous_domain(const std::vector<Element>& domain) const {
  if (group_->family() != Family::IntegerLattice || group_->param() != 1) return false;
  long long lo = domain.front().v[0], hi = domain.back().v[0];
  return hi - lo + 1 == static_cast<long long>(domain.size());
}

namespace {

// Builds window forms, the local de Bruijn graph and its two-sided
// pruning. Shared by counting and enumeration.
struct ZTransfer {
  int alphabet;
  int window;                      // W: max pattern width (>= 1)
  int block;                       // B = max(W - 1, 1)
  std::size_t n_states;            // alphabet^block
  std::vector<Window> windows;
  std::vector<bool> state_valid;   // no pattern fully inside the block
  std::vector<std::vector<int>> out_edges;  // state -> appended symbol ok? edges
  std::vector<bool> fwd_infinite;  // infinite right-extension
  std::vector<bool> bwd_infinite;  // infinite left-extension

  ZTransfer(int a, const std::vector<SubshiftPattern>& forbidden) : alphabet(a) {
    window = 1;
    for (const SubshiftPattern& p : forbidden) {
      long long lo = p.cells.front().first.v[0];
      long long hi = p.cells.back().first.v[0];
      window = std::max<int>(window, static_cast<int>(hi - lo + 1));
      Window w;
      w.cells.assign(static_cast<std::size_t>(hi - lo + 1), -1);
      for (const auto& [g, sym] : p.cells)
        w.cells[static_cast<std::size_t>(g.v[0] - lo)] = sym;
      windows.push_back(std::move(w));
    }
    block = std::max(window - 1, 1);
    double states_log = block * std::log2(static_cast<double>(alphabet));
    if (states_log > std::log2(static_cast<double>(kMaxTransferStates)))
      throw resource_limit_error("transfer-matrix state space too large");
    n_states = 1;
    for (int i = 0; i < block; ++i) n_states *= static_cast<std::size_t>(alphabet);

    state_valid.assign(n_states, true);
    std::vector<int> buf(static_cast<std::size_t>(block));
    for (std::size_t s = 0; s < n_states; ++s) {
      decode(s, buf);
      state_valid[s] = block_valid(buf);
    }
    out_edges.assign(n_states, {});
    std::vector<int> ext(static_cast<std::size_t>(block) + 1);
    for (std::size_t s = 0; s < n_states; ++s) {
      if (!state_valid[s]) continue;
      decode(s, buf);
      std::copy(buf.begin(), buf.end(), ext.begin());
      for (int sym = 0; sym < alphabet; ++sym) {
        ext.back() = sym;
        if (!step_valid(ext)) continue;
        std::size_t t = (s * static_cast<std::size_t>(alphabet) +
                         static_cast<std::size_t>(sym)) % n_states;
        if (state_valid[t]) out_edges[s].push_back(sym);
      }
    }
    fwd_infinite = prune_forward();
    bwd_infinite = prune_backward();
  }

  void decode(std::size_t s, std::vector<int>& buf) const {
    for (int i = block - 1; i >= 0; --i) {
      buf[static_cast<std::size_t>(i)] = static_cast<int>(s % static_cast<std::size_t>(alphabet));
      s /= static_cast<std::size_t>(alphabet);
    }
  }

  std::size_t successor(std::size_t s, int sym) const {
    return (s * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(sym)) % n_states;
  }

  bool matches_at(const std::vector<int>& word, std::size_t pos, const Window& w) const {
    if (pos + w.cells.size() > word.size()) return false;
    for (std::size_t i = 0; i < w.cells.size(); ++i)
      if (w.cells[i] >= 0 && word[pos + i] != w.cells[i]) return false;
    return true;
  }

  bool block_valid(const std::vector<int>& b) const {
    for (const Window& w : windows)
      for (std::size_t pos = 0; pos + w.cells.size() <= b.size(); ++pos)
        if (matches_at(b, pos, w)) return false;
    return true;
  }

  // Appended-symbol check: patterns ending at the new rightmost cell.
  bool step_valid(const std::vector<int>& ext) const {
    for (const Window& w : windows) {
      if (w.cells.size() > ext.size()) continue;
      if (matches_at(ext, ext.size() - w.cells.size(), w)) return false;
    }
    return true;
  }

  std::vector<bool> prune_forward() const {
    std::vector<bool> alive = state_valid;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < n_states; ++s) {
        if (!alive[s]) continue;
        bool has_out = false;
        for (int sym : out_edges[s])
          if (alive[successor(s, sym)]) {
            has_out = true;
            break;
          }
        if (!has_out) {
          alive[s] = false;
          changed = true;
        }
      }
    }
    return alive;
  }

  std::vector<bool> prune_backward() const {
    std::vector<bool> alive = state_valid;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<bool> has_in(n_states, false);
      for (std::size_t s = 0; s < n_states; ++s) {
        if (!alive[s]) continue;
        for (int sym : out_edges[s]) {
          std::size_t t = successor(s, sym);
          if (alive[t]) has_in[t] = true;
        }
      }
      for (std::size_t s = 0; s < n_states; ++s)
        if (alive[s] && !has_in[s]) {
          alive[s] = false;
          changed = true;
        }
    }
    return alive;
  }
};

}  // namespace

BigInt SubshiftModel::transfer_matrix_count(long long lo, long long hi,
                                            bool* exact_out) const {
  if (exact_out) *exact_out = true;
  const long long len = hi - lo + 1;
  ZTransfer t(alphabet_, forbidden_);
  if (len < t.block) {
    // Short words: globally admissible iff they occur inside a two-sided
    // infinite block, i.e. as a subword of a state alive in both prunings.
    std::vector<std::vector<int>> subwords;
    std::vector<int> buf(static_cast<std::size_t>(t.block));
    for (std::size_t s = 0; s < t.n_states; ++s) {
      if (!(t.fwd_infinite[s] && t.bwd_infinite[s])) continue;
      t.decode(s, buf);
      for (std::size_t pos = 0; pos + static_cast<std::size_t>(len) <= buf.size(); ++pos)
        subwords.emplace_back(buf.begin() + static_cast<long>(pos),
                              buf.begin() + static_cast<long>(pos) + len);
    }
    std::sort(subwords.begin(), subwords.end());
    subwords.erase(std::unique(subwords.begin(), subwords.end()), subwords.end());
    return BigInt(subwords.size());
  }
  std::vector<BigInt> dp(t.n_states, 0);
  for (std::size_t s = 0; s < t.n_states; ++s)
    if (t.bwd_infinite[s]) dp[s] = 1;
  for (long long step = 0; step < len - t.block; ++step) {
    std::vector<BigInt> next(t.n_states, 0);
    for (std::size_t s = 0; s < t.n_states; ++s) {
      if (dp[s] == 0) continue;
      for (int sym : t.out_edges[s]) next[t.successor(s, sym)] += dp[s];
    }
    dp.swap(next);
  }
  BigInt total = 0;
  for (std::size_t s = 0; s < t.n_states; ++s)
    if (t.fwd_infinite[s]) total += dp[s];
  return total;
}

BigInt SubshiftModel::count_on_domain(const std::vector<Element>& domain,
                                      CountMethod* method_out) const {
  if (domain.empty()) throw validation_error("empty domain");
  if (is_full_shift()) {
    if (method_out) *method_out = CountMethod::Exhaustive;
    return big_pow(alphabet_, static_cast<long long>(domain.size()));
  }
  if (z_contiguous_domain(domain)) {
    if (method_out) *method_out = CountMethod::TransferMatrix;
    return transfer_matrix_count(domain.front().v[0], domain.back().v[0], nullptr);
  }
  // Locally admissible count by pruned depth-first enumeration.
  if (method_out) *method_out = CountMethod::LocallyAdmissible;
  if (static_cast<double>(domain.size()) * std::log2(static_cast<double>(alphabet_)) >
      kMaxEnumerationWork)
    throw resource_limit_error("pattern enumeration domain too large");

  // Constraints: forbidden occurrences whose translated domain fits inside.
  struct Constraint {
    std::vector<std::pair<int, int>> cells;  // (domain index, symbol)
    int last = 0;
  };
  std::vector<Constraint> constraints;
  auto index_of = [&domain](const Element& g) -> int {
    auto it = std::lower_bound(domain.begin(), domain.end(), g);
    if (it == domain.end() || *it != g) return -1;
    return static_cast<int>(it - domain.begin());
  };
  for (const SubshiftPattern& p : forbidden_) {
    const Element& o0 = p.cells.front().first;
    std::vector<Element> anchors;
    for (const Element& d : domain)
      anchors.push_back(group_->mul(group_->inv(o0), d));
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
    for (const Element& g : anchors) {
      Constraint c;
      bool fits = true;
      for (const auto& [o, sym] : p.cells) {
        int idx = index_of(group_->mul(o, g));
        if (idx < 0) {
          fits = false;
          break;
        }
        c.cells.emplace_back(idx, sym);
      }
      if (!fits) continue;
      std::sort(c.cells.begin(), c.cells.end());
      c.last = c.cells.back().first;
      constraints.push_back(std::move(c));
    }
  }
  std::vector<std::vector<const Constraint*>> by_last(domain.size());
  for (const Constraint& c : constraints)
    by_last[static_cast<std::size_t>(c.last)].push_back(&c);

  BigInt count = 0;
  std::vector<int> assignment(domain.size(), -1);
  auto violates = [&](std::size_t pos) {
    for (const Constraint* c : by_last[pos]) {
      bool match = true;
      for (auto [idx, sym] : c->cells)
        if (assignment[static_cast<std::size_t>(idx)] != sym) {
          match = false;
          break;
        }
      if (match) return true;
    }
    return false;
  };
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == domain.size()) {
      ++count;
      return;
    }
    for (int sym = 0; sym < alphabet_; ++sym) {
      assignment[pos] = sym;
      if (!violates(pos)) self(self, pos + 1);
    }
    assignment[pos] = -1;
  };
  dfs(dfs, 0);
  return count;
}

PatternCount SubshiftModel::pattern_count(int n) const {
  if (n < 1) throw validation_error("pattern_count needs n >= 1");
  PatternCount out;
  out.n = n;
  CountMethod method = CountMethod::Exhaustive;
  out.count = count_on_domain(group_->ball(n).elements, &method);
  out.method = method;
  out.exact = method != CountMethod::LocallyAdmissible;
  return out;
}

std::vector<std::vector<int>> SubshiftModel::enumerate_z_words(long long lo,
                                                               long long hi,
                                                               std::size_t cap) const {
  ZTransfer t(alphabet_, forbidden_);
  const long long len = hi - lo + 1;
  std::vector<std::vector<int>> out;
  if (len < t.block) {
    std::vector<int> buf(static_cast<std::size_t>(t.block));
    for (std::size_t s = 0; s < t.n_states; ++s) {
      if (!(t.fwd_infinite[s] && t.bwd_infinite[s])) continue;
      t.decode(s, buf);
      for (std::size_t p = 0; p + static_cast<std::size_t>(len) <= buf.size(); ++p)
        out.emplace_back(buf.begin() + static_cast<long>(p),
                         buf.begin() + static_cast<long>(p) + len);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > cap) throw resource_limit_error("pattern enumeration cap hit");
    return out;
  }
  // Feasibility table: can state s reach a forward-infinite state in
  // exactly k steps.
  const long long steps = len - t.block;
  std::vector<std::vector<bool>> feasible(static_cast<std::size_t>(steps) + 1,
                                          std::vector<bool>(t.n_states, false));
  for (std::size_t s = 0; s < t.n_states; ++s)
    feasible[0][s] = t.fwd_infinite[s];
  for (long long k = 1; k <= steps; ++k)
    for (std::size_t s = 0; s < t.n_states; ++s) {
      if (!t.state_valid[s]) continue;
      for (int sym : t.out_edges[s])
        if (feasible[static_cast<std::size_t>(k - 1)][t.successor(s, sym)]) {
          feasible[static_cast<std::size_t>(k)][s] = true;
          break;
        }
    }
  std::vector<int> word;
  std::vector<int> buf(static_cast<std::size_t>(t.block));
  auto extend = [&](auto&& self, std::size_t state, long long remaining) -> void {
    if (remaining == 0) {
      out.push_back(word);
      if (out.size() > cap) throw resource_limit_error("pattern enumeration cap hit");
      return;
    }
    for (int sym : t.out_edges[state]) {
      std::size_t nxt = t.successor(state, sym);
      if (!feasible[static_cast<std::size_t>(remaining - 1)][nxt]) continue;
      word.push_back(sym);
      self(self, nxt, remaining - 1);
      word.pop_back();
    }
  };
  for (std::size_t s0 = 0; s0 < t.n_states; ++s0) {
    if (!t.bwd_infinite[s0] || !feasible[static_cast<std::size_t>(steps)][s0]) continue;
    t.decode(s0, buf);
    word.assign(buf.begin(), buf.end());
    extend(extend, s0, steps);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> SubshiftModel::enumerate_patterns(int n,
                                                                std::size_t cap) const {
  const std::vector<Element>& domain = group_->ball(n).elements;
  if (is_full_shift()) {
    BigInt total = big_pow(alphabet_, static_cast<long long>(domain.size()));
    if (total > cap) throw resource_limit_error("pattern enumeration cap hit");
    std::vector<std::vector<int>> out;
    std::vector<int> word(domain.size(), 0);
    while (true) {
      out.push_back(word);
      std::size_t i = word.size();
      while (i > 0 && word[i - 1] == alphabet_ - 1) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (z_contiguous_domain(domain))
    return enumerate_z_words(domain.front().v[0], domain.back().v[0], cap);
  throw resource_limit_error(
      "exact pattern enumeration only available for full shifts and Z-SFTs");
}

std::vector<std::pair<int, BigInt>> SubshiftModel::count_sequence(int n_max) const {
  if (n_max < 1) throw validation_error("n_max must be at least 1");
  std::vector<std::pair<int, BigInt>> out;
  for (int n = 1; n <= n_max; ++n) out.emplace_back(n, pattern_count(n).count);
  return out;
}

EstimateReport SubshiftModel::entropy_estimate(int n_max) const {
  if (n_max < 2) throw validation_error("entropy estimate needs n_max >= 2");
  auto seq = count_sequence(n_max);
  std::vector<double> log2v;
  std::vector<bool> eq;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].second <= 0)
      throw validation_error("empty subshift has no entropy estimate");
    log2v.push_back(log2_big(seq[i].second));
    if (i + 1 < seq.size()) eq.push_back(seq[i].second == seq[i + 1].second);
  }
  return estimate_from_log2(log2v, eq);
}

SubshiftComplexity certified_complexity(const SubshiftModel& model, int n,
                                        std::size_t enum_cap) {
  PatternCount pc = model.pattern_count(n);
  SubshiftComplexity out;
  out.n = n;
  out.value = pc.count;
  out.method = pc.method;
  out.exact = pc.exact;
  if (!pc.exact)
    throw resource_limit_error(
        "exactness not available: only a locally-admissible bracket exists for "
        "this model");
  out.certificate.domain = model.group().ball(n).elements;
  if (pc.count <= enum_cap) {
    out.certificate.points = model.enumerate_patterns(n, enum_cap);
    out.certificate_complete = true;
    if (BigInt(out.certificate.points.size()) != pc.count)
      throw invariant_violation("certificate size disagrees with pattern count");
  } else {
    out.certificate_complete = false;
  }
  return out;
}

void verify_certificate(const SubshiftModel& model, const SubshiftComplexity& c) {
  PatternCount pc = model.pattern_count(c.n);
  if (pc.count != c.value)
    throw verification_error("certified value disagrees with recomputed count");
  const std::vector<Element>& domain = model.group().ball(c.n).elements;
  if (c.certificate.domain != domain)
    throw verification_error("certificate domain is not ball(n)");
  if (!c.certificate_complete) return;
  if (BigInt(c.certificate.points.size()) != c.value)
    throw verification_error("certificate has the wrong number of points");
  std::vector<std::vector<int>> sorted = c.certificate.points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1])
      throw verification_error("certificate points are not pairwise distinct");
  for (const auto& p : sorted)
    if (p.size() != domain.size())
      throw verification_error("certificate point has the wrong domain size");
  // Explicit pairwise witness pass for small families: exhibit, for each
  // pair, the ball element where the two configurations receive different
  // symbol cylinders.
  if (sorted.size() <= 64) {
    for (std::size_t i = 0; i < sorted.size(); ++i)
      for (std::size_t j = i + 1; j < sorted.size(); ++j) {
        bool witnessed = false;
        for (std::size_t k = 0; k < domain.size(); ++k)
          if (sorted[i][k] != sorted[j][k]) {
            witnessed = true;
            break;
          }
        if (!witnessed)
          throw verification_error("pair of certificate points has no witness");
      }
  }
}

SubshiftComparison compare_generating_sets_subshift(const SubshiftModel& model,
                                                    const std::vector<Element>& t_gens,
                                                    int n_max) {
  const GroupModel& gs = model.group();
  GroupModel gt(gs.family(), gs.param(), t_gens, gs.ball_cap());
  SubshiftComparison r;
  r.m = gs.covering_index(t_gens);
  r.n = gt.covering_index(gs.generators());
  for (int k = 1; k <= n_max; ++k) {
    BigInt sc = model.count_on_domain(gs.ball(k).elements);
    BigInt tc = model.count_on_domain(gt.ball(k * r.n).elements);
    if (sc > tc) r.inequality_holds = false;
    r.s_counts.push_back(std::move(sc));
    r.t_counts_kn.push_back(std::move(tc));
  }
  r.s_tail_slope = log2_big(r.s_counts.back()) / n_max;
  BigInt t_base = model.count_on_domain(gt.ball(n_max).elements);
  r.t_tail_slope = log2_big(t_base) / n_max;
  return r;
}

}  // namespace entcover
