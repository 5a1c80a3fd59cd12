#include "toybit/normalform.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace toybit {

Gslo::Gslo(AdjacencyMatrix t, std::vector<LocalOp> o) : theta(std::move(t)), ops(std::move(o)) {
  if (ops.size() != theta.size()) throw std::invalid_argument("GSLO: one operator per vertex required");
}

Diagram graph_state(const AdjacencyMatrix& theta) {
  const std::size_t n = theta.size();
  Diagram d(0, n);
  for (std::size_t k = 0; k < n; ++k) {
    d.add_green();
    d.add_edge(End::node(k), End::output(k));
  }
  for (auto [a, b] : theta.edges()) {
    const std::size_t h = d.add_h();
    d.add_edge(End::node(a), End::node(h));
    d.add_edge(End::node(h), End::node(b));
  }
  return d;
}

Diagram render(const Gslo& g) {
  if (g.size() == 0) return graph_state(g.theta);
  Diagram layer = op_diagram(g.ops[0]);
  for (std::size_t k = 1; k < g.size(); ++k) layer = par(layer, op_diagram(g.ops[k]));
  return seq(graph_state(g.theta), layer);
}

std::string to_string(const Gslo& g) {
  std::ostringstream os;
  os << "vertices " << g.size() << '\n';
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << v << ':';
    for (auto w : g.theta.neighbours(v)) os << ' ' << w;
    os << "  op " << canonical_word(g.ops[v]).str() << '\n';
  }
  return os.str();
}

namespace {

void check_vertex(const Gslo& g, std::size_t v) {
  if (v >= g.size()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

void note(Trace* t, std::string s) {
  if (t) t->push_back(std::move(s));
}

}  // namespace

Gslo fixpoint(Gslo g, std::size_t v) {
  check_vertex(g, v);
  g.ops[v] = g.ops[v] * LocalOp::red(kPhase11);
  for (auto w : g.theta.neighbours(v)) g.ops[w] = g.ops[w] * LocalOp::green(kPhase11);
  return g;
}

Gslo local_comp(Gslo g, std::size_t v) {
  check_vertex(g, v);
  g.ops[v] = g.ops[v] * LocalOp::red(kPhase01);
  for (auto w : g.theta.neighbours(v)) g.ops[w] = g.ops[w] * LocalOp::green(kPhase01);
  g.theta = local_complement_adj(g.theta, v);
  return g;
}

Gslo pivot(Gslo g, std::size_t v, std::size_t w) {
  check_vertex(g, v);
  check_vertex(g, w);
  if (v == w || !g.theta.has_edge(v, w))
    throw std::invalid_argument("pivot: {" + std::to_string(v) + "," + std::to_string(w) + "} is not an edge");
  return local_comp(local_comp(local_comp(std::move(g), v), w), v);
}

// ---------------------------------------------------------------------------
// Frontier absorption.

namespace {

const std::array<std::uint8_t, 2> kGreenSet{0, 2};  // ontic states of the 00 green state

bool meets_green00(const LocalOp& op) {
  for (auto s : kGreenSet)
    if (op(s) == 0 || op(s) == 2) return true;
  return false;
}

enum class Move { LcSelf, FixSelf, LcNbr, FixNbr };

class Absorber {
 public:
  explicit Absorber(Trace* trace) : trace_(trace) {}

  [[nodiscard]] bool zero() const { return zero_; }
  Gslo& gslo() { return g_; }
  std::vector<long>& keys() { return keys_; }

  std::size_t index_of(long key) const {
    const auto it = std::find(keys_.begin(), keys_.end(), key);
    if (it == keys_.end()) throw std::logic_error("to_gslo: unknown wire end");
    return static_cast<std::size_t>(it - keys_.begin());
  }

  std::size_t add_vertex(long key) {
    const std::size_t v = g_.theta.add_vertex();
    g_.ops.emplace_back();
    keys_.push_back(key);
    return v;
  }

  void cup(long ka, long kb) {
    const std::size_t a = add_vertex(ka);
    const std::size_t b = add_vertex(kb);
    g_.theta.set_edge(a, b, true);
    g_.ops[b] = LocalOp::hadamard();
    note(trace_, "cup " + std::to_string(a) + " " + std::to_string(b));
  }

  void apply(long key, const LocalOp& op) {
    const std::size_t v = index_of(key);
    g_.ops[v] = op * g_.ops[v];
  }

  void scalar(bool is_zero) {
    if (is_zero) zero_ = true;
  }

  /// Green 00 effect on the wire.
  void effect(long key) {
    const std::size_t x = index_of(key);
    note(trace_, "effect " + std::to_string(x));
    if (g_.theta.neighbours(x).empty()) {
      scalar(!meets_green00(g_.ops[x]));
      erase(x);
      return;
    }
    steer(x, std::nullopt, [](const LocalOp& op) { return op == LocalOp::green(kPhase01); });
    const auto nb = g_.theta.neighbours(x);
    g_.theta = local_complement_adj(g_.theta, x);
    for (auto w : nb) g_.ops[w] = g_.ops[w] * LocalOp::green(kPhase01);
    erase(x);
  }

  /// Green 1 -> 2 spider on the wire; the second output gets `new_key`.
  void split(long key, long new_key) {
    const std::size_t x = index_of(key);
    note(trace_, "split " + std::to_string(x));
    const bool green = steer(x, std::nullopt, [](const LocalOp& op) { return op.is_green(); });
    const std::size_t y = add_vertex(new_key);
    if (green) {
      g_.theta.set_edge(x, y, true);
      g_.ops[y] = LocalOp::hadamard();
    } else {
      // isolated vertex in a red state: both copies carry the same state
      g_.ops[y] = g_.ops[x];
    }
  }

  /// Plain cap joining two wires.
  void cap(long ka, long kb) {
    std::size_t a = index_of(ka);
    std::size_t b = index_of(kb);
    note(trace_, "cap " + std::to_string(a) + " " + std::to_string(b));
    auto others = [&](std::size_t v, std::size_t skip) {
      auto nb = g_.theta.neighbours(v);
      std::erase(nb, skip);
      return nb;
    };
    if (others(a, b).empty() && others(b, a).empty()) {
      scalar(!closed_pair_nonzero(a, b));
      erase_pair(a, b);
      return;
    }
    if (others(a, b).empty()) std::swap(a, b);
    transfer(a, b);
    steer(a, b, [](const LocalOp& op) { return op.is_green(); });
    transfer(a, b);
    // Merge a and b into one vertex carrying the green phase, then post-select.
    auto merged = others(a, b);
    for (auto v : others(b, a)) {
      auto it = std::find(merged.begin(), merged.end(), v);
      if (it == merged.end()) merged.push_back(v);
      else merged.erase(it);
    }
    const LocalOp op = g_.ops[a];
    const long mkey = fresh_key();
    const std::size_t m = add_vertex(mkey);
    for (auto v : merged) g_.theta.set_edge(m, v, true);
    g_.ops[m] = op;
    erase_pair(a, b);
    effect(mkey);
  }

  long fresh_key() { return next_key_--; }

 private:
  /// cap o (A x B) equals cap o (B^-1 A x id).
  void transfer(std::size_t a, std::size_t b) {
    g_.ops[a] = g_.ops[b].inverse() * g_.ops[a];
    g_.ops[b] = LocalOp{};
  }

  bool closed_pair_nonzero(std::size_t a, std::size_t b) const {
    const bool edge = g_.theta.has_edge(a, b);
    for (unsigned ua = 0; ua < 2; ++ua)
      for (unsigned ub = 0; ub < 2; ++ub) {
        const unsigned va = edge ? ub : 0;
        const unsigned vb = edge ? ua : 0;
        if (g_.ops[a](static_cast<std::uint8_t>(ontic_from(ua, va))) ==
            g_.ops[b](static_cast<std::uint8_t>(ontic_from(ub, vb))))
          return true;
      }
    return false;
  }

  void erase(std::size_t x) {
    g_.theta.erase_vertex(x);
    g_.ops.erase(g_.ops.begin() + static_cast<std::ptrdiff_t>(x));
    keys_.erase(keys_.begin() + static_cast<std::ptrdiff_t>(x));
  }

  void erase_pair(std::size_t a, std::size_t b) {
    erase(std::max(a, b));
    erase(std::min(a, b));
  }

  /// Right-multiplies ops[x] by lc/fixpoint compensations at x and at one
  /// neighbour (not `avoid`) until `goal` holds. Returns false if unreachable.
  bool steer(std::size_t x, std::optional<std::size_t> avoid, const std::function<bool(const LocalOp&)>& goal) {
    std::optional<std::size_t> w;
    for (auto v : g_.theta.neighbours(x))
      if (!avoid || v != *avoid) {
        w = v;
        break;
      }
    std::vector<std::pair<Move, LocalOp>> gens{{Move::LcSelf, LocalOp::red(kPhase01)},
                                               {Move::FixSelf, LocalOp::red(kPhase11)}};
    if (w) {
      gens.emplace_back(Move::LcNbr, LocalOp::green(kPhase01));
      gens.emplace_back(Move::FixNbr, LocalOp::green(kPhase11));
    }
    std::map<LocalOp, std::pair<LocalOp, Move>> parent;
    std::queue<LocalOp> q;
    const LocalOp start = g_.ops[x];
    parent.emplace(start, std::make_pair(start, Move::LcSelf));
    q.push(start);
    std::optional<LocalOp> found;
    while (!q.empty()) {
      const LocalOp cur = q.front();
      q.pop();
      if (goal(cur)) {
        found = cur;
        break;
      }
      for (const auto& [mv, mult] : gens) {
        const LocalOp next = cur * mult;
        if (parent.emplace(next, std::make_pair(cur, mv)).second) q.push(next);
      }
    }
    if (!found) return false;
    std::vector<Move> path;
    for (LocalOp cur = *found; !(cur == start);) {
      const auto& [prev, mv] = parent.at(cur);
      path.push_back(mv);
      cur = prev;
    }
    std::reverse(path.begin(), path.end());
    for (Move mv : path) {
      switch (mv) {
        case Move::LcSelf:
          g_ = local_comp(std::move(g_), x);
          note(trace_, "lc " + std::to_string(x));
          break;
        case Move::FixSelf:
          g_ = fixpoint(std::move(g_), x);
          note(trace_, "fixpoint " + std::to_string(x));
          break;
        case Move::LcNbr:
          g_ = local_comp(std::move(g_), *w);
          note(trace_, "lc " + std::to_string(*w));
          break;
        case Move::FixNbr:
          g_ = fixpoint(std::move(g_), *w);
          note(trace_, "fixpoint " + std::to_string(*w));
          break;
      }
    }
    return true;
  }

  Gslo g_;
  std::vector<long> keys_;
  Trace* trace_;
  bool zero_ = false;
  long next_key_ = -1;
};

}  // namespace

std::optional<Gslo> to_gslo(const Diagram& d, Trace* trace) {
  require_valid(d);
  if (d.num_inputs() != 0) throw std::invalid_argument("to_gslo: state diagram required (bend inputs first)");
  Absorber ab(trace);
  const auto& edges = d.edges();
  std::vector<bool> made(edges.size(), false);
  auto key = [](std::size_t e, int side) { return static_cast<long>(2 * e) + side; };
  auto ensure = [&](std::size_t e) {
    if (!made[e]) {
      ab.cup(key(e, 0), key(e, 1));
      made[e] = true;
    }
  };

  for (std::size_t n = 0; n < d.nodes().size() && !ab.zero(); ++n) {
    const Node& node = d.node(n);
    // The end of each incident edge sitting at this node.
    std::vector<long> legs;
    std::vector<std::size_t> seen_loop;
    for (auto e : d.incident(n)) {
      ensure(e);
      const Edge& ed = edges[e];
      int side = ed.a == End::node(n) ? 0 : 1;
      if (ed.is_self_loop()) {
        side = std::count(seen_loop.begin(), seen_loop.end(), e) ? 1 : 0;
        seen_loop.push_back(e);
      }
      legs.push_back(key(e, side));
    }
    if (node.type == NodeType::H) {
      ab.apply(legs[0], LocalOp::hadamard());
      ab.cap(legs[0], legs[1]);
      continue;
    }
    if (node.type == NodeType::Red)
      for (auto l : legs) ab.apply(l, LocalOp::hadamard());
    if (legs.empty()) {
      ab.scalar(node.phase == kPhase11);
      continue;
    }
    long acc = legs[0];
    for (std::size_t i = 1; i < legs.size() && !ab.zero(); ++i) {
      // join(acc, legs[i]) = split legs[i], then cap acc with it
      const long out = ab.fresh_key();
      ab.split(legs[i], out);
      ab.cap(acc, legs[i]);
      acc = out;
    }
    if (ab.zero()) break;
    ab.apply(acc, LocalOp::green(node.phase));
    ab.effect(acc);
  }
  if (ab.zero()) return std::nullopt;

  // Remaining vertices are the output ends; put them in output order.
  for (std::size_t e = 0; e < edges.size(); ++e) ensure(e);
  Gslo& g = ab.gslo();
  const std::size_t m = d.num_outputs();
  if (g.size() != m) throw std::logic_error("to_gslo: leftover wires do not match the outputs");
  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t e = *d.boundary_edge(End::output(k));
    const int side = edges[e].a == End::output(k) ? 0 : 1;
    order[k] = ab.index_of(key(e, side));
  }
  Gslo out{AdjacencyMatrix(m), std::vector<LocalOp>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    out.ops[i] = g.ops[order[i]];
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && g.theta.has_edge(order[i], order[j])) out.theta.set_edge(i, j, true);
  }
  // An isolated vertex absorbs lc and fixpoint for free; pick the lowest-ranked
  // operator so that e.g. the green 00 state comes out with the identity.
  const LocalOp r01 = LocalOp::red(kPhase01), r11 = LocalOp::red(kPhase11);
  for (std::size_t v = 0; v < m; ++v) {
    if (!out.theta.neighbours(v).empty()) continue;
    const LocalOp base = out.ops[v];
    int best = 0;
    for (int mask = 1; mask < 4; ++mask) {
      LocalOp op = base;
      if (mask & 1) op = op * r01;
      if (mask & 2) op = op * r11;
      if (op.rank() < out.ops[v].rank()) {
        out.ops[v] = op;
        best = mask;
      }
    }
    if (best & 1) note(trace, "lc output " + std::to_string(v));
    if (best & 2) note(trace, "fixpoint output " + std::to_string(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduced form, pair simplification, equality.

namespace {

/// Right-multiplies ops[v] by a product of R(01)/R(11) (local complementation and
/// fixpoint at v only) to reach the first reachable member of reduced_set().
Gslo reduce_vertex(Gslo g, std::size_t v, Trace* trace) {
  const LocalOp r01 = LocalOp::red(kPhase01);
  const LocalOp r11 = LocalOp::red(kPhase11);
  // The four products are reached by: nothing, lc, fixpoint, lc then fixpoint.
  const std::array<std::vector<int>, 4> words{{{}, {0}, {1}, {0, 1}}};
  for (const LocalOp& target : reduced_set())
    for (const auto& w : words) {
      LocalOp op = g.ops[v];
      for (int m : w) op = op * (m == 0 ? r01 : r11);
      if (!(op == target)) continue;
      for (int m : w) {
        g = m == 0 ? local_comp(std::move(g), v) : fixpoint(std::move(g), v);
        note(trace, (m == 0 ? "lc " : "fixpoint ") + std::to_string(v));
      }
      return g;
    }
  throw std::logic_error("reduce_vertex: no reduced operator reachable");
}

std::optional<std::pair<std::size_t, std::size_t>> adjacent_red_pair(const Gslo& g) {
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v)
      if (g.theta.has_edge(u, v) && is_red_bearing(g.ops[u]) && is_red_bearing(g.ops[v])) return std::make_pair(u, v);
  return std::nullopt;
}

Gslo apply_fixpoints_into_r(Gslo g, std::size_t p, std::size_t q, Trace* trace) {
  for (int mask = 0; mask < 4; ++mask) {
    Gslo h = g;
    if (mask & 1) h = fixpoint(std::move(h), p);
    if (mask & 2) h = fixpoint(std::move(h), q);
    if (in_reduced_set(h.ops[p]) && in_reduced_set(h.ops[q]) && !is_red_bearing(h.ops[p]) &&
        is_red_bearing(h.ops[q])) {
      if (mask & 1) note(trace, "fixpoint " + std::to_string(p));
      if (mask & 2) note(trace, "fixpoint " + std::to_string(q));
      return h;
    }
  }
  throw std::invalid_argument("operators at " + std::to_string(p) + "," + std::to_string(q) +
                              " do not match the configuration of this move");
}

void require_move_shape(const Gslo& g, std::size_t p, std::size_t q) {
  check_vertex(g, p);
  check_vertex(g, q);
  if (p == q || !g.theta.has_edge(p, q)) throw std::invalid_argument("move: p and q must be adjacent");
  if (!is_red_bearing(g.ops[p]) || !g.ops[q].is_green())
    throw std::invalid_argument("move: p must be red-bearing and q green");
}

}  // namespace

bool is_rgslo(const Gslo& g) {
  for (const auto& op : g.ops)
    if (!in_reduced_set(op)) return false;
  return !adjacent_red_pair(g);
}

Gslo to_rgslo(Gslo g, Trace* trace) {
  // Settled: green, or a red-bearing operator that no move at the vertex alone
  // turns green. Settling one vertex only multiplies its neighbours by green
  // phases, which never adds a red factor, so the loops terminate.
  auto settled = [](const LocalOp& op) {
    if (op.is_green()) return true;
    const LocalOp r01 = LocalOp::red(kPhase01);
    return op == r01 * LocalOp::green(kPhase01) || op == r01 * LocalOp::green(kPhase10);
  };
  auto settle_all = [&] {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < g.size(); ++v)
        if (!settled(g.ops[v])) {
          g = reduce_vertex(std::move(g), v, trace);
          changed = true;
        }
    }
  };
  settle_all();
  for (std::size_t guard = 0; auto pair = adjacent_red_pair(g); ++guard) {
    if (guard > g.size()) throw std::logic_error("to_rgslo: pivot pass limit exceeded");
    const auto [u, v] = *pair;
    g = pivot(std::move(g), u, v);
    note(trace, "pivot " + std::to_string(u) + " " + std::to_string(v));
    settle_all();
  }
  return g;
}

Gslo prop1_move(Gslo g, std::size_t p, std::size_t q, Trace* trace) {
  require_move_shape(g, p, q);
  Gslo h = local_comp(local_comp(std::move(g), q), p);
  note(trace, "lc " + std::to_string(q));
  note(trace, "lc " + std::to_string(p));
  return apply_fixpoints_into_r(std::move(h), p, q, trace);
}

Gslo prop2_move(Gslo g, std::size_t p, std::size_t q, Trace* trace) {
  require_move_shape(g, p, q);
  Gslo h = pivot(std::move(g), p, q);
  note(trace, "pivot " + std::to_string(p) + " " + std::to_string(q));
  return apply_fixpoints_into_r(std::move(h), p, q, trace);
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> first_violation(const Gslo& g1, const Gslo& g2) {
  const std::size_t n = g1.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (!is_red_bearing(g1.ops[p]) || is_red_bearing(g2.ops[p])) continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (q == p || is_red_bearing(g1.ops[q]) || !is_red_bearing(g2.ops[q])) continue;
      if (g1.theta.has_edge(p, q) || g2.theta.has_edge(p, q)) return std::make_pair(p, q);
    }
  }
  return std::nullopt;
}

/// Moves the red factor from p to its green neighbour q with whichever move fits.
Gslo shift_red(Gslo g, std::size_t p, std::size_t q, Trace* trace) {
  const Phase qp = canonical_word(g.ops[q]).inner;
  Gslo h = (qp == kPhase00 || qp == kPhase11) ? prop1_move(std::move(g), p, q, trace)
                                              : prop2_move(std::move(g), p, q, trace);
  return is_rgslo(h) ? h : to_rgslo(std::move(h), trace);
}

}  // namespace

bool is_simplified(const Gslo& g1, const Gslo& g2) {
  if (g1.size() != g2.size()) throw std::invalid_argument("simplified pair: toy-bit counts differ");
  return !first_violation(g1, g2);
}

std::pair<Gslo, Gslo> simplify_pair(Gslo g1, Gslo g2, Trace* trace1, Trace* trace2) {
  if (g1.size() != g2.size()) throw std::invalid_argument("simplify_pair: toy-bit counts differ");
  if (!is_rgslo(g1) || !is_rgslo(g2)) throw std::invalid_argument("simplify_pair: both diagrams must be rGS-LO");
  const std::size_t limit = g1.size() * g1.size() + 1;
  for (std::size_t pass = 0; pass < limit; ++pass) {
    const auto v = first_violation(g1, g2);
    if (!v) return {std::move(g1), std::move(g2)};
    const auto [p, q] = *v;
    if (g1.theta.has_edge(p, q)) g1 = shift_red(std::move(g1), p, q, trace1);
    else g2 = shift_red(std::move(g2), q, p, trace2);
  }
  throw std::runtime_error("simplify_pair: pass limit reached");
}

EqualityVerdict decide_equal(const Diagram& d1, const Diagram& d2) {
  require_valid(d1);
  require_valid(d2);
  EqualityVerdict out;
  if (d1.num_inputs() != d2.num_inputs() || d1.num_outputs() != d2.num_outputs()) {
    out.reason = "boundary mismatch";
    return out;
  }
  Trace t1, t2;
  const auto g1 = to_gslo(bend(d1), &t1);
  const auto g2 = to_gslo(bend(d2), &t2);
  if (!g1 || !g2) {
    out.equal = !g1 && !g2;
    if (!out.equal) out.reason = "one zero one not";
    else out.witness = {"both diagrams denote the zero relation"};
    return out;
  }
  auto [s1, s2] = simplify_pair(to_rgslo(*g1, &t1), to_rgslo(*g2, &t2), &t1, &t2);
  for (std::size_t p = 0; p < s1.size(); ++p)
    if (is_red_bearing(s1.ops[p]) != is_red_bearing(s2.ops[p])) {
      out.reason = "unpaired red node at toy bit " + std::to_string(p);
      return out;
    }
  if (!(s1 == s2)) {
    out.reason = "non-identical simplified pair";
    return out;
  }
  out.equal = true;
  for (auto& s : t1) out.witness.push_back("first: " + s);
  for (auto it = t2.rbegin(); it != t2.rend(); ++it) out.witness.push_back("second, undone: " + *it);
  return out;
}

}  // namespace toybit
