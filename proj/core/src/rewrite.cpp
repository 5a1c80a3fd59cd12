#include "toybit/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "toybit/interpret.hpp"

namespace toybit {

namespace {

using Leg = std::pair<std::size_t, int>;

End& end_at(Diagram& d, Leg l) {
  auto& e = d.edges()[l.first];
  return l.second == 0 ? e.a : e.b;
}
End far_end(const Diagram& d, Leg l) {
  const auto& e = d.edges()[l.first];
  return l.second == 0 ? e.b : e.a;
}

std::vector<Leg> legs_of(const Diagram& d, std::size_t n) {
  std::vector<Leg> out;
  const End me = End::node(n);
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    if (d.edges()[i].a == me) out.emplace_back(i, 0);
    if (d.edges()[i].b == me) out.emplace_back(i, 1);
  }
  return out;
}

bool has_self_loop(const Diagram& d, std::size_t n) {
  for (const auto& e : d.edges())
    if (e.is_self_loop() && e.a.index == n) return true;
  return false;
}

std::vector<std::size_t> edges_between(const Diagram& d, std::size_t a, std::size_t b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const auto& e = d.edges()[i];
    if ((e.a == End::node(a) && e.b == End::node(b)) || (e.a == End::node(b) && e.b == End::node(a))) out.push_back(i);
  }
  return out;
}

bool is_spider_of(const Diagram& d, std::size_t n, NodeType colour) { return d.node(n).type == colour; }

/// Legs of n other than those lying on edge `skip`.
std::vector<Leg> legs_except(const Diagram& d, std::size_t n, std::size_t skip) {
  auto legs = legs_of(d, n);
  std::erase_if(legs, [&](const Leg& l) { return l.first == skip; });
  return legs;
}

/// Node at the far end of a leg, if it is a node.
std::optional<std::size_t> far_node(const Diagram& d, Leg l) {
  const End e = far_end(d, l);
  if (!e.is_node()) return std::nullopt;
  return e.index;
}

void finish(Diagram& d, std::vector<std::size_t> dead_edges, std::vector<std::size_t> dead_nodes) {
  d.remove_edges(std::move(dead_edges));
  d.remove_nodes(std::move(dead_nodes));
}

std::string variant_name(const char* base, NodeType colour, bool reversed) {
  std::string s = base;
  if (colour == NodeType::Red) s += "/red";
  if (reversed) s += "/rev";
  return s;
}

const char* base_name(RuleKind k) {
  switch (k) {
    case RuleKind::Spider: return "spider";
    case RuleKind::Loop: return "loop";
    case RuleKind::Identity: return "identity";
    case RuleKind::Bialgebra: return "bialgebra";
    case RuleKind::Copy: return "copy";
    case RuleKind::ElevenCopy: return "11-copy";
    case RuleKind::ElevenCommute: return "11-commute";
    case RuleKind::ColourChange: return "colour-change";
    case RuleKind::Euler: return "euler";
  }
  return "?";
}

constexpr std::size_t kMaxSplitDegree = 8;

}  // namespace

const std::vector<Rule>& rule_set() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> v;
    for (RuleKind k : {RuleKind::Spider, RuleKind::Loop, RuleKind::Identity, RuleKind::Bialgebra, RuleKind::Copy,
                       RuleKind::ElevenCopy, RuleKind::ElevenCommute, RuleKind::ColourChange, RuleKind::Euler})
      for (bool rev : {false, true})
        for (NodeType c : {NodeType::Green, NodeType::Red}) v.push_back({variant_name(base_name(k), c, rev), k, c, rev});
    return v;
  }();
  return rules;
}

std::size_t rule_index(const std::string& name) {
  const auto& rs = rule_set();
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i].name == name) return i;
  throw std::out_of_range("unknown rule '" + name + "'");
}

std::uint64_t fingerprint(const Diagram& d) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(d.num_inputs());
  mix(d.num_outputs());
  for (const auto& n : d.nodes()) {
    mix(static_cast<std::uint64_t>(n.type));
    mix(n.phase.index());
  }
  for (const auto& e : d.edges()) {
    mix((static_cast<std::uint64_t>(e.a.kind) << 32) | e.a.index);
    mix((static_cast<std::uint64_t>(e.b.kind) << 32) | e.b.index);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Matching.

namespace {

std::vector<Match> match_forward(const Diagram& d, const Rule& r) {
  std::vector<Match> out;
  const NodeType c = r.colour;
  const NodeType o = other_colour(c);
  const std::size_t n = d.nodes().size();
  switch (r.kind) {
    case RuleKind::Spider:
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (is_spider_of(d, a, c) && is_spider_of(d, b, c))
            if (auto es = edges_between(d, a, b); !es.empty()) out.push_back({0, {a, b}, {es.front()}, {}, {}, 0});
      break;
    case RuleKind::Loop:
      for (std::size_t a = 0; a < n; ++a) {
        if (!is_spider_of(d, a, c)) continue;
        for (std::size_t i = 0; i < d.edges().size(); ++i)
          if (d.edges()[i].is_self_loop() && d.edges()[i].a.index == a) {
            out.push_back({0, {a}, {i}, {}, {}, 0});
            break;
          }
      }
      break;
    case RuleKind::Identity:
      for (std::size_t a = 0; a < n; ++a)
        if (is_spider_of(d, a, c) && d.node(a).phase.is_zero() && d.degree(a) == 2 && !has_self_loop(d, a))
          out.push_back({0, {a}, {}, {}, {}, 0});
      break;
    case RuleKind::Bialgebra: {
      auto square_node = [&](std::size_t x, NodeType t) {
        return is_spider_of(d, x, t) && d.node(x).phase.is_zero() && d.degree(x) == 3 && !has_self_loop(d, x);
      };
      for (std::size_t g1 = 0; g1 < n; ++g1)
        for (std::size_t g2 = g1 + 1; g2 < n; ++g2) {
          if (!square_node(g1, c) || !square_node(g2, c)) continue;
          for (std::size_t r1 = 0; r1 < n; ++r1)
            for (std::size_t r2 = r1 + 1; r2 < n; ++r2) {
              if (!square_node(r1, o) || !square_node(r2, o)) continue;
              bool ok = true;
              std::vector<std::size_t> internal;
              for (auto g : {g1, g2})
                for (auto rr : {r1, r2}) {
                  auto es = edges_between(d, g, rr);
                  if (es.size() != 1) ok = false;
                  else internal.push_back(es.front());
                }
              if (!ok || !edges_between(d, g1, g2).empty() || !edges_between(d, r1, r2).empty()) continue;
              out.push_back({0, {g1, g2, r1, r2}, internal, {}, {}, 0});
            }
        }
      break;
    }
    case RuleKind::Copy:
      for (std::size_t s = 0; s < n; ++s) {
        if (!is_spider_of(d, s, c) || !d.node(s).phase.is_zero() || d.degree(s) != 1 || has_self_loop(d, s)) continue;
        const Leg l = legs_of(d, s).front();
        const auto rr = far_node(d, l);
        if (!rr || !is_spider_of(d, *rr, o) || !d.node(*rr).phase.is_zero() || has_self_loop(d, *rr)) continue;
        out.push_back({0, {s, *rr}, {l.first}, {}, {}, 0});
      }
      break;
    case RuleKind::ElevenCopy:
    case RuleKind::ElevenCommute:
      for (std::size_t x = 0; x < n; ++x) {
        if (!is_spider_of(d, x, o) || d.node(x).phase != kPhase11 || d.degree(x) != 2 || has_self_loop(d, x)) continue;
        for (const Leg& l : legs_of(d, x)) {
          const auto g = far_node(d, l);
          if (!g || !is_spider_of(d, *g, c) || has_self_loop(d, *g) || edges_between(d, x, *g).size() != 1) continue;
          if (r.kind == RuleKind::ElevenCommute && d.degree(*g) != 2) continue;
          out.push_back({0, {x, *g}, {l.first}, {}, {}, 0});
        }
      }
      break;
    case RuleKind::ColourChange:
      for (std::size_t s = 0; s < n; ++s) {
        if (!is_spider_of(d, s, c) || has_self_loop(d, s)) continue;
        std::vector<std::size_t> hs;
        bool ok = true;
        for (const Leg& l : legs_of(d, s)) {
          const auto h = far_node(d, l);
          if (!h || d.node(*h).type != NodeType::H || edges_between(d, s, *h).size() != 1 ||
              std::find(hs.begin(), hs.end(), *h) != hs.end()) {
            ok = false;
            break;
          }
          hs.push_back(*h);
        }
        if (!ok) continue;
        std::vector<std::size_t> nodes{s};
        nodes.insert(nodes.end(), hs.begin(), hs.end());
        out.push_back({0, nodes, {}, {}, {}, 0});
      }
      break;
    case RuleKind::Euler:
      for (std::size_t h = 0; h < n; ++h)
        if (d.node(h).type == NodeType::H) out.push_back({0, {h}, {}, {}, {}, 0});
      break;
  }
  return out;
}

std::vector<Match> match_reverse(const Diagram& d, const Rule& r) {
  std::vector<Match> out;
  const NodeType c = r.colour;
  const NodeType o = other_colour(c);
  const std::size_t n = d.nodes().size();
  switch (r.kind) {
    case RuleKind::Spider:
      for (std::size_t a = 0; a < n; ++a) {
        if (!is_spider_of(d, a, c)) continue;
        const auto legs = legs_of(d, a);
        if (legs.size() > kMaxSplitDegree) continue;
        for (std::size_t mask = 0; mask < (std::size_t{1} << legs.size()); ++mask)
          for (unsigned p2 = 0; p2 < 4; ++p2) {
            Match m{0, {a}, {}, {}, {}, 0};
            for (std::size_t i = 0; i < legs.size(); ++i)
              if (mask >> i & 1U) m.legs.push_back(legs[i]);
            const Phase q = Phase::from_index(p2);
            m.phases = {d.node(a).phase + q, q};
            out.push_back(std::move(m));
          }
      }
      break;
    case RuleKind::Loop:
      for (std::size_t a = 0; a < n; ++a)
        if (is_spider_of(d, a, c)) out.push_back({0, {a}, {}, {}, {}, 0});
      break;
    case RuleKind::Identity:
      for (std::size_t e = 0; e < d.edges().size(); ++e) out.push_back({0, {}, {e}, {}, {}, 0});
      break;
    case RuleKind::Bialgebra:
      for (std::size_t rr = 0; rr < n; ++rr)
        for (std::size_t g = 0; g < n; ++g) {
          auto ok_node = [&](std::size_t x, NodeType t) {
            return is_spider_of(d, x, t) && d.node(x).phase.is_zero() && d.degree(x) == 3 && !has_self_loop(d, x);
          };
          if (!ok_node(rr, o) || !ok_node(g, c)) continue;
          const auto es = edges_between(d, rr, g);
          if (es.size() != 1) continue;
          out.push_back({0, {rr, g}, {es.front()}, {}, {}, 0});
        }
      break;
    case RuleKind::Copy: {
      std::vector<std::size_t> states;
      for (std::size_t s = 0; s < n; ++s)
        if (is_spider_of(d, s, c) && d.node(s).phase.is_zero() && d.degree(s) == 1) states.push_back(s);
      // subsets of one to three states
      const std::size_t k = states.size();
      for (std::size_t i = 0; i < k; ++i) {
        out.push_back({0, {states[i]}, {}, {}, {}, 0});
        for (std::size_t j = i + 1; j < k; ++j) {
          out.push_back({0, {states[i], states[j]}, {}, {}, {}, 0});
          for (std::size_t l = j + 1; l < k; ++l) out.push_back({0, {states[i], states[j], states[l]}, {}, {}, {}, 0});
        }
      }
      break;
    }
    case RuleKind::ElevenCopy:
      for (std::size_t g = 0; g < n; ++g) {
        if (!is_spider_of(d, g, c) || has_self_loop(d, g)) continue;
        const auto legs = legs_of(d, g);
        for (std::size_t in = 0; in < legs.size(); ++in) {
          std::vector<std::size_t> shifts;
          bool ok = true;
          for (std::size_t i = 0; i < legs.size() && ok; ++i) {
            if (i == in) continue;
            const auto x = far_node(d, legs[i]);
            ok = x && is_spider_of(d, *x, o) && d.node(*x).phase == kPhase11 && d.degree(*x) == 2 &&
                 !has_self_loop(d, *x) && edges_between(d, *x, g).size() == 1 &&
                 std::find(shifts.begin(), shifts.end(), *x) == shifts.end();
            if (ok) shifts.push_back(*x);
          }
          if (!ok) continue;
          std::vector<std::size_t> nodes{g};
          nodes.insert(nodes.end(), shifts.begin(), shifts.end());
          out.push_back({0, nodes, {}, {legs[in]}, {}, 0});
        }
      }
      break;
    case RuleKind::ElevenCommute:
      // The rule is its own inverse: an 11 shift next to a phase shift of the other colour.
      return match_forward(d, Rule{r.name, r.kind, r.colour, false});
    case RuleKind::ColourChange:
      for (std::size_t s = 0; s < n; ++s)
        if (is_spider_of(d, s, o)) out.push_back({0, {s}, {}, {}, {}, 0});
      break;
    case RuleKind::Euler:
      for (std::size_t a = 0; a < n; ++a) {
        auto shift = [&](std::size_t x, NodeType t) {
          return is_spider_of(d, x, t) && d.node(x).phase == kPhase01 && d.degree(x) == 2 && !has_self_loop(d, x);
        };
        if (!shift(a, c)) continue;
        for (const Leg& l : legs_of(d, a)) {
          const auto mid = far_node(d, l);
          if (!mid || !shift(*mid, o) || edges_between(d, a, *mid).size() != 1) continue;
          for (const Leg& l2 : legs_except(d, *mid, l.first)) {
            const auto b = far_node(d, l2);
            if (!b || *b <= a || !shift(*b, c) || edges_between(d, *mid, *b).size() != 1) continue;
            out.push_back({0, {a, *mid, *b}, {l.first, l2.first}, {}, {}, 0});
          }
        }
      }
      break;
  }
  return out;
}

}  // namespace

std::vector<Match> find_matches(const Diagram& d, std::size_t rule) {
  const Rule& r = rule_set().at(rule);
  auto out = r.reversed ? match_reverse(d, r) : match_forward(d, r);
  const auto fp = fingerprint(d);
  for (auto& m : out) {
    m.rule = rule;
    m.fingerprint = fp;
  }
  return out;
}

std::vector<Match> find_all_matches(const Diagram& d) {
  std::vector<Match> out;
  for (std::size_t i = 0; i < rule_set().size(); ++i) {
    auto ms = find_matches(d, i);
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Application.

namespace {

Diagram apply_forward(Diagram d, const Rule& r, const Match& m) {
  const NodeType c = r.colour;
  const NodeType o = other_colour(c);
  switch (r.kind) {
    case RuleKind::Spider: {
      const std::size_t a = m.nodes[0], b = m.nodes[1];
      d.node(a).phase = d.node(a).phase + d.node(b).phase;
      for (auto& e : d.edges()) {
        if (e.a == End::node(b)) e.a = End::node(a);
        if (e.b == End::node(b)) e.b = End::node(a);
      }
      finish(d, {m.edges[0]}, {b});
      return d;
    }
    case RuleKind::Loop:
      finish(d, {m.edges[0]}, {});
      return d;
    case RuleKind::Identity: {
      const std::size_t a = m.nodes[0];
      const auto legs = legs_of(d, a);
      d.add_edge(far_end(d, legs[0]), far_end(d, legs[1]));
      finish(d, {legs[0].first, legs[1].first}, {a});
      return d;
    }
    case RuleKind::Bialgebra: {
      const std::size_t big = d.add_node(o);
      const std::size_t small = d.add_node(c);
      for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t x = m.nodes[i];
        for (const Leg& l : legs_of(d, x)) {
          if (std::find(m.edges.begin(), m.edges.end(), l.first) != m.edges.end()) continue;
          end_at(d, l) = End::node(i < 2 ? big : small);
        }
      }
      d.add_edge(End::node(big), End::node(small));
      finish(d, m.edges, m.nodes);
      return d;
    }
    case RuleKind::Copy: {
      const std::size_t s = m.nodes[0], rr = m.nodes[1];
      for (const Leg& l : legs_except(d, rr, m.edges[0])) end_at(d, l) = End::node(d.add_node(c));
      finish(d, {m.edges[0]}, {s, rr});
      return d;
    }
    case RuleKind::ElevenCopy: {
      const std::size_t x = m.nodes[0], g = m.nodes[1];
      d.node(g).phase = d.node(g).phase.swapped();
      for (const Leg& l : legs_except(d, g, m.edges[0])) {
        const std::size_t s = d.add_node(o, kPhase11);
        end_at(d, l) = End::node(s);
        d.add_edge(End::node(s), End::node(g));
      }
      for (const Leg& l : legs_except(d, x, m.edges[0])) end_at(d, l) = End::node(g);
      finish(d, {m.edges[0]}, {x});
      return d;
    }
    case RuleKind::ElevenCommute: {
      const std::size_t x = m.nodes[0], g = m.nodes[1];
      const Phase p = d.node(g).phase;
      d.node(x).type = c;
      d.node(x).phase = p.swapped();
      d.node(g).type = o;
      d.node(g).phase = kPhase11;
      return d;
    }
    case RuleKind::ColourChange: {
      const std::size_t s = m.nodes[0];
      d.node(s).type = o;
      std::vector<std::size_t> dead;
      for (std::size_t i = 1; i < m.nodes.size(); ++i) {
        const std::size_t h = m.nodes[i];
        const std::size_t link = edges_between(d, s, h).front();
        dead.push_back(link);
        for (const Leg& l : legs_except(d, h, link)) end_at(d, l) = End::node(s);
      }
      std::vector<std::size_t> hs(m.nodes.begin() + 1, m.nodes.end());
      finish(d, dead, hs);
      return d;
    }
    case RuleKind::Euler: {
      const std::size_t h = m.nodes[0];
      const auto legs = legs_of(d, h);
      const std::size_t n1 = d.add_node(c, kPhase01);
      const std::size_t n2 = d.add_node(o, kPhase01);
      const std::size_t n3 = d.add_node(c, kPhase01);
      end_at(d, legs[0]) = End::node(n1);
      end_at(d, legs[1]) = End::node(n3);
      d.add_edge(End::node(n1), End::node(n2));
      d.add_edge(End::node(n2), End::node(n3));
      finish(d, {}, {h});
      return d;
    }
  }
  return d;
}

Diagram apply_reverse(Diagram d, const Rule& r, const Match& m) {
  const NodeType c = r.colour;
  const NodeType o = other_colour(c);
  switch (r.kind) {
    case RuleKind::Spider: {
      const std::size_t a = m.nodes[0];
      d.node(a).phase = m.phases[0];
      const std::size_t b = d.add_node(c, m.phases[1]);
      for (const Leg& l : m.legs) end_at(d, l) = End::node(b);
      d.add_edge(End::node(a), End::node(b));
      return d;
    }
    case RuleKind::Loop:
      d.add_edge(End::node(m.nodes[0]), End::node(m.nodes[0]));
      return d;
    case RuleKind::Identity: {
      const std::size_t e = m.edges[0];
      const std::size_t a = d.add_node(c);
      const End old_b = d.edges()[e].b;
      d.edges()[e].b = End::node(a);
      d.add_edge(End::node(a), old_b);
      return d;
    }
    case RuleKind::Bialgebra: {
      const std::size_t rr = m.nodes[0], g = m.nodes[1];
      const std::size_t g1 = d.add_node(c), g2 = d.add_node(c);
      const std::size_t r1 = d.add_node(o), r2 = d.add_node(o);
      const auto xs = legs_except(d, rr, m.edges[0]);
      const auto ys = legs_except(d, g, m.edges[0]);
      end_at(d, xs[0]) = End::node(g1);
      end_at(d, xs[1]) = End::node(g2);
      end_at(d, ys[0]) = End::node(r1);
      end_at(d, ys[1]) = End::node(r2);
      for (auto gg : {g1, g2})
        for (auto rx : {r1, r2}) d.add_edge(End::node(gg), End::node(rx));
      finish(d, {m.edges[0]}, {rr, g});
      return d;
    }
    case RuleKind::Copy: {
      const std::size_t rr = d.add_node(o);
      const std::size_t s = d.add_node(c);
      d.add_edge(End::node(s), End::node(rr));
      for (auto st : m.nodes)
        for (const Leg& l : legs_of(d, st)) end_at(d, l) = End::node(rr);
      finish(d, {}, m.nodes);
      return d;
    }
    case RuleKind::ElevenCopy: {
      const std::size_t g = m.nodes[0];
      d.node(g).phase = d.node(g).phase.swapped();
      std::vector<std::size_t> dead_edges;
      std::vector<std::size_t> shifts(m.nodes.begin() + 1, m.nodes.end());
      for (auto x : shifts) {
        const std::size_t link = edges_between(d, x, g).front();
        dead_edges.push_back(link);
        for (const Leg& l : legs_except(d, x, link)) end_at(d, l) = End::node(g);
      }
      const std::size_t s = d.add_node(o, kPhase11);
      end_at(d, m.legs[0]) = End::node(s);
      d.add_edge(End::node(s), End::node(g));
      finish(d, dead_edges, shifts);
      return d;
    }
    case RuleKind::ElevenCommute:
      return apply_forward(std::move(d), Rule{r.name, r.kind, r.colour, false}, m);
    case RuleKind::ColourChange: {
      const std::size_t s = m.nodes[0];
      d.node(s).type = c;
      for (const Leg& l : legs_of(d, s)) {
        const std::size_t h = d.add_h();
        end_at(d, l) = End::node(h);
        d.add_edge(End::node(h), End::node(s));
      }
      return d;
    }
    case RuleKind::Euler: {
      const std::size_t a = m.nodes[0], mid = m.nodes[1], b = m.nodes[2];
      const std::size_t h = d.add_h();
      for (const Leg& l : legs_except(d, a, m.edges[0])) end_at(d, l) = End::node(h);
      for (const Leg& l : legs_except(d, b, m.edges[1])) end_at(d, l) = End::node(h);
      finish(d, {m.edges[0], m.edges[1]}, {a, mid, b});
      return d;
    }
  }
  return d;
}

}  // namespace

Diagram apply(const Diagram& d, const Match& m) {
  if (m.fingerprint != fingerprint(d)) throw StaleMatch("match does not belong to this diagram");
  const Rule& r = rule_set().at(m.rule);
  Diagram out = r.reversed ? apply_reverse(d, r, m) : apply_forward(d, r, m);
  require_valid(out);
  return out;
}

// ---------------------------------------------------------------------------
// Scalars.

std::optional<Diagram> drop_scalars(const Diagram& d) {
  std::vector<std::size_t> dead;
  for (const auto& comp : node_components(d)) {
    bool touches_boundary = false;
    for (const auto& e : d.edges()) {
      const bool in_comp = (e.a.is_node() && std::find(comp.begin(), comp.end(), e.a.index) != comp.end()) ||
                           (e.b.is_node() && std::find(comp.begin(), comp.end(), e.b.index) != comp.end());
      if (in_comp && (e.a.is_boundary() || e.b.is_boundary())) touches_boundary = true;
    }
    if (touches_boundary) continue;
    // Cut the component out as a scalar diagram.
    Diagram s;
    std::map<std::size_t, std::size_t> remap;
    for (auto x : comp) remap[x] = s.add_node(d.node(x).type, d.node(x).phase);
    for (const auto& e : d.edges())
      if (e.a.is_node() && remap.count(e.a.index)) s.add_edge(End::node(remap[e.a.index]), End::node(remap[e.b.index]));
    if (interpret(s).empty()) return std::nullopt;
    dead.insert(dead.end(), comp.begin(), comp.end());
  }
  Diagram out = d;
  out.remove_nodes(dead);
  return out;
}

// ---------------------------------------------------------------------------
// Instances and soundness.

namespace {

struct Sketch {
  Diagram d;
  std::size_t next_out = 0;
  explicit Sketch(std::size_t outputs) : d(0, outputs) {}
  std::size_t node(NodeType t, Phase p = {}) { return d.add_node(t, p); }
  void out(std::size_t n) { d.add_edge(End::node(n), End::output(next_out++)); }
  void link(std::size_t a, std::size_t b) { d.add_edge(End::node(a), End::node(b)); }
};

std::string phase_label(Phase p) { return p.str(); }

std::vector<RuleInstance> forward_instances(const Rule& r, std::size_t L) {
  std::vector<RuleInstance> out;
  const NodeType c = r.colour;
  const NodeType o = other_colour(c);
  auto all_phases = [] {
    std::vector<Phase> v;
    for (unsigned i = 0; i < 4; ++i) v.push_back(Phase::from_index(i));
    return v;
  }();
  switch (r.kind) {
    case RuleKind::Spider:
      for (std::size_t n1 = 0; n1 <= L; ++n1)
        for (std::size_t n2 = 0; n2 <= L; ++n2)
          for (std::size_t links = 1; links <= 2; ++links)
            for (Phase pa : all_phases)
              for (Phase pb : all_phases) {
                Sketch l(n1 + n2), rr(n1 + n2);
                const auto a = l.node(c, pa), b = l.node(c, pb);
                for (std::size_t i = 0; i < links; ++i) l.link(a, b);
                for (std::size_t i = 0; i < n1; ++i) l.out(a);
                for (std::size_t i = 0; i < n2; ++i) l.out(b);
                const auto s = rr.node(c, pa + pb);
                for (std::size_t i = 1; i < links; ++i) rr.link(s, s);
                for (std::size_t i = 0; i < n1 + n2; ++i) rr.out(s);
                out.push_back({"legs " + std::to_string(n1) + "+" + std::to_string(n2) + " edges " +
                                   std::to_string(links) + " phases " + pa.str() + "," + pb.str(),
                               l.d, rr.d});
              }
      break;
    case RuleKind::Loop:
      for (std::size_t n = 0; n <= L; ++n)
        for (Phase p : all_phases) {
          Sketch l(n), rr(n);
          const auto a = l.node(c, p);
          l.link(a, a);
          for (std::size_t i = 0; i < n; ++i) l.out(a);
          const auto b = rr.node(c, p);
          for (std::size_t i = 0; i < n; ++i) rr.out(b);
          out.push_back({"legs " + std::to_string(n) + " phase " + phase_label(p), l.d, rr.d});
        }
      break;
    case RuleKind::Identity: {
      Sketch l(2);
      const auto a = l.node(c);
      l.out(a);
      l.out(a);
      out.push_back({"legs 2", l.d, cup()});
      break;
    }
    case RuleKind::Bialgebra: {
      Sketch l(4), rr(4);
      const auto g1 = l.node(c), g2 = l.node(c), r1 = l.node(o), r2 = l.node(o);
      for (auto g : {g1, g2})
        for (auto x : {r1, r2}) l.link(g, x);
      l.out(g1);
      l.out(g2);
      l.out(r1);
      l.out(r2);
      const auto big = rr.node(o), small = rr.node(c);
      rr.link(big, small);
      rr.out(big);
      rr.out(big);
      rr.out(small);
      rr.out(small);
      out.push_back({"square", l.d, rr.d});
      break;
    }
    case RuleKind::Copy:
      for (std::size_t n = 0; n <= L; ++n) {
        Sketch l(n), rr(n);
        const auto s = l.node(c), x = l.node(o);
        l.link(s, x);
        for (std::size_t i = 0; i < n; ++i) l.out(x);
        for (std::size_t i = 0; i < n; ++i) rr.out(rr.node(c));
        out.push_back({"legs " + std::to_string(n), l.d, rr.d});
      }
      break;
    case RuleKind::ElevenCopy:
    case RuleKind::ElevenCommute:
      for (std::size_t n = (r.kind == RuleKind::ElevenCommute ? 1 : 0); n <= (r.kind == RuleKind::ElevenCommute ? 1 : L);
           ++n)
        for (Phase p : all_phases) {
          Sketch l(n + 1), rr(n + 1);
          const auto x = l.node(o, kPhase11), g = l.node(c, p);
          l.out(x);
          l.link(x, g);
          for (std::size_t i = 0; i < n; ++i) l.out(g);
          const auto g2 = rr.node(c, p.swapped());
          rr.out(g2);
          for (std::size_t i = 0; i < n; ++i) {
            const auto s = rr.node(o, kPhase11);
            rr.link(g2, s);
            rr.out(s);
          }
          out.push_back({"legs " + std::to_string(n) + " phase " + p.str(), l.d, rr.d});
        }
      break;
    case RuleKind::ColourChange:
      for (std::size_t n = 0; n <= L; ++n)
        for (Phase p : all_phases) {
          Sketch l(n), rr(n);
          const auto s = l.node(c, p);
          for (std::size_t i = 0; i < n; ++i) {
            const auto h = l.node(NodeType::H);
            l.link(s, h);
            l.out(h);
          }
          const auto t = rr.node(o, p);
          for (std::size_t i = 0; i < n; ++i) rr.out(t);
          out.push_back({"legs " + std::to_string(n) + " phase " + p.str(), l.d, rr.d});
        }
      break;
    case RuleKind::Euler: {
      Sketch l(2), rr(2);
      const auto h = l.node(NodeType::H);
      l.out(h);
      l.out(h);
      const auto a = rr.node(c, kPhase01), m = rr.node(o, kPhase01), b = rr.node(c, kPhase01);
      rr.out(a);
      rr.link(a, m);
      rr.link(m, b);
      rr.out(b);
      out.push_back({"chain", l.d, rr.d});
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<RuleInstance> instances(const Rule& r, std::size_t max_legs) {
  auto out = forward_instances(r, max_legs);
  if (r.reversed)
    for (auto& i : out) std::swap(i.lhs, i.rhs);
  return out;
}

SoundnessReport check_soundness(const Rule& r, std::size_t max_legs) {
  SoundnessReport rep;
  for (const auto& inst : instances(r, max_legs)) {
    const std::size_t m = inst.lhs.num_outputs();
    bool ok = interpret(inst.lhs) == interpret(inst.rhs);
    ++rep.checked;
    ok = ok && interpret(dagger(inst.lhs)) == interpret(dagger(inst.rhs));
    ++rep.checked;
    for (std::size_t k = 1; k < m && ok; ++k) {
      ok = interpret(unbend(inst.lhs, k)) == interpret(unbend(inst.rhs, k));
      ++rep.checked;
    }
    if (!ok) rep.failures.push_back(inst.label);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Derivation search.

std::string inverse_rule_name(const std::string& name) {
  const std::string suffix = "/rev";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name + suffix;
}

namespace {

/// Like drop_scalars, but zero components stay in place.
Diagram drop_nonzero_scalars(const Diagram& d) {
  std::vector<std::size_t> dead;
  for (const auto& comp : node_components(d)) {
    std::vector<char> in(d.nodes().size(), 0);
    for (auto x : comp) in[x] = 1;
    bool open = false;
    for (const auto& e : d.edges())
      if (((e.a.is_node() && in[e.a.index]) || (e.b.is_node() && in[e.b.index])) &&
          (e.a.is_boundary() || e.b.is_boundary()))
        open = true;
    if (open) continue;
    Diagram s;
    std::map<std::size_t, std::size_t> remap;
    for (auto x : comp) remap[x] = s.add_node(d.node(x).type, d.node(x).phase);
    for (const auto& e : d.edges())
      if (e.a.is_node() && in[e.a.index]) s.add_edge(End::node(remap[e.a.index]), End::node(remap[e.b.index]));
    if (!interpret(s).empty()) dead.insert(dead.end(), comp.begin(), comp.end());
  }
  Diagram out = d;
  out.remove_nodes(dead);
  return out;
}

std::uint64_t shape_key(const Diagram& d) {
  std::uint64_t k = d.nodes().size() * 1000003ULL + d.edges().size();
  std::vector<unsigned> labels;
  for (const auto& n : d.nodes()) labels.push_back(static_cast<unsigned>(n.type) * 4 + n.phase.index());
  std::sort(labels.begin(), labels.end());
  for (auto l : labels) k = k * 31 + l;
  return k;
}

struct Frontier {
  struct Entry {
    Diagram d;
    std::size_t parent;
    std::string rule;
    std::size_t depth;
  };
  std::vector<Entry> seen;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::deque<std::size_t> queue;

  explicit Frontier(Diagram start) {
    seen.push_back({std::move(start), 0, "", 0});
    buckets[shape_key(seen[0].d)].push_back(0);
    queue.push_back(0);
  }
  std::optional<std::size_t> find(const Diagram& d) const {
    auto it = buckets.find(shape_key(d));
    if (it == buckets.end()) return std::nullopt;
    for (auto j : it->second)
      if (iso_equal(seen[j].d, d)) return j;
    return std::nullopt;
  }
  std::size_t add(Diagram d, std::size_t parent, std::string rule) {
    seen.push_back({std::move(d), parent, std::move(rule), seen[parent].depth + 1});
    const std::size_t i = seen.size() - 1;
    buckets[shape_key(seen[i].d)].push_back(i);
    queue.push_back(i);
    return i;
  }
  /// Rules and diagrams from the root to entry i (root excluded).
  std::vector<std::pair<std::string, std::size_t>> path(std::size_t i) const {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (; i != 0; i = seen[i].parent) out.emplace_back(seen[i].rule, i);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

std::optional<std::vector<RewriteStep>> find_derivation(const Diagram& from, const Diagram& to,
                                                        const SearchOptions& opts) {
  if (from.num_inputs() != to.num_inputs() || from.num_outputs() != to.num_outputs()) return std::nullopt;
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < rule_set().size(); ++i)
    if (opts.rules.empty() || std::find(opts.rules.begin(), opts.rules.end(), rule_set()[i].name) != opts.rules.end())
      allowed.push_back(i);
  auto settle = [&](const Diagram& d) { return opts.drop_scalars ? drop_nonzero_scalars(d) : d; };

  std::vector<RewriteStep> head, tail;
  const Diagram a0 = settle(from), b0 = settle(to);
  if (opts.drop_scalars && !iso_equal(a0, from)) head.push_back({"drop-scalars", a0});
  if (opts.drop_scalars && !iso_equal(b0, to)) tail.push_back({"drop-scalars", to});

  Frontier fwd(a0), bwd(b0);
  auto stitch = [&](std::size_t fi, std::size_t bi) {
    std::vector<RewriteStep> steps = head;
    for (auto& [rule, i] : fwd.path(fi)) steps.push_back({rule, fwd.seen[i].d});
    // walk back from the meeting point towards b0, inverting each step
    for (std::size_t i = bi; i != 0; i = bwd.seen[i].parent)
      steps.push_back({inverse_rule_name(bwd.seen[i].rule), bwd.seen[bwd.seen[i].parent].d});
    steps.insert(steps.end(), tail.begin(), tail.end());
    return steps;
  };
  if (iso_equal(a0, b0)) return stitch(0, 0);

  const std::size_t fwd_budget = opts.bidirectional ? (opts.max_depth + 1) / 2 : opts.max_depth;
  const std::size_t bwd_budget = opts.bidirectional ? opts.max_depth / 2 : 0;
  // Expand one whole layer of a side; true if the sides met.
  auto expand = [&](Frontier& me, const Frontier& other, bool forward, std::size_t budget,
                    std::optional<std::pair<std::size_t, std::size_t>>& meet) {
    if (me.queue.empty() || me.seen[me.queue.front()].depth >= budget) return false;
    const std::size_t layer = me.seen[me.queue.front()].depth;
    while (!me.queue.empty() && me.seen[me.queue.front()].depth == layer) {
      const std::size_t cur = me.queue.front();
      me.queue.pop_front();
      for (auto ri : allowed)
        for (const auto& m : find_matches(me.seen[cur].d, ri)) {
          Diagram next = settle(apply(me.seen[cur].d, m));
          if (next.nodes().size() > opts.max_nodes) continue;
          if (me.find(next)) continue;
          const std::size_t id = me.add(std::move(next), cur, rule_set()[ri].name);
          if (auto hit = other.find(me.seen[id].d)) {
            meet = forward ? std::pair{id, *hit} : std::pair{*hit, id};
            return true;
          }
          if (me.seen.size() > opts.max_states) return false;
        }
    }
    return true;
  };
  std::optional<std::pair<std::size_t, std::size_t>> meet;
  bool progress = true;
  while (!meet && progress) {
    const bool f = expand(fwd, bwd, true, fwd_budget, meet);
    if (meet) break;
    const bool b = expand(bwd, fwd, false, bwd_budget, meet);
    progress = (f || b) && fwd.seen.size() + bwd.seen.size() <= 2 * opts.max_states;
  }
  if (!meet) return std::nullopt;
  return stitch(meet->first, meet->second);
}

std::optional<std::vector<RewriteStep>> find_derivation_via(const std::vector<Diagram>& waypoints,
                                                            const SearchOptions& opts) {
  std::vector<RewriteStep> steps;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    auto leg = find_derivation(waypoints[i - 1], waypoints[i], opts);
    if (!leg) return std::nullopt;
    steps.insert(steps.end(), leg->begin(), leg->end());
  }
  return steps;
}

}  // namespace toybit
