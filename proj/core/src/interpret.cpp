#include "toybit/interpret.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace toybit {

namespace {

// A set of assignments to an ordered list of wire variables, 2 bits per variable.
struct Factor {
  std::vector<std::size_t> vars;
  std::vector<std::uint64_t> rows;

  [[nodiscard]] std::uint8_t get(std::uint64_t row, std::size_t pos) const {
    return static_cast<std::uint8_t>((row >> (2 * pos)) & 3U);
  }
};

std::uint64_t put(std::uint64_t row, std::size_t pos, unsigned value) {
  return row | (std::uint64_t{value & 3U} << (2 * pos));
}

// Local relation of one node over its distinct incident wires.
Factor node_factor(const Diagram& d, std::size_t n, const std::vector<std::size_t>& leg_vars) {
  Factor f;
  std::vector<std::size_t> count;  // multiplicity of each distinct var
  for (auto v : leg_vars) {
    auto it = std::find(f.vars.begin(), f.vars.end(), v);
    if (it == f.vars.end()) {
      f.vars.push_back(v);
      count.push_back(1);
    } else {
      ++count[static_cast<std::size_t>(it - f.vars.begin())];
    }
  }
  const std::size_t k = f.vars.size();
  if (k > 24) throw std::invalid_argument("node degree too large to interpret");
  const Node& node = d.node(n);
  if (node.type == NodeType::H) {
    // H swaps the two coordinates.
    for (unsigned s = 0; s < 4; ++s) {
      const unsigned t = ontic_from(ontic_v(s), ontic_u(s));
      if (k == 2) f.rows.push_back(put(put(0, 0, s), 1, t));
      else if (s == t) f.rows.push_back(put(0, 0, s));  // both ends on one wire
    }
    return f;
  }
  const bool green = node.type == NodeType::Green;
  for (unsigned shared = 0; shared < 2; ++shared) {
    const unsigned target = phase_parity(node.phase, shared);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
      unsigned parity = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (count[i] % 2 == 1) parity ^= static_cast<unsigned>((bits >> i) & 1U);
      if (parity != target) continue;
      std::uint64_t row = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const unsigned free_bit = static_cast<unsigned>((bits >> i) & 1U);
        row = put(row, i, green ? ontic_from(shared, free_bit) : ontic_from(free_bit, shared));
      }
      f.rows.push_back(row);
    }
  }
  return f;
}

Factor join_factors(const Factor& a, const Factor& b) {
  std::vector<std::pair<std::size_t, std::size_t>> shared;  // (pos in a, pos in b)
  std::vector<std::size_t> b_only;
  for (std::size_t j = 0; j < b.vars.size(); ++j) {
    auto it = std::find(a.vars.begin(), a.vars.end(), b.vars[j]);
    if (it != a.vars.end()) shared.emplace_back(static_cast<std::size_t>(it - a.vars.begin()), j);
    else b_only.push_back(j);
  }
  Factor out;
  out.vars = a.vars;
  for (auto j : b_only) out.vars.push_back(b.vars[j]);
  if (out.vars.size() > 32) throw std::invalid_argument("interpretation frontier exceeds 32 wires");
  auto key_a = [&](std::uint64_t row) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < shared.size(); ++i) key = put(key, i, a.get(row, shared[i].first));
    return key;
  };
  auto key_b = [&](std::uint64_t row) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < shared.size(); ++i) key = put(key, i, b.get(row, shared[i].second));
    return key;
  };
  std::unordered_multimap<std::uint64_t, std::uint64_t> index;
  index.reserve(b.rows.size());
  for (auto row : b.rows) {
    std::uint64_t extra = 0;
    for (std::size_t i = 0; i < b_only.size(); ++i)
      extra = put(extra, a.vars.size() + i, b.get(row, b_only[i]));
    index.emplace(key_b(row), extra);
  }
  for (auto row : a.rows) {
    auto [lo, hi] = index.equal_range(key_a(row));
    for (auto it = lo; it != hi; ++it) out.rows.push_back(row | it->second);
  }
  return out;
}

Factor project(const Factor& f, const std::vector<bool>& keep_var) {
  Factor out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < f.vars.size(); ++i)
    if (keep_var[f.vars[i]]) {
      kept.push_back(i);
      out.vars.push_back(f.vars[i]);
    }
  if (kept.size() == f.vars.size()) {
    out.rows = f.rows;
  } else {
    out.rows.reserve(f.rows.size());
    for (auto row : f.rows) {
      std::uint64_t r = 0;
      for (std::size_t i = 0; i < kept.size(); ++i) r = put(r, i, f.get(row, kept[i]));
      out.rows.push_back(r);
    }
  }
  std::sort(out.rows.begin(), out.rows.end());
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  return out;
}

}  // namespace

Relation interpret(const Diagram& d) {
  require_valid(d);
  const std::size_t num_vars = d.edges().size();
  const std::size_t num_nodes = d.nodes().size();
  std::vector<std::vector<std::size_t>> legs(num_nodes);
  std::vector<std::size_t> open_ends(num_vars, 0);
  std::vector<bool> boundary_var(num_vars, false);
  for (std::size_t e = 0; e < num_vars; ++e) {
    for (const End& end : {d.edges()[e].a, d.edges()[e].b}) {
      if (end.is_node()) {
        legs[end.index].push_back(e);
        ++open_ends[e];
      } else {
        boundary_var[e] = true;
      }
    }
  }

  Factor current;
  current.rows.push_back(0);
  std::vector<bool> done(num_nodes, false);
  for (std::size_t step = 0; step < num_nodes; ++step) {
    // Greedy: the node sharing most wires with the frontier, then fewest new wires.
    std::size_t best = SIZE_MAX;
    long best_shared = -1;
    long best_new = 0;
    for (std::size_t n = 0; n < num_nodes; ++n) {
      if (done[n]) continue;
      long sh = 0;
      long nw = 0;
      for (auto v : legs[n]) {
        if (std::find(current.vars.begin(), current.vars.end(), v) != current.vars.end()) ++sh;
        else ++nw;
      }
      if (sh > best_shared || (sh == best_shared && nw < best_new)) {
        best = n;
        best_shared = sh;
        best_new = nw;
      }
    }
    done[best] = true;
    current = join_factors(current, node_factor(d, best, legs[best]));
    for (auto v : legs[best]) --open_ends[v];
    std::vector<bool> keep(num_vars, false);
    for (std::size_t v = 0; v < num_vars; ++v) keep[v] = boundary_var[v] || open_ends[v] > 0;
    current = project(current, keep);
    if (current.rows.empty()) return Relation(d.num_inputs(), d.num_outputs());
  }

  // Wires running boundary to boundary are unconstrained so far.
  for (std::size_t v = 0; v < num_vars; ++v) {
    if (!boundary_var[v]) continue;
    if (std::find(current.vars.begin(), current.vars.end(), v) != current.vars.end()) continue;
    Factor any;
    any.vars = {v};
    any.rows = {0, 1, 2, 3};
    current = join_factors(current, any);
  }

  std::vector<std::size_t> in_pos(d.num_inputs());
  std::vector<std::size_t> out_pos(d.num_outputs());
  for (std::size_t e = 0; e < num_vars; ++e) {
    const auto pos = static_cast<std::size_t>(
        std::find(current.vars.begin(), current.vars.end(), e) - current.vars.begin());
    for (const End& end : {d.edges()[e].a, d.edges()[e].b}) {
      if (end.kind == End::Kind::Input) in_pos[end.index] = pos;
      if (end.kind == End::Kind::Output) out_pos[end.index] = pos;
    }
  }
  std::vector<Relation::Pair> pairs;
  pairs.reserve(current.rows.size());
  for (auto row : current.rows) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    for (auto p : in_pos) a = (a << 2U) | current.get(row, p);
    for (auto p : out_pos) b = (b << 2U) | current.get(row, p);
    pairs.emplace_back(a, b);
  }
  return {d.num_inputs(), d.num_outputs(), std::move(pairs)};
}

namespace tables {

Relation split() {
  return Relation::from_tuples(1, 2,
                               {{{1}, {1, 1}}, {{1}, {2, 2}}, {{2}, {1, 2}}, {{2}, {2, 1}},
                                {{3}, {3, 3}}, {{3}, {4, 4}}, {{4}, {3, 4}}, {{4}, {4, 3}}});
}

Relation join() { return converse(split()); }

Relation hadamard() {
  return Relation::from_tuples(1, 1, {{{1}, {1}}, {{2}, {3}}, {{3}, {2}}, {{4}, {4}}});
}

Relation cup() { return Relation::state(2, {{1, 1}, {2, 2}, {3, 3}, {4, 4}}); }

Relation green_state(Phase p) {
  switch (p.index()) {
    case 0: return Relation::state(1, {{1}, {3}});
    case 1: return Relation::state(1, {{1}, {4}});
    case 2: return Relation::state(1, {{2}, {3}});
    default: return Relation::state(1, {{2}, {4}});
  }
}

Relation green_effect() { return converse(green_state(kPhase00)); }

}  // namespace tables

}  // namespace toybit
