#include "toybit/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace toybit {

Phase Phase::parse(std::string_view text) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1'))
    throw std::invalid_argument("phase must be one of 00, 01, 10, 11, got '" + std::string(text) +
                                "'");
  return {unsigned(text[0] - '0'), unsigned(text[1] - '0')};
}

std::size_t Diagram::add_node(NodeType type, Phase phase, std::string name) {
  if (type == NodeType::H) phase = {};
  nodes_.push_back({type, phase, std::move(name)});
  return nodes_.size() - 1;
}

std::size_t Diagram::add_edge(End a, End b) {
  edges_.push_back({a, b});
  return edges_.size() - 1;
}

void Diagram::remove_edges(std::vector<std::size_t> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());
  for (auto it = edge_ids.rbegin(); it != edge_ids.rend(); ++it)
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(*it));
}

void Diagram::remove_nodes(std::vector<std::size_t> node_ids) {
  std::vector<bool> dead(nodes_.size(), false);
  for (auto n : node_ids) dead.at(n) = true;
  std::vector<std::size_t> remap(nodes_.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) remap[i] = dead[i] ? SIZE_MAX : next++;
  auto gone = [&](const End& e) { return e.is_node() && dead[e.index]; };
  std::erase_if(edges_, [&](const Edge& e) { return gone(e.a) || gone(e.b); });
  for (auto& e : edges_) {
    if (e.a.is_node()) e.a.index = remap[e.a.index];
    if (e.b.is_node()) e.b.index = remap[e.b.index];
  }
  std::vector<Node> kept;
  kept.reserve(next);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!dead[i]) kept.push_back(std::move(nodes_[i]));
  nodes_ = std::move(kept);
}

std::size_t Diagram::degree(std::size_t node) const {
  std::size_t d = 0;
  for (const auto& e : edges_) {
    if (e.a.is_node() && e.a.index == node) ++d;
    if (e.b.is_node() && e.b.index == node) ++d;
  }
  return d;
}

std::vector<std::size_t> Diagram::incident(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].a.is_node() && edges_[i].a.index == node) out.push_back(i);
    if (edges_[i].b.is_node() && edges_[i].b.index == node) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Diagram::boundary_edge(End slot) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].a == slot || edges_[i].b == slot) return i;
  return std::nullopt;
}

std::size_t Diagram::multiplicity(std::size_t a, std::size_t b) const {
  const End ea = End::node(a);
  const End eb = End::node(b);
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return (e.a == ea && e.b == eb) || (e.a == eb && e.b == ea);
  }));
}

std::vector<std::string> validate(const Diagram& d) {
  std::vector<std::string> errors;
  auto label = [&](std::size_t n) {
    const auto& name = d.node(n).name;
    return name.empty() ? "#" + std::to_string(n) : name;
  };
  std::vector<int> in_seen(d.num_inputs(), 0);
  std::vector<int> out_seen(d.num_outputs(), 0);
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    for (const End& end : {d.edges()[i].a, d.edges()[i].b}) {
      switch (end.kind) {
        case End::Kind::Node:
          if (end.index >= d.nodes().size())
            errors.push_back("edge " + std::to_string(i) + " references missing node " +
                             std::to_string(end.index));
          break;
        case End::Kind::Input:
          if (end.index >= d.num_inputs())
            errors.push_back("edge " + std::to_string(i) + " references missing in" +
                             std::to_string(end.index));
          else
            ++in_seen[end.index];
          break;
        case End::Kind::Output:
          if (end.index >= d.num_outputs())
            errors.push_back("edge " + std::to_string(i) + " references missing out" +
                             std::to_string(end.index));
          else
            ++out_seen[end.index];
          break;
      }
    }
  }
  for (std::size_t k = 0; k < in_seen.size(); ++k)
    if (in_seen[k] != 1)
      errors.push_back("in" + std::to_string(k) + " attached to " + std::to_string(in_seen[k]) +
                       " edge ends (expected 1)");
  for (std::size_t k = 0; k < out_seen.size(); ++k)
    if (out_seen[k] != 1)
      errors.push_back("out" + std::to_string(k) + " attached to " + std::to_string(out_seen[k]) +
                       " edge ends (expected 1)");
  if (!errors.empty()) return errors;
  for (std::size_t n = 0; n < d.nodes().size(); ++n)
    if (d.node(n).type == NodeType::H && d.degree(n) != 2)
      errors.push_back("H degree: node " + label(n) + " has degree " +
                       std::to_string(d.degree(n)) + " (expected 2)");
  return errors;
}

void require_valid(const Diagram& d) {
  auto errors = validate(d);
  if (errors.empty()) return;
  std::string msg = "invalid diagram:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw std::invalid_argument(msg);
}

Diagram wire() {
  Diagram d(1, 1);
  d.add_edge(End::input(0), End::output(0));
  return d;
}

Diagram spider(NodeType colour, std::size_t inputs, std::size_t outputs, Phase p) {
  if (!is_spider(colour)) throw std::invalid_argument("spider colour must be green or red");
  Diagram d(inputs, outputs);
  auto n = d.add_node(colour, p);
  for (std::size_t k = 0; k < inputs; ++k) d.add_edge(End::input(k), End::node(n));
  for (std::size_t k = 0; k < outputs; ++k) d.add_edge(End::node(n), End::output(k));
  return d;
}

Diagram hadamard() {
  Diagram d(1, 1);
  auto h = d.add_h();
  d.add_edge(End::input(0), End::node(h));
  d.add_edge(End::node(h), End::output(0));
  return d;
}

Diagram cup() {
  Diagram d(0, 2);
  d.add_edge(End::output(0), End::output(1));
  return d;
}

Diagram cap() {
  Diagram d(2, 0);
  d.add_edge(End::input(0), End::input(1));
  return d;
}

Diagram swap_wires() {
  Diagram d(2, 2);
  d.add_edge(End::input(0), End::output(1));
  d.add_edge(End::input(1), End::output(0));
  return d;
}

namespace {

// Joins edge lists in which some ends are "joints" (internal slots each appearing
// exactly twice). Joint ends are encoded as Kind::Output with index >= joint_base.
std::vector<Edge> splice(const std::vector<Edge>& raw, std::size_t joint_base) {
  auto is_joint = [&](const End& e) { return e.kind == End::Kind::Output && e.index >= joint_base; };
  std::map<std::size_t, std::vector<std::size_t>> at_joint;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (is_joint(raw[i].a)) at_joint[raw[i].a.index].push_back(i);
    if (is_joint(raw[i].b)) at_joint[raw[i].b.index].push_back(i);
  }
  std::vector<bool> used(raw.size(), false);
  std::vector<Edge> out;
  // Follows a chain from `start` (a real end) along edge `ei` until a real end.
  auto walk = [&](End start, std::size_t ei) {
    End cur = start;
    while (true) {
      used[ei] = true;
      const End far = raw[ei].a == cur ? raw[ei].b : raw[ei].a;
      if (!is_joint(far)) {
        out.push_back({start, far});
        return;
      }
      const auto& pair = at_joint.at(far.index);
      std::size_t next = pair[0] == ei ? pair[1] : pair[0];
      cur = far;
      ei = next;
    }
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    if (!is_joint(raw[i].a)) walk(raw[i].a, i);
    else if (!is_joint(raw[i].b)) walk(raw[i].b, i);
  }
  // Unused edges now form closed joint-only cycles: node-free loops denoting the
  // unit scalar, which are dropped.
  return out;
}

}  // namespace

Diagram seq(const Diagram& d1, const Diagram& d2) {
  if (d1.num_outputs() != d2.num_inputs())
    throw std::invalid_argument("seq: " + std::to_string(d1.num_outputs()) +
                                " outputs cannot feed " + std::to_string(d2.num_inputs()) +
                                " inputs");
  Diagram d(d1.num_inputs(), d2.num_outputs());
  for (const auto& n : d1.nodes()) d.add_node(n.type, n.phase, n.name);
  const std::size_t off = d1.nodes().size();
  for (const auto& n : d2.nodes()) d.add_node(n.type, n.phase, n.name);
  const std::size_t joint_base = d2.num_outputs() + 1;
  std::vector<Edge> raw;
  auto map1 = [&](End e) {
    if (e.kind == End::Kind::Output) return End::output(joint_base + e.index);
    return e;
  };
  auto map2 = [&](End e) {
    if (e.kind == End::Kind::Node) return End::node(e.index + off);
    if (e.kind == End::Kind::Input) return End::output(joint_base + e.index);
    return e;
  };
  for (const auto& e : d1.edges()) raw.push_back({map1(e.a), map1(e.b)});
  for (const auto& e : d2.edges()) raw.push_back({map2(e.a), map2(e.b)});
  for (const auto& e : splice(raw, joint_base)) d.add_edge(e.a, e.b);
  return d;
}

Diagram par(const Diagram& d1, const Diagram& d2) {
  Diagram d(d1.num_inputs() + d2.num_inputs(), d1.num_outputs() + d2.num_outputs());
  for (const auto& n : d1.nodes()) d.add_node(n.type, n.phase, n.name);
  for (const auto& n : d2.nodes()) d.add_node(n.type, n.phase, n.name);
  for (const auto& e : d1.edges()) d.add_edge(e.a, e.b);
  auto shift = [&](End e) {
    switch (e.kind) {
      case End::Kind::Node: return End::node(e.index + d1.nodes().size());
      case End::Kind::Input: return End::input(e.index + d1.num_inputs());
      case End::Kind::Output: return End::output(e.index + d1.num_outputs());
    }
    return e;
  };
  for (const auto& e : d2.edges()) d.add_edge(shift(e.a), shift(e.b));
  return d;
}

Diagram dagger(const Diagram& d) {
  Diagram out(d.num_outputs(), d.num_inputs());
  for (const auto& n : d.nodes()) out.add_node(n.type, n.phase, n.name);
  auto flip = [](End e) {
    if (e.kind == End::Kind::Input) return End::output(e.index);
    if (e.kind == End::Kind::Output) return End::input(e.index);
    return e;
  };
  for (const auto& e : d.edges()) out.add_edge(flip(e.a), flip(e.b));
  return out;
}

Diagram bend(const Diagram& d) {
  Diagram out(0, d.num_inputs() + d.num_outputs());
  for (const auto& n : d.nodes()) out.add_node(n.type, n.phase, n.name);
  auto move = [&](End e) {
    if (e.kind == End::Kind::Input) return End::output(e.index);
    if (e.kind == End::Kind::Output) return End::output(e.index + d.num_inputs());
    return e;
  };
  for (const auto& e : d.edges()) out.add_edge(move(e.a), move(e.b));
  return out;
}

Diagram unbend(const Diagram& d, std::size_t inputs) {
  if (d.num_inputs() != 0) throw std::invalid_argument("unbend expects a state diagram");
  if (inputs > d.num_outputs()) throw std::invalid_argument("unbend: not enough outputs");
  Diagram out(inputs, d.num_outputs() - inputs);
  for (const auto& n : d.nodes()) out.add_node(n.type, n.phase, n.name);
  auto move = [&](End e) {
    if (e.kind == End::Kind::Output)
      return e.index < inputs ? End::input(e.index) : End::output(e.index - inputs);
    return e;
  };
  for (const auto& e : d.edges()) out.add_edge(move(e.a), move(e.b));
  return out;
}

namespace {

struct IsoData {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> mult;     // node-node edge counts (diagonal: loops)
  std::vector<std::vector<End>> boundary;         // sorted boundary slots per node
  std::vector<std::size_t> degree;
  std::vector<std::vector<std::size_t>> adj;      // distinct neighbours
  std::vector<Edge> bare;                         // boundary-boundary edges, normalised
};

IsoData iso_data(const Diagram& d) {
  IsoData g;
  g.n = d.nodes().size();
  g.mult.assign(g.n, std::vector<std::size_t>(g.n, 0));
  g.boundary.assign(g.n, {});
  g.degree.assign(g.n, 0);
  g.adj.assign(g.n, {});
  for (const auto& e : d.edges()) {
    if (e.a.is_node() && e.b.is_node()) {
      ++g.mult[e.a.index][e.b.index];
      if (e.a.index != e.b.index) ++g.mult[e.b.index][e.a.index];
    } else if (e.a.is_node()) {
      g.boundary[e.a.index].push_back(e.b);
    } else if (e.b.is_node()) {
      g.boundary[e.b.index].push_back(e.a);
    } else {
      g.bare.push_back(e.a < e.b ? e : Edge{e.b, e.a});
    }
    if (e.a.is_node()) ++g.degree[e.a.index];
    if (e.b.is_node()) ++g.degree[e.b.index];
  }
  for (auto& b : g.boundary) std::sort(b.begin(), b.end());
  std::sort(g.bare.begin(), g.bare.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      if (i != j && g.mult[i][j]) g.adj[i].push_back(j);
  return g;
}

}  // namespace

bool iso_equal(const Diagram& d1, const Diagram& d2) {
  if (d1.num_inputs() != d2.num_inputs() || d1.num_outputs() != d2.num_outputs()) return false;
  if (d1.nodes().size() != d2.nodes().size() || d1.edges().size() != d2.edges().size())
    return false;
  const IsoData g1 = iso_data(d1);
  const IsoData g2 = iso_data(d2);
  if (g1.bare != g2.bare) return false;
  const std::size_t n = g1.n;
  auto same_label = [&](std::size_t a, std::size_t b) {
    const auto& x = d1.node(a);
    const auto& y = d2.node(b);
    return x.type == y.type && (x.type == NodeType::H || x.phase == y.phase) &&
           g1.degree[a] == g2.degree[b] && g1.boundary[a] == g2.boundary[b] &&
           g1.mult[a][a] == g2.mult[b][b];
  };
  // Order: nodes touching the boundary first, then BFS so each node after the
  // first in a component has an already-placed neighbour.
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> roots(n);
  std::iota(roots.begin(), roots.end(), 0);
  std::stable_sort(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) {
    return g1.boundary[a].size() > g1.boundary[b].size();
  });
  for (auto r : roots) {
    if (placed[r]) continue;
    placed[r] = true;
    std::size_t head = order.size();
    order.push_back(r);
    while (head < order.size()) {
      auto v = order[head++];
      for (auto w : g1.adj[v])
        if (!placed[w]) {
          placed[w] = true;
          order.push_back(w);
        }
    }
  }
  std::vector<std::size_t> map(n, SIZE_MAX);
  std::vector<bool> taken(n, false);
  std::function<bool(std::size_t)> search = [&](std::size_t pos) -> bool {
    if (pos == n) return true;
    const auto a = order[pos];
    // Candidates: if a has a mapped neighbour, only that neighbour's image's neighbours.
    std::vector<std::size_t> cands;
    std::size_t anchor = SIZE_MAX;
    for (auto w : g1.adj[a])
      if (map[w] != SIZE_MAX) {
        anchor = map[w];
        break;
      }
    if (anchor != SIZE_MAX) cands = g2.adj[anchor];
    else {
      cands.resize(n);
      std::iota(cands.begin(), cands.end(), 0);
    }
    for (auto b : cands) {
      if (taken[b] || !same_label(a, b)) continue;
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        auto c = order[q];
        ok = g1.mult[a][c] == g2.mult[b][map[c]];
      }
      if (!ok) continue;
      map[a] = b;
      taken[b] = true;
      if (search(pos + 1)) return true;
      map[a] = SIZE_MAX;
      taken[b] = false;
    }
    return false;
  };
  return search(0);
}

std::vector<std::vector<std::size_t>> node_components(const Diagram& d) {
  const std::size_t n = d.nodes().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : d.edges())
    if (e.a.is_node() && e.b.is_node()) parent[find(e.a.index)] = find(e.b.index);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace toybit
