#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toybit/phase.hpp"

namespace toybit {

enum class NodeType { Green, Red, H };

[[nodiscard]] constexpr NodeType other_colour(NodeType t) {
  return t == NodeType::Green ? NodeType::Red : t == NodeType::Red ? NodeType::Green : t;
}
[[nodiscard]] constexpr bool is_spider(NodeType t) { return t != NodeType::H; }

struct Node {
  NodeType type = NodeType::Green;
  Phase phase{};  // ignored for H
  std::string name;

  bool operator==(const Node&) const = default;
};

/// One end of an edge: a node, or a boundary slot.
struct End {
  enum class Kind : std::uint8_t { Node, Input, Output };
  Kind kind = Kind::Node;
  std::size_t index = 0;

  static End node(std::size_t i) { return {Kind::Node, i}; }
  static End input(std::size_t k) { return {Kind::Input, k}; }
  static End output(std::size_t k) { return {Kind::Output, k}; }
  [[nodiscard]] bool is_node() const { return kind == Kind::Node; }
  [[nodiscard]] bool is_boundary() const { return kind != Kind::Node; }

  bool operator==(const End&) const = default;
  auto operator<=>(const End&) const = default;
};

struct Edge {
  End a;
  End b;
  [[nodiscard]] bool touches(std::size_t node) const {
    return (a.is_node() && a.index == node) || (b.is_node() && b.index == node);
  }
  [[nodiscard]] bool is_self_loop() const { return a.is_node() && a == b; }
  /// The end opposite to `from` (returns `b` for a self-loop).
  [[nodiscard]] End other(End from) const { return a == from ? b : a; }
  bool operator==(const Edge&) const = default;
};

/// Open undirected multigraph of spiders and H nodes with ordered boundary slots.
///
/// Wires are edges. A boundary slot is an edge end, so a bare wire is an edge
/// `in0 -- out0`, a cup is an edge between two outputs and a cap one between two
/// inputs. Parallel edges and self-loops are kept; rewrite rules remove them.
class Diagram {
 public:
  Diagram() = default;
  Diagram(std::size_t inputs, std::size_t outputs) : inputs_(inputs), outputs_(outputs) {}

  std::size_t add_node(NodeType type, Phase phase = {}, std::string name = {});
  std::size_t add_green(Phase p = {}) { return add_node(NodeType::Green, p); }
  std::size_t add_red(Phase p = {}) { return add_node(NodeType::Red, p); }
  std::size_t add_h() { return add_node(NodeType::H); }
  std::size_t add_edge(End a, End b);
  /// Removes the given edge indices (any order, duplicates allowed).
  void remove_edges(std::vector<std::size_t> edge_ids);
  /// Removes nodes and every edge touching them; remaining node indices are compacted
  /// preserving relative order.
  void remove_nodes(std::vector<std::size_t> node_ids);

  [[nodiscard]] std::size_t num_inputs() const { return inputs_; }
  [[nodiscard]] std::size_t num_outputs() const { return outputs_; }
  void set_boundary(std::size_t inputs, std::size_t outputs) {
    inputs_ = inputs;
    outputs_ = outputs;
  }
  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
  [[nodiscard]] std::vector<Node>& nodes() { return nodes_; }
  [[nodiscard]] const Node& node(std::size_t i) const { return nodes_.at(i); }
  [[nodiscard]] Node& node(std::size_t i) { return nodes_.at(i); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::vector<Edge>& edges() { return edges_; }

  /// Number of edge ends at the node (a self-loop counts twice).
  [[nodiscard]] std::size_t degree(std::size_t node) const;
  /// Indices of edges touching the node; a self-loop appears twice.
  [[nodiscard]] std::vector<std::size_t> incident(std::size_t node) const;
  /// Edge index holding the given boundary slot, if any.
  [[nodiscard]] std::optional<std::size_t> boundary_edge(End slot) const;
  /// Number of edges between two distinct nodes.
  [[nodiscard]] std::size_t multiplicity(std::size_t a, std::size_t b) const;

  bool operator==(const Diagram&) const = default;

 private:
  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

/// Structural problems with a diagram; empty means valid.
std::vector<std::string> validate(const Diagram& d);
/// Throws std::invalid_argument listing every problem if the diagram is invalid.
void require_valid(const Diagram& d);

// Generators.
Diagram wire();
Diagram spider(NodeType colour, std::size_t inputs, std::size_t outputs, Phase p = {});
Diagram hadamard();
Diagram cup();  // two outputs joined
Diagram cap();  // two inputs joined
Diagram swap_wires();

/// d1 then d2: outputs of d1 plugged into inputs of d2.
Diagram seq(const Diagram& d1, const Diagram& d2);
/// Side by side; boundary lists concatenated.
Diagram par(const Diagram& d1, const Diagram& d2);
/// Upside-down: inputs and outputs exchanged, phases unchanged.
Diagram dagger(const Diagram& d);
/// Bends every input round to become an output. Result outputs: former inputs
/// first, then former outputs.
Diagram bend(const Diagram& d);
/// Inverse of bend: the first `inputs` outputs become inputs again.
Diagram unbend(const Diagram& d, std::size_t inputs);

/// True iff a node bijection preserves kinds, phases, edge multiplicities and the
/// boundary order.
bool iso_equal(const Diagram& d1, const Diagram& d2);

/// Connected components as lists of node indices. Boundary slots join components
/// only through edges.
std::vector<std::vector<std::size_t>> node_components(const Diagram& d);

}  // namespace toybit
