#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toybit/binform.hpp"
#include "toybit/diagram.hpp"
#include "toybit/localop.hpp"

namespace toybit {

/// Graph state with a reversible operator on each output. Vertex k is output k.
struct Gslo {
  AdjacencyMatrix theta;
  std::vector<LocalOp> ops;  // ops[k] acts after the graph state on output k

  Gslo() = default;
  explicit Gslo(AdjacencyMatrix t) : theta(std::move(t)), ops(theta.size()) {}
  Gslo(AdjacencyMatrix t, std::vector<LocalOp> o);

  [[nodiscard]] std::size_t size() const { return ops.size(); }
  bool operator==(const Gslo&) const = default;
};

/// Steps recorded by the normalisation routines, in application order.
using Trace = std::vector<std::string>;

/// One green output node per vertex, one H between the two nodes of each edge.
Diagram graph_state(const AdjacencyMatrix& theta);
/// The graph state followed by op_diagram(ops[k]) on output k.
Diagram render(const Gslo& g);
/// Adjacency list plus one canonical op word per vertex.
std::string to_string(const Gslo& g);

/// Applies R(11) at v and G(11) at each neighbour on the graph side of the
/// operators. The graph state is invariant under that, so the state is unchanged.
Gslo fixpoint(Gslo g, std::size_t v);
/// Replaces theta by theta * v and compensates on the graph side of the
/// operators: R(01) at v, G(01) at each neighbour. The state is unchanged.
Gslo local_comp(Gslo g, std::size_t v);
/// Local complementation along the edge {v,w}: local_comp at v, w, v.
/// Throws std::invalid_argument if {v,w} is not an edge.
Gslo pivot(Gslo g, std::size_t v, std::size_t w);

/// GS-LO form of a state diagram (no inputs), or nullopt if it denotes the empty
/// relation. Throws std::invalid_argument for a diagram with inputs.
std::optional<Gslo> to_gslo(const Diagram& d, Trace* trace = nullptr);

/// Every operator in reduced_set() and no two adjacent vertices red-bearing.
bool is_rgslo(const Gslo& g);
/// Rewrites into rGS-LO form with fixpoint, local complementation and pivots.
Gslo to_rgslo(Gslo g, Trace* trace = nullptr);

/// Red-bearing p next to green q. Local complementation about q then p, then up
/// to two fixpoints; afterwards q carries the red factor and p is green. Throws
/// std::invalid_argument if the operators at p and q do not admit this.
Gslo prop1_move(Gslo g, std::size_t p, std::size_t q, Trace* trace = nullptr);
/// Red-bearing p next to green q. Local complementation along {p,q}, then up to
/// two fixpoints; afterwards q carries the red factor and p is green. Throws
/// std::invalid_argument if the operators at p and q do not admit this.
Gslo prop2_move(Gslo g, std::size_t p, std::size_t q, Trace* trace = nullptr);

/// No p,q with p red-bearing only in g1, q red-bearing only in g2, and p,q
/// adjacent in g1 or g2. Throws std::invalid_argument on a size mismatch.
bool is_simplified(const Gslo& g1, const Gslo& g2);
/// Moves red factors until the pair is simplified. Both inputs must be rGS-LO.
/// Throws std::runtime_error if the pass limit is reached.
std::pair<Gslo, Gslo> simplify_pair(Gslo g1, Gslo g2, Trace* trace1 = nullptr, Trace* trace2 = nullptr);

struct EqualityVerdict {
  bool equal = false;
  /// Empty when equal; otherwise one of "boundary mismatch", "one zero one not",
  /// "unpaired red node at toy bit k", "non-identical simplified pair".
  std::string reason;
  /// Steps rewriting the first diagram into the second: its own normalisation,
  /// then the second's normalisation reversed. Filled only when equal.
  Trace witness;
};

/// Decides whether two diagrams denote the same relation by bending, normalising,
/// simplifying the pair and comparing.
EqualityVerdict decide_equal(const Diagram& d1, const Diagram& d2);

}  // namespace toybit
