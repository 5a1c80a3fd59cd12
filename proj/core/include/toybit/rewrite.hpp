#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toybit/diagram.hpp"

namespace toybit {

enum class RuleKind {
  Spider,        // two same-colour spiders sharing an edge fuse, phases add
  Loop,          // a self-loop on a spider is removed
  Identity,      // a phase-00 spider with two legs is a wire
  Bialgebra,     // two green and two red nodes in a square -> one red, one green
  Copy,          // a phase-00 spider fed by the other colour's 00 state copies it
  ElevenCopy,    // an 11 shift of the other colour passes through a spider
  ElevenCommute, // an 11 shift passes a phase shift of the other colour
  ColourChange,  // H on every leg swaps a spider's colour
  Euler,         // H = G(01) R(01) G(01)
};

/// One directed rule. `colour` is the colour of the rule as drawn with green as
/// the first colour; the red variant is the colour-swapped rule. Upside-down
/// variants need no entry: matching ignores edge direction.
struct Rule {
  std::string name;
  RuleKind kind = RuleKind::Spider;
  NodeType colour = NodeType::Green;
  bool reversed = false;
};

/// A place to apply a rule. Node and leg lists are rule specific; `fingerprint`
/// identifies the diagram the match was found in.
struct Match {
  std::size_t rule = 0;  // index into rule_set()
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> edges;
  /// Leg occurrences as (edge, side) with side 0 for `a`, 1 for `b`.
  std::vector<std::pair<std::size_t, int>> legs;
  std::vector<Phase> phases;
  std::uint64_t fingerprint = 0;
};

/// Every rule in both directions and both colours.
const std::vector<Rule>& rule_set();
/// Index in rule_set() by name; throws std::out_of_range if unknown.
std::size_t rule_index(const std::string& name);

/// Structural hash of a diagram (node list and edge list as stored).
std::uint64_t fingerprint(const Diagram& d);

/// All matches of rule `rule` in d. Reverse rules whose left side is a bare
/// spider or wire enumerate every leg split and phase split, so they can be many.
std::vector<Match> find_matches(const Diagram& d, std::size_t rule);
/// Matches of every rule, in rule order.
std::vector<Match> find_all_matches(const Diagram& d);

/// Thrown when a match is applied to a diagram other than the one it came from.
class StaleMatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cuts out the matched part and pastes in the right-hand side.
Diagram apply(const Diagram& d, const Match& m);

/// Removes every boundary-free component denoting the non-empty scalar. Returns
/// nullopt if some boundary-free component denotes the empty relation.
std::optional<Diagram> drop_scalars(const Diagram& d);

struct RuleInstance {
  std::string label;
  Diagram lhs;
  Diagram rhs;
};

/// Concrete left/right sides for every phase binding and every variable leg
/// count up to max_legs. All legs are outputs.
std::vector<RuleInstance> instances(const Rule& r, std::size_t max_legs);

struct SoundnessReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;  // instance labels
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Compares interpret(lhs) with interpret(rhs) on every instance, and on the
/// daggered and inputs-bent forms of each.
SoundnessReport check_soundness(const Rule& r, std::size_t max_legs);

struct RewriteStep {
  std::string rule;  // rule name, or "drop-scalars"
  Diagram result;
};

struct SearchOptions {
  std::size_t max_depth = 6;   // total steps
  std::size_t max_nodes = 10;  // larger intermediate diagrams are pruned
  std::vector<std::string> rules;  // empty: every rule
  /// Drop non-empty scalar components after every step. Zero components are
  /// always kept so that they stay visible to the search.
  bool drop_scalars = true;
  std::size_t max_states = 200000;
  /// Also search backwards from `to`. The backward side cannot reinsert dropped
  /// scalars, so derivations that shed a scalar are found only going forwards.
  bool bidirectional = true;
};

/// Name of the rule undoing `name`.
std::string inverse_rule_name(const std::string& name);

/// Bidirectional breadth-first search for a rewrite path from `from` to a
/// diagram isomorphic to `to`. Steps found from the `to` side are returned
/// inverted, so every step reads from `from` towards `to`.
std::optional<std::vector<RewriteStep>> find_derivation(const Diagram& from, const Diagram& to,
                                                        const SearchOptions& opts = {});

/// Chains find_derivation through the given diagrams in order. Fails if any
/// leg is not found.
std::optional<std::vector<RewriteStep>> find_derivation_via(const std::vector<Diagram>& waypoints,
                                                            const SearchOptions& opts = {});

}  // namespace toybit
