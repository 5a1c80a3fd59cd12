#pragma once

#include "toybit/diagram.hpp"
#include "toybit/relation.hpp"

namespace toybit {

/// The relation a diagram denotes.
///
/// A pair (inputs, outputs) belongs to the result iff some assignment of an
/// ontic state to every wire satisfies every node's local relation. Internal
/// wires are eliminated one node at a time, keeping only the wires that still
/// have unabsorbed ends; cost is exponential in that frontier, which is fine for
/// the desk-scale diagrams this is used on. Throws std::invalid_argument for an
/// invalid diagram or a frontier wider than 32 wires.
Relation interpret(const Diagram& d);

/// The generator relations exactly as tabulated for the calculus, written out
/// pair by pair. They are independent of the spider formula used by `interpret`
/// and serve as its reference.
namespace tables {
Relation split();                  // 1 -> 2
Relation join();                   // converse of split
Relation hadamard();               // the (2 3) permutation
Relation cup();                    // {(1,1),(2,2),(3,3),(4,4)}
Relation green_state(Phase p);     // 00:{1,3} 01:{1,4} 10:{2,3} 11:{2,4}
Relation green_effect();           // {1,3} ~ •
}  // namespace tables

}  // namespace toybit
