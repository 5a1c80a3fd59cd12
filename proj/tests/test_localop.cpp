#include <set>

#include <stdexcept>

#include "doctest.h"
#include "toybit/interpret.hpp"
#include "toybit/localop.hpp"

using namespace toybit;

namespace {

std::vector<Phase> phases() { return {kPhase00, kPhase01, kPhase10, kPhase11}; }

// The permutation as a 1 -> 1 relation, built from its image table.
Relation as_relation(const LocalOp& op) {
  std::vector<Relation::Pair> pairs;
  for (std::uint8_t s = 0; s < 4; ++s) pairs.emplace_back(s, op(s));
  return Relation(1, 1, pairs);
}

}  // namespace

TEST_CASE("phase shifts agree with the one-in one-out spiders") {
  for (Phase p : phases()) {
    CHECK(as_relation(LocalOp::green(p)) == interpret(spider(NodeType::Green, 1, 1, p)));
    CHECK(as_relation(LocalOp::red(p)) == interpret(spider(NodeType::Red, 1, 1, p)));
  }
  CHECK(as_relation(LocalOp::hadamard()) == interpret(hadamard()));
  // H is the (2 3) transposition in 1..4 numbering
  CHECK(LocalOp::hadamard().image() == std::array<std::uint8_t, 4>{0, 2, 1, 3});
}

TEST_CASE("there are exactly 24 reversible operators and G.R.G words reach all of them") {
  CHECK(all_local_ops().size() == 24);
  std::set<std::array<std::uint8_t, 4>> images;
  for (Phase a : phases())
    for (Phase b : phases())
      for (Phase c : phases()) images.insert(OpWord{a, b, c}.value().image());
  CHECK(images.size() == 24);
  for (const auto& op : all_local_ops()) {
    const OpWord w = canonical_word(op);
    CHECK(w.value() == op);
    // least among the words denoting op
    for (Phase a : phases())
      for (Phase b : phases())
        for (Phase c : phases())
          if (OpWord{a, b, c}.value() == op) CHECK_FALSE(OpWord{a, b, c} < w);
  }
}

TEST_CASE("rank round trip and inverses") {
  for (unsigned r = 0; r < 24; ++r) {
    const LocalOp op = LocalOp::from_rank(r);
    CHECK(op.rank() == r);
    CHECK((op * op.inverse()).is_identity());
    CHECK((op.inverse() * op).is_identity());
  }
  CHECK_THROWS_AS(LocalOp({0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("composition applies the right factor first") {
  const LocalOp g = LocalOp::green(kPhase01);
  const LocalOp h = LocalOp::hadamard();
  for (std::uint8_t s = 0; s < 4; ++s) CHECK((g * h)(s) == g(h(s)));
  CHECK(as_relation(g * h) == interpret(seq(hadamard(), spider(NodeType::Green, 1, 1, kPhase01))));
}

TEST_CASE("the reduced set has 8 distinct operators") {
  const auto& r = reduced_set();
  CHECK(r.size() == 8);
  CHECK(std::set<LocalOp>(r.begin(), r.end()).size() == 8);
  std::size_t red = 0;
  for (const auto& op : r) {
    CHECK(in_reduced_set(op));
    red += is_red_bearing(op) ? 1 : 0;
  }
  CHECK(red == 4);
  for (Phase p : phases()) {
    CHECK(in_reduced_set(LocalOp::green(p)));
    CHECK_FALSE(is_red_bearing(LocalOp::green(p)));
    CHECK(in_reduced_set(LocalOp::red(kPhase01) * LocalOp::green(p)));
  }
  CHECK_FALSE(in_reduced_set(LocalOp::hadamard()));
  CHECK(is_red_bearing(LocalOp::hadamard()));
}

TEST_CASE("six maximal-knowledge states of one toy bit") {
  std::set<std::vector<Relation::Pair>> from_phases;
  for (Phase p : phases()) {
    from_phases.insert(interpret(spider(NodeType::Green, 0, 1, p)).pairs());
    from_phases.insert(interpret(spider(NodeType::Red, 0, 1, p)).pairs());
  }
  CHECK(from_phases.size() == 6);
  // the orbit of {1,3} under all reversible operators is the same six states
  std::set<std::vector<Relation::Pair>> orbit;
  const Relation s00 = interpret(spider(NodeType::Green, 0, 1));
  for (const auto& op : all_local_ops()) orbit.insert(compose(s00, as_relation(op)).pairs());
  CHECK(orbit == from_phases);
}

TEST_CASE("op_diagram denotes its operator") {
  for (const auto& op : all_local_ops()) {
    const Diagram d = op_diagram(op);
    CHECK(d.num_inputs() == 1);
    CHECK(d.num_outputs() == 1);
    CHECK(interpret(d) == as_relation(op));
  }
  CHECK(op_diagram(LocalOp{}).nodes().empty());
}

TEST_CASE("word printing") {
  CHECK(OpWord{kPhase01, kPhase01, kPhase00}.str() == "G01.R01.G00");
  CHECK(canonical_word(LocalOp{}).str() == "G00.R00.G00");
}
