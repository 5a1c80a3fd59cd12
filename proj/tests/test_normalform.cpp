#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"
#include "toybit/interpret.hpp"
#include "toybit/localop.hpp"
#include "toybit/normalform.hpp"
#include "toybit/random.hpp"
#include "toybit/rewrite.hpp"

using namespace toybit;
using namespace toybit::testing;

namespace {

Relation sem(const Gslo& g) { return interpret(render(g)); }

Gslo edge_gslo(LocalOp a, LocalOp b) { return Gslo{AdjacencyMatrix::from_edges(2, {{0, 1}}), {a, b}}; }

}  // namespace

TEST_CASE("graph states match the definition") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : all_graphs(n)) CHECK(interpret(graph_state(g)) == gslo_oracle(Gslo{g}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Gslo g = random_gslo(rng, 1 + i % 4);
    CHECK(sem(g) == gslo_oracle(g));
  }
}

TEST_CASE("Gslo construction") {
  CHECK_THROWS_AS((Gslo{AdjacencyMatrix(2), {LocalOp{}}}), std::invalid_argument);
  const Gslo g{AdjacencyMatrix::from_edges(2, {{0, 1}})};
  CHECK(to_string(g) == "vertices 2\n0: 1  op G00.R00.G00\n1: 0  op G00.R00.G00\n");
}

TEST_CASE("fixpoint leaves the state unchanged") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& a : all_graphs(n))
      for (std::size_t v = 0; v < n; ++v) {
        const Gslo g{a};
        const Gslo f = fixpoint(g, v);
        CHECK(f.theta == g.theta);
        CHECK(gslo_oracle(f) == gslo_oracle(g));
        CHECK(fixpoint(f, v) == g);
      }
  // isolated vertex: only its own operator changes, to R(11)
  const Gslo one{AdjacencyMatrix(1)};
  CHECK(fixpoint(one, 0).ops[0] == LocalOp::red(kPhase11));
}

TEST_CASE("local complementation leaves the state unchanged") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& a : all_graphs(n))
      for (std::size_t v = 0; v < n; ++v) {
        const Gslo g{a};
        Gslo l = local_comp(g, v);
        CHECK(l.theta == local_complement_adj(a, v));
        CHECK(gslo_oracle(l) == gslo_oracle(g));
        for (int i = 0; i < 3; ++i) l = local_comp(l, v);
        CHECK(l.theta == a);
        CHECK(gslo_oracle(l) == gslo_oracle(g));
      }
}

TEST_CASE("triangle to path with R(01) at the centre and G(01) at the ends") {
  const Gslo tri{AdjacencyMatrix::from_edges(3, {{0, 1}, {0, 2}, {1, 2}})};
  const Gslo l = local_comp(tri, 0);
  CHECK(l.theta == AdjacencyMatrix::from_edges(3, {{0, 1}, {0, 2}}));
  CHECK(l.ops[0] == LocalOp::red(kPhase01));
  CHECK(l.ops[1] == LocalOp::green(kPhase01));
  CHECK(l.ops[2] == LocalOp::green(kPhase01));
  CHECK(sem(l) == sem(tri));
}

TEST_CASE("pivot") {
  const Gslo e = edge_gslo({}, {});
  const Gslo p = pivot(e, 0, 1);
  CHECK(p.theta == e.theta);
  CHECK(p.ops[0] == LocalOp::hadamard());
  CHECK(p.ops[1] == LocalOp::hadamard());
  CHECK(gslo_oracle(p) == gslo_oracle(e));
  CHECK(pivot(p, 0, 1) == e);
  CHECK(pivot(e, 1, 0) == p);
  // path p - v - w: after pivoting on {v, w}, p is adjacent to w and not to v
  const Gslo path{AdjacencyMatrix::from_edges(3, {{0, 1}, {1, 2}})};
  const Gslo q = pivot(path, 1, 2);
  CHECK(q.theta.has_edge(0, 2));
  CHECK_FALSE(q.theta.has_edge(0, 1));
  CHECK(q.theta.has_edge(1, 2));
  CHECK(gslo_oracle(q) == gslo_oracle(path));
  CHECK_THROWS_AS(pivot(path, 0, 2), std::invalid_argument);
}

TEST_CASE("pivot on every edge of small graphs") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& a : all_graphs(n))
      for (auto [v, w] : a.edges()) {
        const Gslo g{a};
        const Gslo p = pivot(g, v, w);
        CHECK(p.theta == local_complement_adj(local_complement_adj(local_complement_adj(a, v), w), v));
        CHECK(gslo_oracle(p) == gslo_oracle(g));
      }
}

TEST_CASE("to_gslo base cases") {
  const auto s = to_gslo(spider(NodeType::Green, 0, 1));
  REQUIRE(s);
  CHECK(s->size() == 1);
  CHECK(s->ops[0].is_identity());
  CHECK(s->theta.edges().empty());

  const auto c = to_gslo(cup());
  REQUIRE(c);
  CHECK(sem(*c) == interpret(cup()));

  // G(11) state against G(00) effect is the zero scalar
  Diagram z = par(seq(spider(NodeType::Green, 0, 1, kPhase11), spider(NodeType::Green, 1, 0)), cup());
  CHECK_FALSE(to_gslo(z));
  CHECK_THROWS_AS(to_gslo(wire()), std::invalid_argument);
}

TEST_CASE("to_gslo and to_rgslo on random state diagrams") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    const Diagram d = random_diagram(rng);
    const Relation want = interpret(d);
    const auto g = to_gslo(d);
    CHECK(g.has_value() == !want.empty());
    if (!g) continue;
    CHECK(gslo_oracle(*g) == want);
    const Gslo r = to_rgslo(*g);
    CHECK(is_rgslo(r));
    CHECK(gslo_oracle(r) == want);
    CHECK(to_rgslo(r) == r);
  }
}

TEST_CASE("adjacent red operators are removed by a pivot") {
  const LocalOp red = LocalOp::red(kPhase01) * LocalOp::green(kPhase01);
  const Gslo g = edge_gslo(red, red);
  CHECK_FALSE(is_rgslo(g));
  Trace t;
  const Gslo r = to_rgslo(g, &t);
  CHECK(is_rgslo(r));
  CHECK(r.ops[0].is_green());
  CHECK(r.ops[1].is_green());
  CHECK(gslo_oracle(r) == gslo_oracle(g));
  CHECK_FALSE(t.empty());
}

TEST_CASE("moving a red operator to a neighbour") {
  // p red-bearing, q green; exactly one of the two moves fits each q phase
  for (Phase pa : {kPhase01, kPhase10})
    for (unsigned qi = 0; qi < 4; ++qi) {
      const Phase qp = Phase::from_index(qi);
      const Gslo g = edge_gslo(LocalOp::red(kPhase01) * LocalOp::green(pa), LocalOp::green(qp));
      REQUIRE(is_rgslo(g));
      std::optional<Gslo> moved;
      int fitting = 0;
      for (auto move : {prop1_move, prop2_move}) {
        try {
          moved = move(g, 0, 1, nullptr);
          ++fitting;
          CHECK(is_rgslo(*moved));
          CHECK(moved->ops[0].is_green());
          CHECK(is_red_bearing(moved->ops[1]));
          CHECK(gslo_oracle(*moved) == gslo_oracle(g));
        } catch (const std::invalid_argument&) {
        }
      }
      CHECK(fitting >= 1);
    }
  CHECK_THROWS_AS(prop1_move(edge_gslo({}, {}), 0, 1), std::invalid_argument);
}

TEST_CASE("simplify_pair") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 3;
    const Gslo a = to_rgslo(random_gslo(rng, n));
    const Gslo b = to_rgslo(random_gslo(rng, n));
    auto [x, y] = simplify_pair(a, b);
    CHECK(is_simplified(x, y));
    CHECK(is_rgslo(x));
    CHECK(is_rgslo(y));
    CHECK(gslo_oracle(x) == gslo_oracle(a));
    CHECK(gslo_oracle(y) == gslo_oracle(b));
    // an unpaired red node means the states differ
    for (std::size_t p = 0; p < n; ++p)
      if (is_red_bearing(x.ops[p]) != is_red_bearing(y.ops[p])) CHECK(gslo_oracle(x) != gslo_oracle(y));
  }
  const Gslo same = to_rgslo(random_gslo(rng, 3));
  CHECK(simplify_pair(same, same) == std::pair{same, same});
  CHECK_THROWS_AS(is_simplified(Gslo{AdjacencyMatrix(1)}, Gslo{AdjacencyMatrix(2)}), std::invalid_argument);
}

TEST_CASE("decide_equal examples") {
  Diagram euler = seq(seq(spider(NodeType::Green, 1, 1, kPhase01), spider(NodeType::Red, 1, 1, kPhase01)),
                      spider(NodeType::Green, 1, 1, kPhase01));
  auto v = decide_equal(hadamard(), euler);
  CHECK(v.equal);
  CHECK(v.reason.empty());
  CHECK_FALSE(v.witness.empty());

  v = decide_equal(spider(NodeType::Green, 0, 1), spider(NodeType::Green, 0, 1, kPhase01));
  CHECK_FALSE(v.equal);
  CHECK(v.reason == "non-identical simplified pair");

  v = decide_equal(wire(), cup());
  CHECK_FALSE(v.equal);
  CHECK(v.reason == "boundary mismatch");

  v = decide_equal(spider(NodeType::Green, 0, 0, kPhase11), spider(NodeType::Green, 0, 0));
  CHECK_FALSE(v.equal);
  CHECK(v.reason == "one zero one not");
  CHECK(decide_equal(spider(NodeType::Green, 0, 0, kPhase11), spider(NodeType::Red, 0, 0, kPhase11)).equal);

  // single-bit states, red operator in one only
  v = decide_equal(spider(NodeType::Green, 0, 1), spider(NodeType::Red, 0, 1));
  CHECK_FALSE(v.equal);
  CHECK(v.reason == "unpaired red node at toy bit 0");
}

TEST_CASE("decide_equal against the oracle") {
  std::mt19937_64 rng(23);
  int equal = 0;
  for (int i = 0; i < 150; ++i) {
    RandomDiagramOptions o;
    o.inputs = i % 2;
    o.max_outputs = 3;
    o.max_nodes = 12;
    const Diagram a = random_diagram(rng, o);
    const Diagram b = i % 3 == 0 ? random_rewrites(a, rng, 20) : random_diagram(rng, o);
    const bool same = a.num_inputs() == b.num_inputs() && a.num_outputs() == b.num_outputs() &&
                      interpret(a) == interpret(b);
    const auto v = decide_equal(a, b);
    CHECK(v.equal == same);
    equal += same ? 1 : 0;
  }
  CHECK(equal >= 50);
}
