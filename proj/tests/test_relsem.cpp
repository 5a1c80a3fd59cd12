#include <algorithm>
#include <functional>
#include <numeric>

#include "doctest.h"
#include "toybit/interpret.hpp"

using namespace toybit;

namespace {

Relation green(std::size_t n, std::size_t m, Phase p = {}) {
  return interpret(spider(NodeType::Green, n, m, p));
}
Relation red(std::size_t n, std::size_t m, Phase p = {}) {
  return interpret(spider(NodeType::Red, n, m, p));
}
Relation h_rel() { return interpret(hadamard()); }

Relation tensor_power(const Relation& r, std::size_t k) {
  Relation out = Relation::unit_scalar();
  for (std::size_t i = 0; i < k; ++i) out = product(out, r);
  return out;
}

}  // namespace

TEST_CASE("ontic coordinates agree with the generator tables") {
  // green states: phase xy constrains v by x ^ ((x^y) & u)
  for (unsigned p = 0; p < 4; ++p) {
    const Phase ph = Phase::from_index(p);
    std::vector<Relation::Pair> pairs;
    for (unsigned s = 0; s < 4; ++s)
      if (ontic_v(s) == phase_parity(ph, ontic_u(s))) pairs.emplace_back(0, s);
    CHECK(Relation(0, 1, pairs) == tables::green_state(ph));
  }
  // H exchanges the coordinates
  std::vector<Relation::Pair> hp;
  for (unsigned s = 0; s < 4; ++s) hp.emplace_back(s, ontic_from(ontic_v(s), ontic_u(s)));
  CHECK(Relation(1, 1, hp) == tables::hadamard());
}

TEST_CASE("generator tables are reproduced by interpret") {
  CHECK(green(1, 2) == tables::split());
  CHECK(green(2, 1) == tables::join());
  CHECK(green(1, 0) == tables::green_effect());
  CHECK(h_rel() == tables::hadamard());
  CHECK(interpret(cup()) == tables::cup());
  CHECK(interpret(cap()) == converse(tables::cup()));
  CHECK(green(0, 1, kPhase00) == Relation::state(1, {{1}, {3}}));
  CHECK(green(0, 1, kPhase01) == Relation::state(1, {{1}, {4}}));
  CHECK(green(0, 1, kPhase10) == Relation::state(1, {{2}, {3}}));
  CHECK(green(0, 1, kPhase11) == Relation::state(1, {{2}, {4}}));
  CHECK(interpret(wire()) == Relation::identity(1));
  CHECK(interpret(swap_wires()) ==
        Relation::from_tuples(2, 2, {{{1, 1}, {1, 1}}, {{1, 2}, {2, 1}}, {{1, 3}, {3, 1}},
                                     {{1, 4}, {4, 1}}, {{2, 1}, {1, 2}}, {{2, 2}, {2, 2}},
                                     {{2, 3}, {3, 2}}, {{2, 4}, {4, 2}}, {{3, 1}, {1, 3}},
                                     {{3, 2}, {2, 3}}, {{3, 3}, {3, 3}}, {{3, 4}, {4, 3}},
                                     {{4, 1}, {1, 4}}, {{4, 2}, {2, 4}}, {{4, 3}, {3, 4}},
                                     {{4, 4}, {4, 4}}}));
}

TEST_CASE("relation algebra examples") {
  const auto h = tables::hadamard();
  CHECK(compose(h, h) == Relation::identity(1));
  const auto r = tables::split();
  CHECK(compose(Relation::identity(1), r) == r);
  const auto s01 = Relation::state(1, {{1}, {4}});
  const auto e00 = converse(Relation::state(1, {{1}, {3}}));
  CHECK(compose(s01, e00) == Relation::unit_scalar());

  const auto s13 = Relation::state(1, {{1}, {3}});
  CHECK(product(s13, s13) == Relation::state(2, {{1, 1}, {1, 3}, {3, 1}, {3, 3}}));
  CHECK(product(r, Relation(1, 0)).empty());
  CHECK(product(Relation::identity(1), Relation::identity(1)) == Relation::identity(2));

  CHECK(converse(tables::split()) == tables::join());
  CHECK(converse(Relation::identity(2)) == Relation::identity(2));
  CHECK(converse(s01) == Relation::from_tuples(1, 0, {{{1}, {}}, {{4}, {}}}));
  CHECK(converse(converse(r)) == r);

  CHECK_THROWS_AS(compose(r, r), std::invalid_argument);
}

TEST_CASE("canonical listing") {
  CHECK(tables::green_state(kPhase00).to_string() == ". -> 1\n. -> 3\n");
  CHECK(Relation::zero_scalar().to_string() == "ZERO\n");
  CHECK(tables::hadamard().to_string() == "1 -> 1\n2 -> 3\n3 -> 2\n4 -> 4\n");
}

TEST_CASE("Euler chain of phase shifts denotes H") {
  const auto chain = seq(seq(spider(NodeType::Green, 1, 1, kPhase01),
                             spider(NodeType::Red, 1, 1, kPhase01)),
                         spider(NodeType::Green, 1, 1, kPhase01));
  // independent route: compose the three phase-shift relations
  const auto g01 = green(1, 1, kPhase01);
  const auto r01 = red(1, 1, kPhase01);
  CHECK(compose(compose(g01, r01), g01) == tables::hadamard());
  CHECK(interpret(chain) == tables::hadamard());
}

TEST_CASE("zero scalars") {
  CHECK(green(0, 0, kPhase11).empty());
  CHECK(red(0, 0, kPhase11).empty());
  for (auto p : {kPhase00, kPhase01, kPhase10}) {
    CHECK(green(0, 0, p) == Relation::unit_scalar());
    CHECK(red(0, 0, p) == Relation::unit_scalar());
  }
}

TEST_CASE("phased spiders follow their recursive definitions") {
  // n,m >= 1: unphased spider with one extra input fed by the phase state.
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t m = 1; m <= 2; ++m)
      for (unsigned pi = 0; pi < 4; ++pi) {
        const Phase p = Phase::from_index(pi);
        const auto fed = compose(product(Relation::identity(n), tables::green_state(p)),
                                 green(n + 1, m));
        CHECK(fed == green(n, m, p));
      }
  // zero inputs: state 00 then a one-input spider; zero outputs: then the effect.
  for (std::size_t m = 1; m <= 3; ++m)
    for (unsigned pi = 0; pi < 4; ++pi) {
      const Phase p = Phase::from_index(pi);
      CHECK(compose(tables::green_state(kPhase00), green(1, m, p)) == green(0, m, p));
      CHECK(compose(green(m, 1, p), tables::green_effect()) == green(m, 0, p));
    }
  // red spiders are green spiders conjugated by H on every leg
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t m = 0; m <= 2; ++m)
      for (unsigned pi = 0; pi < 4; ++pi) {
        const Phase p = Phase::from_index(pi);
        const auto conj = compose(compose(tensor_power(tables::hadamard(), n), green(n, m, p)),
                                  tensor_power(tables::hadamard(), m));
        CHECK(conj == red(n, m, p));
      }
}

TEST_CASE("phase group is the Klein four group") {
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b) {
      const Phase pa = Phase::from_index(a);
      const Phase pb = Phase::from_index(b);
      const auto joined = compose(product(tables::green_state(pa), tables::green_state(pb)),
                                  tables::join());
      CHECK(joined == tables::green_state(pa + pb));
    }
  for (unsigned a = 0; a < 4; ++a) {
    const Phase pa = Phase::from_index(a);
    const auto self = compose(product(tables::green_state(pa), tables::green_state(pa)),
                              tables::join());
    CHECK(self == tables::green_state(kPhase00));  // every element is self-inverse
  }
}

TEST_CASE("snake equations and dagger") {
  // (id x cap) o (cup x id) with the bent wire
  Diagram snake = seq(par(wire(), cup()), par(cap(), wire()));
  CHECK(interpret(snake) == Relation::identity(1));
  Diagram snake2 = seq(par(cup(), wire()), par(wire(), cap()));
  CHECK(interpret(snake2) == Relation::identity(1));
  const auto d = seq(spider(NodeType::Green, 1, 2, kPhase01), par(hadamard(), wire()));
  CHECK(interpret(dagger(d)) == converse(interpret(d)));
}

TEST_CASE("functoriality on generator pairs") {
  std::vector<Diagram> ones = {wire(), hadamard(), spider(NodeType::Green, 1, 1, kPhase01),
                               spider(NodeType::Red, 1, 1, kPhase10)};
  for (const auto& a : ones)
    for (const auto& b : ones) {
      CHECK(interpret(seq(a, b)) == compose(interpret(a), interpret(b)));
      CHECK(interpret(par(a, b)) == product(interpret(a), interpret(b)));
    }
}

TEST_CASE("six maximal-knowledge states and 24 reversible operators") {
  // every single-output diagram built from one phase state and phase shifts / H
  std::vector<Relation> states;
  std::vector<Relation> ops;
  std::vector<Relation> gens;
  for (unsigned p = 0; p < 4; ++p) {
    gens.push_back(green(1, 1, Phase::from_index(p)));
    gens.push_back(red(1, 1, Phase::from_index(p)));
  }
  gens.push_back(h_rel());
  ops.push_back(Relation::identity(1));
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (const auto& g : gens) {
      auto c = compose(ops[i], g);
      if (std::find(ops.begin(), ops.end(), c) == ops.end()) ops.push_back(c);
    }
  CHECK(ops.size() == 24);
  for (const auto& op : ops) {
    auto s = compose(tables::green_state(kPhase00), op);
    if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(s);
  }
  CHECK(states.size() == 6);
  for (const auto& s : states) CHECK(s.size() == 2);
}

namespace {

// Brute force evaluation of a state built only from table relations. Node kinds:
// degree 1 = the 00 state, degree 3 = split (leg 0 as its input).
Relation brute_state(const std::vector<std::size_t>& node_degree,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairing,
                     std::size_t boundary, std::size_t half_edges) {
  // half-edge layout: nodes' legs first, then boundary slots.
  std::vector<std::size_t> wire_of(half_edges);
  for (std::size_t w = 0; w < pairing.size(); ++w) {
    wire_of[pairing[w].first] = w;
    wire_of[pairing[w].second] = w;
  }
  const auto split = tables::split();
  const auto st = tables::green_state(kPhase00);
  const std::size_t wires = pairing.size();
  std::vector<Relation::Pair> out;
  std::vector<std::uint8_t> val(wires);
  const std::uint64_t total = std::uint64_t{1} << (2 * wires);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t w = 0; w < wires; ++w) val[w] = (code >> (2 * w)) & 3U;
    std::size_t leg = 0;
    bool ok = true;
    for (auto deg : node_degree) {
      if (deg == 1) {
        ok = st.contains(0, val[wire_of[leg]]);
      } else {
        const std::uint8_t o[2] = {val[wire_of[leg + 1]], val[wire_of[leg + 2]]};
        ok = split.contains(val[wire_of[leg]], pack_tuple(o));
      }
      leg += deg;
      if (!ok) break;
    }
    if (!ok) continue;
    OnticTuple b(boundary);
    for (std::size_t k = 0; k < boundary; ++k) b[k] = val[wire_of[leg + k]];
    out.emplace_back(0, pack_tuple(b));
  }
  return {0, boundary, out};
}

void for_each_pairing(std::vector<std::size_t>& free, std::vector<std::pair<std::size_t, std::size_t>>& acc,
                      const std::function<void()>& visit) {
  if (free.empty()) {
    visit();
    return;
  }
  const auto first = free.front();
  for (std::size_t i = 1; i < free.size(); ++i) {
    const auto other = free[i];
    std::vector<std::size_t> rest;
    for (std::size_t j = 1; j < free.size(); ++j)
      if (j != i) rest.push_back(free[j]);
    acc.emplace_back(first, other);
    for_each_pairing(rest, acc, visit);
    acc.pop_back();
  }
}

}  // namespace

TEST_CASE("spider fusion: connected split/state diagrams depend only on their leg count") {
  std::size_t checked = 0;
  for (std::size_t k3 = 0; k3 <= 3; ++k3)
    for (std::size_t k1 = 0; k1 + k3 <= 6; ++k1)
      for (std::size_t b = 0; b <= 5; ++b) {
        const std::size_t half = 3 * k3 + k1 + b;
        if (half % 2 || half == 0 || half > 12 || k1 + k3 == 0) continue;
        std::vector<std::size_t> degree;
        for (std::size_t i = 0; i < k3; ++i) degree.push_back(3);
        for (std::size_t i = 0; i < k1; ++i) degree.push_back(1);
        const auto expected = green(0, b);
        std::vector<std::size_t> free(half);
        std::iota(free.begin(), free.end(), 0);
        std::vector<std::pair<std::size_t, std::size_t>> acc;
        for_each_pairing(free, acc, [&] {
          // connectivity over nodes; boundary slots attach to their node
          std::vector<std::size_t> owner(half);
          std::size_t leg = 0;
          for (std::size_t n = 0; n < degree.size(); ++n)
            for (std::size_t j = 0; j < degree[n]; ++j) owner[leg++] = n;
          for (std::size_t k = 0; k < b; ++k) owner[leg + k] = degree.size() + k;
          std::vector<std::size_t> comp(degree.size() + b);
          std::iota(comp.begin(), comp.end(), 0);
          std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return comp[x] == x ? x : comp[x] = find(comp[x]);
          };
          for (auto [x, y] : acc) comp[find(owner[x])] = find(owner[y]);
          for (std::size_t i = 1; i < comp.size(); ++i)
            if (find(i) != find(0)) return;
          ++checked;
          CHECK(brute_state(degree, acc, b, half) == expected);
        });
      }
  CHECK(checked > 1000);
  MESSAGE("connected diagrams checked: " << checked);
}
