#include "toybit/random.hpp"

#include <algorithm>

namespace toybit {

Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opts) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t outputs = pick(1, std::max<std::size_t>(1, opts.max_outputs));
  const std::size_t nodes = pick(0, opts.max_nodes);
  Diagram d(opts.inputs, outputs);
  std::vector<End> stubs;
  for (std::size_t k = 0; k < opts.inputs; ++k) stubs.push_back(End::input(k));
  for (std::size_t k = 0; k < outputs; ++k) stubs.push_back(End::output(k));
  std::vector<std::size_t> spiders;
  for (std::size_t i = 0; i < nodes; ++i) {
    const std::size_t kind = pick(0, 4);  // H one time in five
    if (kind == 0) {
      const std::size_t h = d.add_h();
      stubs.push_back(End::node(h));
      stubs.push_back(End::node(h));
      continue;
    }
    const NodeType t = kind % 2 ? NodeType::Green : NodeType::Red;
    const std::size_t s = d.add_node(t, Phase::from_index(static_cast<unsigned>(pick(0, 3))));
    spiders.push_back(s);
    for (std::size_t k = pick(1, std::max<std::size_t>(1, opts.max_spider_degree)); k > 0; --k)
      stubs.push_back(End::node(s));
  }
  if (stubs.size() % 2) {
    if (spiders.empty()) spiders.push_back(d.add_green());
    stubs.push_back(End::node(spiders[pick(0, spiders.size() - 1)]));
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);
  for (std::size_t i = 0; i < stubs.size(); i += 2) d.add_edge(stubs[i], stubs[i + 1]);
  return d;
}

Gslo random_gslo(std::mt19937_64& rng, std::size_t n) {
  Gslo g{AdjacencyMatrix(n)};
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<unsigned> op(0, 23);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng)) g.theta.set_edge(a, b, true);
  for (auto& o : g.ops) o = LocalOp::from_rank(op(rng));
  return g;
}

}  // namespace toybit
