#pragma once

#include <cstdint>
#include <random>

#include "toybit/diagram.hpp"
#include "toybit/normalform.hpp"

namespace toybit {

struct RandomDiagramOptions {
  std::size_t inputs = 0;
  std::size_t max_outputs = 4;
  std::size_t max_nodes = 20;
  std::size_t max_spider_degree = 4;
};

/// Spiders and H nodes with random phases, wired by a random perfect matching of
/// their legs and the boundary slots. Output count is uniform in [1, max_outputs].
Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opts = {});

/// Random graph on n vertices (each edge with probability 1/2) and random operators.
Gslo random_gslo(std::mt19937_64& rng, std::size_t n);

}  // namespace toybit
