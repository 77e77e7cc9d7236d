#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "logpic/multigraph.hpp"

namespace logpic {

/// Builds a weight-0 graph on vertices v1..vn with unit lengths in N.
/// Edge k is "e<k+1>" with half-edges "e<k+1>a" (first endpoint) and "e<k+1>b".
Multigraph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                      const std::vector<std::int64_t>& weights = {});

namespace fixtures {
Multigraph k1();
Multigraph p2();
Multigraph c3();
Multigraph b2();
Multigraph b3();
Multigraph loop1();
}  // namespace fixtures

/// Every connected loopy multigraph with 1..max_vertices vertices and at most
/// max_edges edges, one per isomorphism class, weights 0, in a fixed order.
std::vector<Multigraph> enumerate_multigraphs(std::size_t max_vertices, std::size_t max_edges);

}  // namespace logpic
