#include "logpic/graph_zoo.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace logpic {

Multigraph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                      const std::vector<std::int64_t>& weights) {
  std::vector<VertexSpec> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i + 1), weights.empty() ? 0 : weights[i]});
  std::vector<EdgeSpec> es;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string id = "e" + std::to_string(k + 1);
    EdgeSpec e;
    e.id = id;
    e.halves[0] = {id + "a", "v" + std::to_string(edges[k].first + 1)};
    e.halves[1] = {id + "b", "v" + std::to_string(edges[k].second + 1)};
    e.length = MonoidElement({1});
    es.push_back(std::move(e));
  }
  return Multigraph(std::move(vs), std::move(es), 1);
}

namespace fixtures {
Multigraph k1() { return make_graph(1, {}); }
Multigraph p2() { return make_graph(2, {{0, 1}}); }
Multigraph c3() { return make_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }
Multigraph b2() { return make_graph(2, {{0, 1}, {0, 1}}); }
Multigraph b3() { return make_graph(2, {{0, 1}, {0, 1}, {0, 1}}); }
Multigraph loop1() { return make_graph(1, {{0, 0}}); }
}  // namespace fixtures

std::vector<Multigraph> enumerate_multigraphs(std::size_t max_vertices, std::size_t max_edges) {
  std::vector<Multigraph> out;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> types;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) types.emplace_back(i, j);
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    auto type_index = [&](std::size_t a, std::size_t b) {
      if (a > b) std::swap(a, b);
      // Row-major index into the upper triangle.
      return a * n - a * (a - 1) / 2 + (b - a);
    };

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> mult(types.size(), 0);
    auto consider = [&]() {
      // Connectivity over non-loop edge types.
      std::vector<std::size_t> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (std::size_t t = 0; t < types.size(); ++t)
        if (mult[t] > 0) parent[find(types[t].first)] = find(types[t].second);
      for (std::size_t v = 1; v < n; ++v)
        if (find(v) != find(0)) return;
      std::vector<std::size_t> best;
      for (const auto& perm : perms) {
        std::vector<std::size_t> image(types.size(), 0);
        for (std::size_t t = 0; t < types.size(); ++t)
          image[type_index(perm[types[t].first], perm[types[t].second])] = mult[t];
        if (best.empty() || image < best) best = image;
      }
      if (!seen.insert(best).second) return;
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t t = 0; t < types.size(); ++t)
        for (std::size_t k = 0; k < best[t]; ++k) edges.push_back(types[t]);
      out.push_back(make_graph(n, edges));
    };
    auto rec = [&](auto& self, std::size_t t, std::size_t left) -> void {
      if (t == types.size()) {
        consider();
        return;
      }
      for (std::size_t m = 0; m <= left; ++m) {
        mult[t] = m;
        self(self, t + 1, left - m);
      }
      mult[t] = 0;
    };
    rec(rec, 0, max_edges);
  }
  return out;
}

}  // namespace logpic
