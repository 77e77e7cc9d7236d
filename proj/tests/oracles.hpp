#pragma once

// Brute-force references used only by tests. Nothing here calls Dhar,
// q-reduction or the Smith form, so they stay independent of the code paths
// they check.

#include <functional>
#include <vector>

#include "logpic/graph_divisor.hpp"
#include "logpic/multigraph.hpp"

namespace oracle {

using logpic::Chips;
using logpic::GraphDivisor;
using logpic::Multigraph;

/// Calls f on every vector of `parts` non-negative integers summing to `total`.
inline void for_each_composition(std::size_t parts, Chips total, const std::function<void(const std::vector<Chips>&)>& f) {
  if (total < 0) return;
  std::vector<Chips> c(parts, 0);
  std::function<void(std::size_t, Chips)> rec = [&](std::size_t i, Chips left) {
    if (i + 1 == parts) {
      c[i] = left;
      f(c);
      return;
    }
    for (Chips k = 0; k <= left; ++k) {
      c[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (parts == 0) {
    if (total == 0) f(c);
    return;
  }
  rec(0, total);
}

/// L * x computed straight from edge counts.
inline GraphDivisor laplacian_times(const Multigraph& g, const std::vector<Chips>& x) {
  GraphDivisor out(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    for (std::size_t w = 0; w < g.num_vertices(); ++w)
      if (v != w) out[v] += g.edge_count(v, w) * (x[v] - x[w]);
  return out;
}

/// Searches firing scripts with x_0 = 0 and |x_v| <= bound for L x = delta.
inline bool in_image_bruteforce(const Multigraph& g, const GraphDivisor& delta, Chips bound) {
  const std::size_t n = g.num_vertices();
  if (logpic::degree(delta) != 0) return false;
  if (n == 1) return delta[0] == 0;
  std::vector<Chips> x(n, 0);
  for (std::size_t i = 1; i < n; ++i) x[i] = -bound;
  for (;;) {
    if (laplacian_times(g, x) == delta) return true;
    std::size_t i = 1;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i == n) return false;
    ++x[i];
  }
}

inline bool effective_bruteforce(const Multigraph& g, const GraphDivisor& d, Chips bound) {
  bool found = false;
  for_each_composition(g.num_vertices(), logpic::degree(d), [&](const std::vector<Chips>& e) {
    if (!found && in_image_bruteforce(g, d - GraphDivisor(e), bound)) found = true;
  });
  return found;
}

/// Rank straight from the definition: largest r such that D - E is effective
/// up to equivalence for every effective E of degree r.
inline int rank_bruteforce(const Multigraph& g, const GraphDivisor& d, Chips bound) {
  if (!effective_bruteforce(g, d, bound)) return -1;
  for (Chips k = 1;; ++k) {
    bool all = true;
    for_each_composition(g.num_vertices(), k, [&](const std::vector<Chips>& e) {
      if (all && !effective_bruteforce(g, d - GraphDivisor(e), bound)) all = false;
    });
    if (!all) return static_cast<int>(k - 1);
  }
}

}  // namespace oracle
