#include "logpic/chip_firing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "logpic/errors.hpp"

namespace logpic {

namespace {

void check_divisor(const Multigraph& g, const GraphDivisor& d) {
  if (d.size() != g.num_vertices()) throw InputError("divisor does not match the graph's vertex count");
}

// Fires the set `in_set` `times` times in place; script is updated if given.
void fire_set(const Multigraph& g, GraphDivisor& d, const std::vector<bool>& in_set, Chips times,
              std::vector<Chips>* script) {
  const std::size_t n = g.num_vertices();
  for (std::size_t v = 0; v < n; ++v) {
    Chips flow = 0;
    for (std::size_t w = 0; w < n; ++w) {
      if (in_set[v] == in_set[w]) continue;
      flow += g.edge_count(v, w);
    }
    if (flow == 0) continue;
    const Chips delta = checked_mul(flow, times);
    d[v] = in_set[v] ? checked_sub(d[v], delta) : checked_add(d[v], delta);
  }
  if (script)
    for (std::size_t v = 0; v < n; ++v)
      if (in_set[v]) (*script)[v] = checked_add((*script)[v], times);
}

Chips edges_to(const Multigraph& g, std::size_t v, const std::vector<bool>& set, bool member) {
  Chips c = 0;
  for (std::size_t w = 0; w < g.num_vertices(); ++w)
    if (w != v && set[w] == member) c += g.edge_count(v, w);
  return c;
}

}  // namespace

GraphDivisor fire(const Multigraph& g, const GraphDivisor& d, const std::vector<std::size_t>& set) {
  g.require_valid();
  check_divisor(g, d);
  std::vector<bool> in_set(g.num_vertices(), false);
  for (std::size_t v : set) {
    if (v >= g.num_vertices()) throw InputError("fire: vertex index out of range");
    in_set[v] = true;
  }
  GraphDivisor out = d;
  fire_set(g, out, in_set, 1, nullptr);
  return out;
}

GraphDivisor fire(const Multigraph& g, const GraphDivisor& d, const std::vector<std::string>& vertex_ids) {
  std::vector<std::size_t> set;
  for (const auto& id : vertex_ids) set.push_back(g.vertex_index(id));
  return fire(g, d, set);
}

std::vector<std::size_t> dhar(const Multigraph& g, const GraphDivisor& d, std::size_t q) {
  g.require_valid();
  check_divisor(g, d);
  const std::size_t n = g.num_vertices();
  if (q >= n) throw InputError("dhar: base vertex out of range");
  for (std::size_t v = 0; v < n; ++v)
    if (v != q && d[v] < 0)
      throw PreconditionError("dhar requires non-negative coefficients away from q (vertex '" + g.vertex(v).id + "')");

  std::vector<bool> burnt(n, false);
  burnt[q] = true;
  // Passes in index order until nothing new catches fire.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (burnt[v]) continue;
      if (edges_to(g, v, burnt, true) > d[v]) {
        burnt[v] = true;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> unburnt;
  for (std::size_t v = 0; v < n; ++v)
    if (!burnt[v]) unburnt.push_back(v);
  return unburnt;
}

Reduction q_reduce_with_script(const Multigraph& g, const GraphDivisor& d, std::size_t q) {
  g.require_valid();
  check_divisor(g, d);
  const std::size_t n = g.num_vertices();
  if (q >= n) throw InputError("q_reduce: base vertex out of range");
  Reduction r{d, std::vector<Chips>(n, 0)};

  // Stage 1: make every vertex but q non-negative, sweeping distance shells
  // inward. Firing the ball {dist < j} only feeds shell j and drains shell j-1.
  std::vector<std::size_t> dist(n, kNoIndex);
  std::deque<std::size_t> queue{q};
  dist[q] = 0;
  std::size_t max_dist = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w = 0; w < n; ++w)
      if (dist[w] == kNoIndex && g.edge_count(v, w) > 0) {
        dist[w] = dist[v] + 1;
        max_dist = std::max(max_dist, dist[w]);
        queue.push_back(w);
      }
  }
  for (std::size_t j = max_dist; j >= 1; --j) {
    std::vector<bool> ball(n);
    for (std::size_t v = 0; v < n; ++v) ball[v] = dist[v] < j;
    Chips times = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] != j || r.reduced[v] >= 0) continue;
      const Chips gain = edges_to(g, v, ball, true);
      times = std::max(times, (-r.reduced[v] + gain - 1) / gain);
    }
    if (times > 0) fire_set(g, r.reduced, ball, times, &r.script);
  }

  // Stage 2: fire unburnt sets (as often as stays legal) until Dhar burns everything.
  for (;;) {
    const auto unburnt = dhar(g, r.reduced, q);
    if (unburnt.empty()) break;
    std::vector<bool> set(n, false);
    for (std::size_t v : unburnt) set[v] = true;
    Chips times = -1;
    for (std::size_t v : unburnt) {
      const Chips out = edges_to(g, v, set, false);
      if (out == 0) continue;
      const Chips k = r.reduced[v] / out;
      times = times < 0 ? k : std::min(times, k);
    }
    fire_set(g, r.reduced, set, times, &r.script);
  }
  return r;
}

GraphDivisor q_reduce(const Multigraph& g, const GraphDivisor& d, std::size_t q) {
  return q_reduce_with_script(g, d, q).reduced;
}

bool is_equivalent(const Multigraph& g, const GraphDivisor& a, const GraphDivisor& b) {
  if (degree(a) != degree(b)) return false;
  return q_reduce(g, a, 0) == q_reduce(g, b, 0);
}

bool has_effective_rep(const Multigraph& g, const GraphDivisor& d) { return q_reduce(g, d, 0)[0] >= 0; }

std::vector<GraphDivisor> reduced_divisors(const Multigraph& g, Chips deg, std::size_t q) {
  g.require_valid();
  const std::size_t n = g.num_vertices();
  std::vector<Chips> bound(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (w != v) bound[v] += g.edge_count(v, w);

  std::vector<GraphDivisor> out;
  GraphDivisor d(n);
  // Superstable configurations satisfy 0 <= c(v) < (non-loop valence of v).
  auto rec = [&](auto& self, std::size_t v, Chips used) -> void {
    if (v == n) {
      d[q] = deg - used;
      if (dhar(g, d, q).empty()) out.push_back(d);
      return;
    }
    if (v == q) {
      self(self, v + 1, used);
      return;
    }
    for (Chips c = 0; c < bound[v]; ++c) {
      d[v] = c;
      self(self, v + 1, used + c);
    }
    d[v] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> jacobian(const Multigraph& g) {
  g.require_valid();
  if (g.num_vertices() == 1) return {};
  return cokernel_invariants(laplacian(g).without(0));
}

GraphRankEngine::GraphRankEngine(const Multigraph& g, RankSemantics semantics)
    : original_(g), semantics_(semantics) {
  g.require_valid();
  genus_ = invariants(g).genus;
  if (semantics == RankSemantics::LoopCorrected) {
    model_ = virtual_loop_model(g);
  } else {
    model_.graph = g;
    model_.vertex_map.resize(g.num_vertices());
    std::iota(model_.vertex_map.begin(), model_.vertex_map.end(), 0);
    model_.midpoint.assign(g.num_edges(), kNoIndex);
  }
  model_canonical_ = semantics == RankSemantics::LoopCorrected ? canonical_divisor(model_.graph) : canonical_divisor(g);
}

GraphDivisor GraphRankEngine::push_forward(const GraphDivisor& d) const {
  check_divisor(original_, d);
  GraphDivisor out(model_.graph.num_vertices());
  for (std::size_t v = 0; v < d.size(); ++v) out[model_.vertex_map[v]] = d[v];
  return out;
}

int GraphRankEngine::model_rank(const GraphDivisor& d) {
  const GraphDivisor reduced = q_reduce(model_.graph, d, 0);
  if (reduced[0] < 0) return -1;
  auto it = memo_.find(reduced.coeffs());
  if (it != memo_.end()) return it->second;
  // r(D) >= k iff r(D - v) >= k - 1 for every vertex v, once |D| is non-empty.
  int best = std::numeric_limits<int>::max();
  GraphDivisor minus = reduced;
  for (std::size_t v = 0; v < minus.size() && best > -1; ++v) {
    minus[v] -= 1;
    best = std::min(best, model_rank(minus));
    minus[v] += 1;
  }
  const int r = best + 1;
  memo_.emplace(reduced.coeffs(), r);
  return r;
}

int GraphRankEngine::rank(const GraphDivisor& d) { return model_rank(push_forward(d)); }

Chips GraphRankEngine::rr_defect(const GraphDivisor& d) {
  const GraphDivisor pushed = push_forward(d);
  const int r = model_rank(pushed);
  const int r_dual = model_rank(model_canonical_ - pushed);
  return static_cast<Chips>(r) - r_dual - (degree(d) - genus_ + 1);
}

int rank_bn(const Multigraph& g, const GraphDivisor& d) { return GraphRankEngine(g, RankSemantics::BakerNorine).rank(d); }

int rank_ac(const Multigraph& g, const GraphDivisor& d) {
  return GraphRankEngine(g, RankSemantics::LoopCorrected).rank(d);
}

Chips rr_defect(const Multigraph& g, const GraphDivisor& d, RankSemantics semantics) {
  return GraphRankEngine(g, semantics).rr_defect(d);
}

}  // namespace logpic
