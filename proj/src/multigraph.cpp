#include "logpic/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "logpic/errors.hpp"

namespace logpic {

bool GraphDivisor::is_effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Chips c) { return c >= 0; });
}

GraphDivisor& GraphDivisor::operator+=(const GraphDivisor& o) {
  if (o.size() != size()) throw InputError("divisor size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] = checked_add(coeffs_[i], o.coeffs_[i]);
  return *this;
}

GraphDivisor& GraphDivisor::operator-=(const GraphDivisor& o) {
  if (o.size() != size()) throw InputError("divisor size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] = checked_sub(coeffs_[i], o.coeffs_[i]);
  return *this;
}

GraphDivisor operator-(const GraphDivisor& a) { return GraphDivisor(a.size()) - a; }

Chips degree(const GraphDivisor& d) {
  Chips s = 0;
  for (Chips c : d.coeffs()) s = checked_add(s, c);
  return s;
}

std::string Validation::message() const {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

Multigraph::Multigraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges, std::size_t monoid_rank)
    : monoid_rank_(monoid_rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(vertices_.begin(), vertices_.end(), by_id);
  std::sort(edges_.begin(), edges_.end(), by_id);
  auto& errors = validation_.errors;

  const std::size_t n = vertices_.size();
  if (n == 0) errors.push_back("graph must have at least one vertex");
  for (std::size_t v = 0; v < n; ++v) {
    if (!vertex_index_.emplace(vertices_[v].id, v).second)
      errors.push_back("duplicate vertex id '" + vertices_[v].id + "'");
    if (vertices_[v].weight < 0) errors.push_back("vertex '" + vertices_[v].id + "' has negative weight");
  }

  ends_.assign(edges_.size(), {kNoIndex, kNoIndex});
  incident_.assign(n, {});
  adjacency_.assign(n * n, 0);
  loops_.assign(n, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const EdgeSpec& edge = edges_[e];
    if (!edge_index_.emplace(edge.id, e).second) errors.push_back("duplicate edge id '" + edge.id + "'");
    if (edge.length.rank() != monoid_rank_)
      errors.push_back("edge '" + edge.id + "' length has rank " + std::to_string(edge.length.rank()) +
                       ", expected " + std::to_string(monoid_rank_));
    for (int s = 0; s < 2; ++s) {
      const HalfEdgeSpec& h = edge.halves[s];
      if (!half_index_.emplace(h.id, HalfEdgeRef{e, s}).second)
        errors.push_back("half-edge '" + h.id + "' appears in more than one edge slot");
      auto it = vertex_index_.find(h.vertex);
      if (it == vertex_index_.end()) {
        errors.push_back("half-edge '" + h.id + "' references unknown vertex '" + h.vertex + "'");
        continue;
      }
      ends_[e][s] = it->second;
      incident_[it->second].push_back({e, s});
    }
    const auto [a, b] = ends_[e];
    if (a == kNoIndex || b == kNoIndex) continue;
    if (a == b) {
      ++loops_[a];
    } else {
      ++adjacency_[a * n + b];
      ++adjacency_[b * n + a];
    }
  }

  if (errors.empty() && n > 0) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w)
        if (!seen[w] && adjacency_[v * n + w] > 0) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) errors.push_back("graph must be connected");
  }
}

std::size_t Multigraph::find_vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  return it == vertex_index_.end() ? kNoIndex : it->second;
}

std::size_t Multigraph::vertex_index(const std::string& id) const {
  std::size_t v = find_vertex(id);
  if (v == kNoIndex) throw InputError("unknown vertex '" + id + "'");
  return v;
}

std::size_t Multigraph::find_edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  return it == edge_index_.end() ? kNoIndex : it->second;
}

std::optional<HalfEdgeRef> Multigraph::find_half_edge(const std::string& id) const {
  auto it = half_index_.find(id);
  if (it == half_index_.end()) return std::nullopt;
  return it->second;
}

void Multigraph::require_valid() const {
  if (!validation_.ok()) throw InputError("invalid graph: " + validation_.message());
}

Validation validate(const Multigraph& g) { return g.validation(); }

Chips valence(const Multigraph& g, std::size_t v) {
  if (v >= g.num_vertices()) throw InputError("vertex index out of range");
  return static_cast<Chips>(g.half_edges_at(v).size());
}

Chips valence(const Multigraph& g, const std::string& vertex_id) { return valence(g, g.vertex_index(vertex_id)); }

GraphInvariants invariants(const Multigraph& g) {
  g.require_valid();
  GraphInvariants inv;
  inv.b1 = static_cast<Chips>(g.num_edges()) - static_cast<Chips>(g.num_vertices()) + 1;
  inv.genus = inv.b1;
  for (const auto& v : g.vertices()) inv.genus = checked_add(inv.genus, v.weight);
  return inv;
}

IntMatrix laplacian(const Multigraph& g) {
  g.require_valid();
  const std::size_t n = g.num_vertices();
  IntMatrix l(n, n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      l(v, w) = v == w ? valence(g, v) - 2 * g.loop_count(v) : -g.edge_count(v, w);
  return l;
}

GraphDivisor canonical_divisor(const Multigraph& g) {
  g.require_valid();
  GraphDivisor k(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) k[v] = valence(g, v) - 2 + 2 * g.vertex(v).weight;
  return k;
}

namespace {

std::string fresh_id(const std::string& base, std::set<std::string>& used) {
  std::string id = base;
  while (used.count(id)) id += '\'';
  used.insert(id);
  return id;
}

std::set<std::string> all_ids(const Multigraph& g) {
  std::set<std::string> used;
  for (const auto& v : g.vertices()) used.insert(v.id);
  for (const auto& e : g.edges()) {
    used.insert(e.id);
    for (const auto& h : e.halves) used.insert(h.id);
  }
  return used;
}

LoopSubdivision subdivide(const Multigraph& g, const std::vector<VertexSpec>& vertices, std::vector<EdgeSpec> edges,
                          std::set<std::string>& used) {
  std::vector<VertexSpec> new_vertices = vertices;
  std::vector<EdgeSpec> new_edges;
  std::vector<std::string> midpoint_ids;
  for (auto& e : edges) {
    if (e.halves[0].vertex != e.halves[1].vertex) {
      new_edges.push_back(e);
      midpoint_ids.emplace_back();
      continue;
    }
    const std::string mid = fresh_id(e.id + "~mid", used);
    new_vertices.push_back({mid, 0});
    for (int s = 0; s < 2; ++s) {
      EdgeSpec half_edge;
      half_edge.id = fresh_id(e.id + "~" + std::to_string(s + 1), used);
      half_edge.halves[0] = e.halves[s];
      half_edge.halves[1] = {fresh_id(e.halves[s].id + "~m", used), mid};
      half_edge.length = e.length;
      new_edges.push_back(std::move(half_edge));
    }
    midpoint_ids.push_back(mid);
  }
  LoopSubdivision out{Multigraph(std::move(new_vertices), std::move(new_edges), g.monoid_rank()), {}, {}};
  for (const auto& v : g.vertices()) out.vertex_map.push_back(out.graph.vertex_index(v.id));
  for (std::size_t e = 0; e < midpoint_ids.size(); ++e)
    out.midpoint.push_back(midpoint_ids[e].empty() ? kNoIndex : out.graph.vertex_index(midpoint_ids[e]));
  return out;
}

}  // namespace

LoopSubdivision subdivide_loops(const Multigraph& g) {
  g.require_valid();
  auto used = all_ids(g);
  auto out = subdivide(g, g.vertices(), g.edges(), used);
  out.midpoint.resize(g.num_edges());
  return out;
}

LoopSubdivision virtual_loop_model(const Multigraph& g) {
  g.require_valid();
  auto used = all_ids(g);
  std::vector<VertexSpec> vertices = g.vertices();
  std::vector<EdgeSpec> edges = g.edges();
  for (auto& v : vertices) {
    for (Chips i = 0; i < v.weight; ++i) {
      EdgeSpec loop;
      loop.id = fresh_id(v.id + "~virt" + std::to_string(i), used);
      loop.halves[0] = {fresh_id(loop.id + "a", used), v.id};
      loop.halves[1] = {fresh_id(loop.id + "b", used), v.id};
      loop.length = MonoidElement::unit(g.monoid_rank(), 0);
      edges.push_back(std::move(loop));
    }
    v.weight = 0;
  }
  auto out = subdivide(g, vertices, std::move(edges), used);
  out.midpoint.resize(g.num_edges());
  return out;
}

GraphAutomorphism identity_automorphism(const Multigraph& g) {
  GraphAutomorphism a;
  a.vertex_map.resize(g.num_vertices());
  std::iota(a.vertex_map.begin(), a.vertex_map.end(), 0);
  a.edge_map.resize(g.num_edges());
  std::iota(a.edge_map.begin(), a.edge_map.end(), 0);
  a.flip.assign(g.num_edges(), 0);
  return a;
}

GraphAutomorphism compose(const GraphAutomorphism& a, const GraphAutomorphism& b) {
  GraphAutomorphism c;
  for (std::size_t v : b.vertex_map) c.vertex_map.push_back(a.vertex_map[v]);
  for (std::size_t e = 0; e < b.edge_map.size(); ++e) {
    c.edge_map.push_back(a.edge_map[b.edge_map[e]]);
    c.flip.push_back(b.flip[e] ^ a.flip[b.edge_map[e]]);
  }
  return c;
}

GraphAutomorphism inverse(const GraphAutomorphism& a) {
  GraphAutomorphism c;
  c.vertex_map.resize(a.vertex_map.size());
  c.edge_map.resize(a.edge_map.size());
  c.flip.resize(a.flip.size());
  for (std::size_t v = 0; v < a.vertex_map.size(); ++v) c.vertex_map[a.vertex_map[v]] = v;
  for (std::size_t e = 0; e < a.edge_map.size(); ++e) {
    c.edge_map[a.edge_map[e]] = e;
    c.flip[a.edge_map[e]] = a.flip[e];
  }
  return c;
}

namespace {

bool is_permutation_of(const std::vector<std::size_t>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t x : p) {
    if (x >= n || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

}  // namespace

std::vector<std::string> check_graph_automorphism(const Multigraph& g, const GraphAutomorphism& a) {
  std::vector<std::string> problems;
  if (!is_permutation_of(a.vertex_map, g.num_vertices())) problems.push_back("vertex map is not a bijection");
  if (!is_permutation_of(a.edge_map, g.num_edges()) || a.flip.size() != g.num_edges())
    problems.push_back("edge map is not a bijection");
  if (!problems.empty()) return problems;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.vertex(a.vertex_map[v]).weight != g.vertex(v).weight)
      problems.push_back("weight of vertex '" + g.vertex(v).id + "' not preserved");
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const std::size_t f = a.edge_map[e];
    if (g.edge(f).length != g.edge(e).length)
      problems.push_back("edge length of '" + g.edge(e).id + "' not preserved");
    for (int s = 0; s < 2; ++s)
      if (g.endpoint(f, s ^ a.flip[e]) != a.vertex_map[g.endpoint(e, s)])
        problems.push_back("incidence of half-edge '" + g.edge(e).halves[s].id + "' not preserved");
  }
  return problems;
}

namespace {

// Edge-length multiset between an (unordered) vertex pair.
using LengthBag = std::vector<MonoidElement>;

LengthBag lengths_between(const Multigraph& g, std::size_t u, std::size_t w) {
  LengthBag bag;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto a = g.endpoint(e, 0), b = g.endpoint(e, 1);
    if ((a == u && b == w) || (a == w && b == u)) bag.push_back(g.edge(e).length);
  }
  std::sort(bag.begin(), bag.end());
  return bag;
}

constexpr std::size_t kMaxAutomorphisms = 200000;

}  // namespace

std::vector<GraphAutomorphism> automorphisms(const Multigraph& g, std::size_t max_vertices) {
  g.require_valid();
  const std::size_t n = g.num_vertices();
  if (n > max_vertices)
    throw InputError("automorphism search refused: " + std::to_string(n) + " vertices exceeds bound " +
                     std::to_string(max_vertices));

  std::vector<std::vector<LengthBag>> bags(n, std::vector<LengthBag>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = u; w < n; ++w) bags[u][w] = bags[w][u] = lengths_between(g, u, w);

  // Edges grouped by unordered endpoint pair.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto a = g.endpoint(e, 0), b = g.endpoint(e, 1);
    groups[{std::min(a, b), std::max(a, b)}].push_back(e);
  }

  std::vector<GraphAutomorphism> out;
  std::vector<std::size_t> perm(n, kNoIndex);
  std::vector<bool> used(n, false);

  auto emit_edges = [&](const std::vector<std::size_t>& vmap) {
    // For every edge group pick a length-preserving bijection onto the image group.
    struct Choice {
      std::vector<std::size_t> source;
      std::vector<std::size_t> target;
      bool loops;
    };
    std::vector<Choice> choices;
    for (const auto& [key, members] : groups) {
      auto a = vmap[key.first], b = vmap[key.second];
      choices.push_back({members, groups.at({std::min(a, b), std::max(a, b)}), key.first == key.second});
    }
    GraphAutomorphism base;
    base.vertex_map = vmap;
    base.edge_map.assign(g.num_edges(), kNoIndex);
    base.flip.assign(g.num_edges(), 0);

    std::function<void(std::size_t)> rec_group;
    std::function<void(std::size_t, std::size_t, std::vector<bool>&)> rec_edge;
    rec_group = [&](std::size_t gi) {
      if (gi == choices.size()) {
        if (out.size() >= kMaxAutomorphisms) throw InputError("automorphism group too large to enumerate");
        out.push_back(base);
        return;
      }
      std::vector<bool> taken(choices[gi].target.size(), false);
      rec_edge(gi, 0, taken);
    };
    rec_edge = [&](std::size_t gi, std::size_t k, std::vector<bool>& taken) {
      const Choice& c = choices[gi];
      if (k == c.source.size()) {
        rec_group(gi + 1);
        return;
      }
      const std::size_t e = c.source[k];
      for (std::size_t t = 0; t < c.target.size(); ++t) {
        if (taken[t]) continue;
        const std::size_t f = c.target[t];
        if (g.edge(f).length != g.edge(e).length) continue;
        taken[t] = true;
        base.edge_map[e] = f;
        if (c.loops) {
          for (std::uint8_t fl = 0; fl < 2; ++fl) {
            base.flip[e] = fl;
            rec_edge(gi, k + 1, taken);
          }
        } else {
          base.flip[e] = g.endpoint(f, 0) == vmap[g.endpoint(e, 0)] ? 0 : 1;
          rec_edge(gi, k + 1, taken);
        }
        base.flip[e] = 0;
        taken[t] = false;
      }
    };
    rec_group(0);
  };

  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v == n) {
      emit_edges(perm);
      return;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || g.vertex(w).weight != g.vertex(v).weight) continue;
      bool ok = bags[v][v] == bags[w][w];
      for (std::size_t u = 0; ok && u < v; ++u) ok = bags[u][v] == bags[perm[u]][w];
      if (!ok) continue;
      used[w] = true;
      perm[v] = w;
      assign(v + 1);
      used[w] = false;
      perm[v] = kNoIndex;
    }
  };
  assign(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace logpic
