#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "logpic/graph_divisor.hpp"
#include "logpic/int_matrix.hpp"
#include "logpic/monoid.hpp"

namespace logpic {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct VertexSpec {
  std::string id;
  std::int64_t weight = 0;
};

struct HalfEdgeSpec {
  std::string id;
  std::string vertex;
};

struct EdgeSpec {
  std::string id;
  std::array<HalfEdgeSpec, 2> halves;
  MonoidElement length;
};

/// Position of a half-edge: edge index and side (0 or 1).
struct HalfEdgeRef {
  std::size_t edge = kNoIndex;
  int side = 0;
  friend auto operator<=>(const HalfEdgeRef&, const HalfEdgeRef&) = default;
};

/// Problems found by validate(); empty means the structure is sound.
struct Validation {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
  std::string message() const;
};

/// Loopy multigraph built from half-edges. Vertices and edges are stored
/// sorted by identifier; every index-based accessor uses that order.
/// Construction never throws on semantic problems: they are collected and
/// reported by validate(), and algorithms call require_valid().
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges, std::size_t monoid_rank = 1);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t monoid_rank() const { return monoid_rank_; }

  const std::vector<VertexSpec>& vertices() const { return vertices_; }
  const std::vector<EdgeSpec>& edges() const { return edges_; }
  const VertexSpec& vertex(std::size_t v) const { return vertices_[v]; }
  const EdgeSpec& edge(std::size_t e) const { return edges_[e]; }

  /// Vertex index for an id; kNoIndex if unknown.
  std::size_t find_vertex(const std::string& id) const;
  /// Throws InputError for unknown ids.
  std::size_t vertex_index(const std::string& id) const;
  std::size_t find_edge(const std::string& id) const;
  std::optional<HalfEdgeRef> find_half_edge(const std::string& id) const;

  /// Endpoint vertex index of a half-edge.
  std::size_t endpoint(std::size_t e, int side) const { return ends_[e][side]; }
  bool is_loop(std::size_t e) const { return ends_[e][0] == ends_[e][1]; }
  /// Half-edges emanating from v, loops contributing both halves.
  const std::vector<HalfEdgeRef>& half_edges_at(std::size_t v) const { return incident_[v]; }
  /// Number of non-loop edges between distinct u and w.
  Chips edge_count(std::size_t u, std::size_t w) const { return adjacency_[u * num_vertices() + w]; }
  Chips loop_count(std::size_t v) const { return loops_[v]; }

  const Validation& validation() const { return validation_; }
  /// Throws InputError carrying the validation message.
  void require_valid() const;

 private:
  std::size_t monoid_rank_ = 1;
  std::vector<VertexSpec> vertices_;
  std::vector<EdgeSpec> edges_;
  std::vector<std::array<std::size_t, 2>> ends_;
  std::vector<std::vector<HalfEdgeRef>> incident_;
  std::vector<Chips> adjacency_;
  std::vector<Chips> loops_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::unordered_map<std::string, HalfEdgeRef> half_index_;
  Validation validation_;
};

Validation validate(const Multigraph& g);

/// Number of half-edges at v; loops count twice.
Chips valence(const Multigraph& g, std::size_t v);
Chips valence(const Multigraph& g, const std::string& vertex_id);

struct GraphInvariants {
  Chips b1 = 0;
  Chips genus = 0;
  friend bool operator==(const GraphInvariants&, const GraphInvariants&) = default;
};

GraphInvariants invariants(const Multigraph& g);

/// L[v][v] = valence - 2 * loops, L[v][w] = -#edges(v, w). Firing v subtracts column v.
IntMatrix laplacian(const Multigraph& g);

/// K(v) = valence(v) - 2 + 2 h(v). Vertex weights act as virtual loops.
GraphDivisor canonical_divisor(const Multigraph& g);

struct LoopSubdivision {
  Multigraph graph;
  /// Index in `graph` of each original vertex.
  std::vector<std::size_t> vertex_map;
  /// Midpoint vertex created for each original edge (kNoIndex for non-loops).
  std::vector<std::size_t> midpoint;
};

/// Replaces every loop by two parallel edges through a fresh weight-0 vertex.
LoopSubdivision subdivide_loops(const Multigraph& g);

/// Weighted graphs: each unit of weight becomes a loop first (virtual loops),
/// then all loops are subdivided. Identical to subdivide_loops when weights are 0.
LoopSubdivision virtual_loop_model(const Multigraph& g);

/// Graph automorphism in half-edge form: half-edge (e, s) maps to
/// (edge_map[e], s ^ flip[e]).
struct GraphAutomorphism {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
  std::vector<std::uint8_t> flip;

  HalfEdgeRef apply(HalfEdgeRef h) const { return {edge_map[h.edge], h.side ^ flip[h.edge]}; }
  friend auto operator<=>(const GraphAutomorphism&, const GraphAutomorphism&) = default;
};

GraphAutomorphism identity_automorphism(const Multigraph& g);
/// (a * b)(x) = a(b(x))
GraphAutomorphism compose(const GraphAutomorphism& a, const GraphAutomorphism& b);
GraphAutomorphism inverse(const GraphAutomorphism& a);
/// Checks incidence, weights and lengths; empty result means it is an automorphism.
std::vector<std::string> check_graph_automorphism(const Multigraph& g, const GraphAutomorphism& a);

/// All automorphisms preserving incidence, weights and edge lengths, sorted.
/// Throws InputError when #V exceeds `max_vertices`.
std::vector<GraphAutomorphism> automorphisms(const Multigraph& g, std::size_t max_vertices = 8);

}  // namespace logpic
