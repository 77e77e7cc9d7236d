#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "logpic/graph_divisor.hpp"
#include "logpic/int_matrix.hpp"
#include "logpic/multigraph.hpp"

namespace logpic {

/// D - L * 1_S: every vertex of S sends one chip along each edge leaving S.
/// Loops and edges inside S move nothing.
GraphDivisor fire(const Multigraph& g, const GraphDivisor& d, const std::vector<std::size_t>& set);
GraphDivisor fire(const Multigraph& g, const GraphDivisor& d, const std::vector<std::string>& vertex_ids);

/// Dhar's burning algorithm from q. Returns the unburnt vertices in index
/// order; empty iff d is q-reduced. Requires d(v) >= 0 for v != q.
std::vector<std::size_t> dhar(const Multigraph& g, const GraphDivisor& d, std::size_t q);

struct Reduction {
  GraphDivisor reduced;
  /// Firing counts with reduced == d - L * script.
  std::vector<Chips> script;
};

Reduction q_reduce_with_script(const Multigraph& g, const GraphDivisor& d, std::size_t q);
GraphDivisor q_reduce(const Multigraph& g, const GraphDivisor& d, std::size_t q = 0);

/// Base vertex 0 is the lexicographically least vertex id.
bool is_equivalent(const Multigraph& g, const GraphDivisor& a, const GraphDivisor& b);
bool has_effective_rep(const Multigraph& g, const GraphDivisor& d);

/// All q-reduced divisors of the given degree: one per class in Pic^deg(G).
std::vector<GraphDivisor> reduced_divisors(const Multigraph& g, Chips deg, std::size_t q = 0);

/// Invariant factors of the degree-0 class group (torsion of Pic(G)).
std::vector<Integer> jacobian(const Multigraph& g);

enum class RankSemantics {
  /// Test divisors supported on vertices of G itself; loops never move chips.
  BakerNorine,
  /// Ranks taken on the loop-subdivided (and virtual-loop) model.
  LoopCorrected,
};

/// Memoised rank oracle for one graph. Ranks are class functions, so the memo
/// is keyed by q-reduced representatives and shared across queries.
class GraphRankEngine {
 public:
  GraphRankEngine(const Multigraph& g, RankSemantics semantics);

  /// Rank of a divisor given on the original graph.
  int rank(const GraphDivisor& d);
  /// Riemann-Roch defect r(D) - r(K - D) - (deg D - g + 1).
  Chips rr_defect(const GraphDivisor& d);

  const Multigraph& model() const { return model_.graph; }
  GraphDivisor push_forward(const GraphDivisor& d) const;
  std::size_t memo_size() const { return memo_.size(); }

 private:
  int model_rank(const GraphDivisor& d);

  Multigraph original_;
  RankSemantics semantics_;
  LoopSubdivision model_;
  GraphDivisor model_canonical_;
  Chips genus_ = 0;
  std::map<std::vector<Chips>, int> memo_;
};

int rank_bn(const Multigraph& g, const GraphDivisor& d);
int rank_ac(const Multigraph& g, const GraphDivisor& d);
Chips rr_defect(const Multigraph& g, const GraphDivisor& d, RankSemantics semantics = RankSemantics::LoopCorrected);

}  // namespace logpic
