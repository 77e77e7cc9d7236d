#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logpic/component.hpp"
#include "logpic/metrized_complex.hpp"
#include "logpic/monoid.hpp"

namespace logpic {

struct Branch {
  std::string component;
  std::string point;
  friend auto operator<=>(const Branch&, const Branch&) = default;
};

struct Node {
  std::string id;
  std::array<Branch, 2> branches;
  MonoidElement length;
  friend bool operator==(const Node&, const Node&) = default;
};

/// Nodal curve over the log point with base monoid N^k: components, nodes
/// with lengths p_e in N^k, and marked points. The dual complex is built once;
/// component order and node order follow the sorted ids.
class LogCurve {
 public:
  LogCurve() = default;
  LogCurve(std::size_t monoid_rank, std::map<std::string, ComponentModel> components, std::vector<Node> nodes,
           std::vector<Mark> marks = {});

  std::size_t monoid_rank() const { return monoid_rank_; }
  const std::map<std::string, ComponentModel>& components() const { return components_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Mark>& marks() const { return marks_; }
  /// Dual metrized complex; half-edges are "<node>a" and "<node>b".
  const MetrizedComplex& complex() const { return complex_; }

  const Validation& validation() const { return validation_; }
  void require_valid() const;

  friend bool operator==(const LogCurve& a, const LogCurve& b) {
    return a.monoid_rank_ == b.monoid_rank_ && a.components_ == b.components_ && a.nodes_ == b.nodes_ &&
           a.marks_ == b.marks_;
  }

 private:
  std::size_t monoid_rank_ = 1;
  std::map<std::string, ComponentModel> components_;
  std::vector<Node> nodes_;
  std::vector<Mark> marks_;
  MetrizedComplex complex_;
  Validation validation_;
};

Validation validate(const LogCurve& x);
/// P = N and every node length is the generator.
bool semistable(const LogCurve& x);
/// Valid, no marked points, semistable, components of genus <= 1.
void require_rank_ready(const LogCurve& x);

MetrizedComplex to_complex(const LogCurve& x);

struct CurveFromComplex {
  LogCurve curve;
  /// N^E -> P, e |-> p_e, edges in id order.
  MonoidHom base;
};

CurveFromComplex from_complex(const MetrizedComplex& c);

/// Identity on component, node and point names (node branches unordered).
bool same_curve_up_to_branch_order(const LogCurve& a, const LogCurve& b);
/// Identity on vertex, edge and point names; half-edges matched through
/// their (vertex, attachment point).
bool same_complex_up_to_half_edge_names(const MetrizedComplex& a, const MetrizedComplex& b);

/// Finite model of k*: Z/order.
struct TorusModel {
  Chips order = 1;
};

/// Component classes in component order, one gluing value per node.
struct LogLineBundle {
  ComplexClass classes;
  std::vector<Chips> gluing;
  friend auto operator<=>(const LogLineBundle&, const LogLineBundle&) = default;
};

LogLineBundle trivial_bundle(const LogCurve& x);
LogLineBundle tensor(const LogCurve& x, const LogLineBundle& a, const LogLineBundle& b);
LogLineBundle inverse(const LogCurve& x, const LogLineBundle& a);
/// Identity gluing on the given component classes.
LogLineBundle bundle_from_classes(const LogCurve& x, const ComplexClass& classes);

/// L_v: restrictions are the firing vector of v, identity gluing.
LogLineBundle twister(const LogCurve& x, std::size_t v);
LogLineBundle twister(const LogCurve& x, const std::string& component);

/// Spanning tree used by normalize_gluing: Kruskal over nodes in id order,
/// self-nodes skipped. Returns node indices.
std::vector<std::size_t> gluing_tree(const LogCurve& x);

/// Rescales components so that tree nodes carry the identity; gluing
/// reduced mod the torus order.
LogLineBundle normalize_gluing(const LogCurve& x, const LogLineBundle& l, TorusModel torus);
bool log_class_equal(const LogCurve& x, const LogLineBundle& a, const LogLineBundle& b, TorusModel torus);

GraphDivisor multidegree(const LogLineBundle& l);
Chips degree(const LogLineBundle& l);
/// q-reduced multidegree, q the least component id.
GraphDivisor tau(const LogCurve& x, const LogLineBundle& l);
bool is_comb_effective(const LogCurve& x, const LogLineBundle& l);
LogLineBundle omega_log(const LogCurve& x);

/// Rank through the dual complex.
int comb_rank(const LogCurve& x, const LogLineBundle& l);

/// Ranks for many bundles on one curve with a shared memo.
class CurveRankEngine {
 public:
  explicit CurveRankEngine(const LogCurve& x);
  int rank(const LogLineBundle& l) { return engine_.rank(l.classes); }
  /// r(L) - r(omega (x) L^-1) - (deg L - g + 1).
  Chips rr_defect(const LogLineBundle& l) { return engine_.rr_defect(l.classes); }
  ComplexRankEngine& complex_engine() { return engine_; }

 private:
  ComplexRankEngine engine_;
};

/// Rank straight from the definition on the finite model: every effective
/// test bundle of each degree, every gluing, log classes compared through a
/// Smith-form canonical form. Self-nodes are first replaced by rational
/// bridges. Tables of effective log classes are cached per degree.
class CombRankDirect {
 public:
  CombRankDirect(const LogCurve& x, TorusModel torus, std::size_t work_cap = 2000000);
  ~CombRankDirect();
  CombRankDirect(const CombRankDirect&) = delete;
  CombRankDirect& operator=(const CombRankDirect&) = delete;

  /// nullopt once a single query would visit more than work_cap bundles.
  std::optional<int> rank(const LogLineBundle& l);

 private:
  struct Impl;
  const LogCurve& original_;
  std::vector<std::size_t> vertex_map_;
  std::vector<std::size_t> node_map_;
  std::unique_ptr<Impl> impl_;
};

std::optional<int> comb_rank_direct(const LogCurve& x, const LogLineBundle& l, TorusModel torus,
                                    std::size_t work_cap = 2000000);

struct KernelReport {
  /// Distinct normalized gluings with trivial classes, by enumeration (0 if skipped).
  Chips enumerated_order = 0;
  /// Invariant factors of Z^E / (coboundaries + m Z^E).
  std::vector<Chips> invariants;
  Chips order = 1;
  /// m^{b1}
  Chips expected = 1;
};

KernelReport quotient_kernel(const LogCurve& x, TorusModel torus);

/// Automorphism of a curve given by names.
struct CurveAutomorphism {
  std::map<std::string, std::string> components;
  std::map<std::string, std::map<std::string, std::string>> points;
  /// Genus-1 components only.
  std::map<std::string, GroupMap> groups;
};

CurveAutomorphism to_curve_automorphism(const MetrizedComplex& c, const ComplexAutomorphism& phi);
/// Fails with a violation list when some node is not sent to a node.
std::optional<ComplexAutomorphism> to_complex_automorphism(const LogCurve& x, const CurveAutomorphism& psi,
                                                           std::vector<std::string>& violations);
std::vector<std::string> check_automorphism(const LogCurve& x, const CurveAutomorphism& psi);

}  // namespace logpic
