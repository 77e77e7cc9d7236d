#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "logpic/component.hpp"
#include "logpic/graph_divisor.hpp"
#include "logpic/multigraph.hpp"

namespace logpic {

/// Marked point: a roster point on the component of `vertex`.
struct Mark {
  std::string vertex;
  std::string point;
  friend auto operator<=>(const Mark&, const Mark&) = default;
};

/// Graph plus one component per vertex and an attachment point for every
/// half-edge. Like Multigraph, construction records problems instead of
/// throwing; algorithms call require_valid().
class MetrizedComplex {
 public:
  MetrizedComplex() = default;
  MetrizedComplex(Multigraph graph, std::map<std::string, ComponentModel> components,
                  std::map<std::string, std::string> attach, std::vector<Mark> marks = {});

  const Multigraph& graph() const { return graph_; }
  /// Component of the vertex with that index.
  const ComponentModel& component(std::size_t v) const { return components_[v]; }
  const std::vector<ComponentModel>& components() const { return components_; }
  /// Attachment point of half-edge (e, side).
  const std::string& attachment(std::size_t e, int side) const { return attach_[e][side]; }
  const std::vector<Mark>& marks() const { return marks_; }

  std::map<std::string, ComponentModel> component_map() const;
  std::map<std::string, std::string> attach_map() const;

  const Validation& validation() const { return validation_; }
  void require_valid() const;

  friend bool operator==(const MetrizedComplex& a, const MetrizedComplex& b);

 private:
  Multigraph graph_;
  std::vector<ComponentModel> components_;
  std::vector<std::array<std::string, 2>> attach_;
  std::vector<Mark> marks_;
  Validation validation_;
};

Validation validate(const MetrizedComplex& c);
/// b1(G) + sum of component genera.
Chips genus(const MetrizedComplex& c);

/// Per-vertex point multiplicities, keyed by vertex id.
using ComplexDivisor = std::map<std::string, ComponentDivisor>;

/// One component class per vertex, in vertex-index order.
using ComplexClass = std::vector<ComponentClass>;

ComplexClass zero_class(const MetrizedComplex& c);
ComplexClass add(const MetrizedComplex& c, const ComplexClass& a, const ComplexClass& b);
ComplexClass sub(const MetrizedComplex& c, const ComplexClass& a, const ComplexClass& b);
ComplexClass scale(const MetrizedComplex& c, const ComplexClass& a, Chips k);
GraphDivisor multidegree(const ComplexClass& a);
Chips degree(const ComplexClass& a);
/// Class of a single point on the vertex with index v.
ComplexClass point_class(const MetrizedComplex& c, std::size_t v, const Torsion& t);
/// Genus-0 classes are determined by degree alone: this fills in trivial torsion.
ComplexClass class_from_multidegree(const MetrizedComplex& c, const GraphDivisor& mdeg);

/// F_v: firing v. Loops contribute net zero.
std::vector<ComplexClass> firing_vectors(const MetrizedComplex& c);

ComplexClass class_of(const MetrizedComplex& c, const ComplexDivisor& d);

bool is_equivalent(const MetrizedComplex& c, const ComplexClass& a, const ComplexClass& b);
bool has_effective_rep(const MetrizedComplex& c, const ComplexClass& a);

struct CanonicalDivisor {
  ComplexClass cls;
  /// A_v + K_v, with K_v = -2 * (some roster point) on rational components.
  /// Absent when a rational component has an empty roster.
  std::optional<ComplexDivisor> representative;
};

CanonicalDivisor canonical(const MetrizedComplex& c);

struct ComplexSubdivision {
  MetrizedComplex complex;
  /// Index of each original vertex in the subdivided complex.
  std::vector<std::size_t> vertex_map;
};

/// Every loop passes through a fresh rational component whose two roster
/// points are the new attachment points.
ComplexSubdivision subdivide_loops(const MetrizedComplex& c);

/// Exact-rank oracle for one complex. Ranks are class functions; the memo is
/// keyed by canonical forms (q-reduced multidegree plus torsion).
class ComplexRankEngine {
 public:
  /// subdivide = false gives the literal reading on the unsubdivided complex.
  explicit ComplexRankEngine(const MetrizedComplex& c, bool subdivide = true);

  int rank(const ComplexClass& a);
  bool has_effective_rep(const ComplexClass& a);
  /// r(c) - r(K - c) - (deg c - g + 1).
  Chips rr_defect(const ComplexClass& a);

  /// Canonical representative of the class of `a` (model coordinates).
  ComplexClass canonical_form(const ComplexClass& a) const;
  ComplexClass push_forward(const ComplexClass& a) const;

  const MetrizedComplex& original() const { return original_; }
  const MetrizedComplex& model() const { return model_; }

 private:
  struct Candidate {
    std::vector<Chips> m;
    ComplexClass shift;
  };
  using Key = std::vector<Chips>;

  Key key_of(const ComplexClass& canonical) const;
  const std::map<Key, std::vector<Candidate>>& table(Chips d);
  bool model_effective(const ComplexClass& canonical);
  int model_rank(const ComplexClass& a);

  MetrizedComplex original_;
  MetrizedComplex model_;
  std::vector<std::size_t> vertex_map_;
  std::vector<ComplexClass> firing_;
  std::vector<ComplexClass> test_points_;
  ComplexClass canonical_;
  Chips genus_ = 0;
  bool has_elliptic_ = false;
  std::map<Chips, std::map<Key, std::vector<Candidate>>> tables_;
  std::map<Key, int> memo_;
  std::map<Key, bool> effective_memo_;
};

int rank(const MetrizedComplex& c, const ComplexClass& a);
int rank_naive(const MetrizedComplex& c, const ComplexClass& a);

/// Genus-1 component isomorphism on Pic^0 models: x -> sum x_i * images[i] + translation.
struct GroupMap {
  std::vector<Torsion> images;
  Torsion translation;
};

struct ComplexAutomorphism {
  GraphAutomorphism graph;
  /// Per vertex index: source roster point -> point on the image vertex.
  std::vector<std::map<std::string, std::string>> points;
  /// Per vertex index; only consulted for genus-1 components.
  std::vector<GroupMap> groups;
};

ComplexAutomorphism identity_automorphism(const MetrizedComplex& c);
/// Violations, each prefixed with its kind; empty means φ is an automorphism.
std::vector<std::string> check_automorphism(const MetrizedComplex& c, const ComplexAutomorphism& phi);

/// Automorphisms lifting graph automorphisms: attachments force the point maps,
/// marks stay fixed, remaining rational points are matched in id order and
/// genus-1 components use the first affine group map that fits.
std::vector<ComplexAutomorphism> automorphisms(const MetrizedComplex& c, std::size_t max_vertices = 8);

}  // namespace logpic
