#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "logpic/checked.hpp"
#include "logpic/multigraph.hpp"

namespace logpic {

/// Element of a finite abelian group, one residue per invariant factor.
using Torsion = std::vector<Chips>;

/// Z/n_1 + ... + Z/n_k. An empty factor list is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Chips> factors);

  const std::vector<Chips>& factors() const { return factors_; }
  Chips order() const;
  Torsion zero() const { return Torsion(factors_.size(), 0); }
  bool contains(const Torsion& t) const;

  Torsion add(const Torsion& a, const Torsion& b) const;
  Torsion sub(const Torsion& a, const Torsion& b) const;
  Torsion neg(const Torsion& a) const;
  Torsion scale(const Torsion& a, Chips k) const;
  /// Every element, in lexicographic order of residues.
  std::vector<Torsion> elements() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<Chips> factors_;
};

struct ComponentPoint {
  std::string id;
  Torsion cls;
  friend bool operator==(const ComponentPoint&, const ComponentPoint&) = default;
};

/// Finite model of a smooth component. Genus 0: every point has the trivial
/// class. Genus 1: the group models Pic^0 and each point carries its
/// Abel-Jacobi class (distinct points, distinct classes). Genus >= 2 is data
/// only; exact-rank operations reject it.
class ComponentModel {
 public:
  ComponentModel() = default;
  ComponentModel(int genus, FiniteAbelianGroup group, std::vector<ComponentPoint> points);

  static ComponentModel rational(const std::vector<std::string>& point_ids);
  /// Genus-1 model whose roster is every element of the group, named p<i>
  /// (single factor) or p<i>_<j>_... .
  static ComponentModel elliptic(std::vector<Chips> factors);

  int genus() const { return genus_; }
  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<ComponentPoint>& points() const { return points_; }
  bool has_point(const std::string& id) const { return index_.count(id) > 0; }
  /// Throws InputError for unknown points.
  const Torsion& point_class(const std::string& id) const;

  /// Model-level invariants; empty means valid.
  std::vector<std::string> problems() const;

  friend bool operator==(const ComponentModel& a, const ComponentModel& b) {
    return a.genus_ == b.genus_ && a.group_ == b.group_ && a.points_ == b.points_;
  }

 private:
  int genus_ = 0;
  FiniteAbelianGroup group_;
  std::vector<ComponentPoint> points_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string elliptic_point_name(const Torsion& t);

struct ComponentDivisor {
  std::vector<std::pair<std::string, Chips>> terms;
};

/// Linear equivalence class on a component: (degree, Abel-Jacobi sum).
struct ComponentClass {
  Chips degree = 0;
  Torsion torsion;
  friend auto operator<=>(const ComponentClass&, const ComponentClass&) = default;
};

ComponentClass zero_class(const ComponentModel& model);
ComponentClass point_class(const ComponentModel& model, const std::string& point);
ComponentClass add(const ComponentModel& model, const ComponentClass& a, const ComponentClass& b);
ComponentClass sub(const ComponentModel& model, const ComponentClass& a, const ComponentClass& b);
ComponentClass scale(const ComponentModel& model, const ComponentClass& a, Chips k);

ComponentClass class_of(const ComponentModel& model, const ComponentDivisor& d);

/// Classical h^0 for genus 0 and 1; UnsupportedModel otherwise.
Chips h0(const ComponentModel& model, const ComponentClass& c);
bool is_effective_class(const ComponentModel& model, const ComponentClass& c);
ComponentClass canonical_class(const ComponentModel& model);

/// Every effective class of the given degree (torsion free to vary only when
/// the degree is positive). Genus 0/1 only.
std::vector<ComponentClass> effective_classes(const ComponentModel& model, Chips degree);

}  // namespace logpic
