#include "logpic/component.hpp"

#include <algorithm>
#include <set>

#include "logpic/errors.hpp"

namespace logpic {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Chips> factors) : factors_(std::move(factors)) {
  for (Chips f : factors_)
    if (f < 1) throw InputError("invariant factors must be positive");
}

Chips FiniteAbelianGroup::order() const {
  Chips o = 1;
  for (Chips f : factors_) o = checked_mul(o, f);
  return o;
}

bool FiniteAbelianGroup::contains(const Torsion& t) const {
  if (t.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] >= factors_[i]) return false;
  return true;
}

Torsion FiniteAbelianGroup::add(const Torsion& a, const Torsion& b) const {
  Torsion r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(a[i] + b[i], factors_[i]);
  return r;
}

Torsion FiniteAbelianGroup::sub(const Torsion& a, const Torsion& b) const {
  Torsion r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(a[i] - b[i], factors_[i]);
  return r;
}

Torsion FiniteAbelianGroup::neg(const Torsion& a) const { return sub(zero(), a); }

Torsion FiniteAbelianGroup::scale(const Torsion& a, Chips k) const {
  Torsion r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = mod_floor(checked_mul(a[i], mod_floor(k, factors_[i])), factors_[i]);
  return r;
}

std::vector<Torsion> FiniteAbelianGroup::elements() const {
  std::vector<Torsion> out;
  Torsion t = zero();
  for (;;) {
    out.push_back(t);
    std::size_t i = t.size();
    while (i > 0 && t[i - 1] == factors_[i - 1] - 1) t[--i] = 0;
    if (i == 0) return out;
    ++t[i - 1];
  }
}

std::string elliptic_point_name(const Torsion& t) {
  std::string name = "p";
  for (std::size_t i = 0; i < t.size(); ++i) name += (i ? "_" : "") + std::to_string(t[i]);
  if (t.empty()) name += "0";
  return name;
}

ComponentModel::ComponentModel(int genus, FiniteAbelianGroup group, std::vector<ComponentPoint> points)
    : genus_(genus), group_(std::move(group)), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i].id, i);
}

ComponentModel ComponentModel::rational(const std::vector<std::string>& point_ids) {
  std::vector<ComponentPoint> pts;
  for (const auto& id : point_ids) pts.push_back({id, {}});
  return ComponentModel(0, FiniteAbelianGroup(), std::move(pts));
}

ComponentModel ComponentModel::elliptic(std::vector<Chips> factors) {
  FiniteAbelianGroup group(std::move(factors));
  std::vector<ComponentPoint> pts;
  for (auto& t : group.elements()) pts.push_back({elliptic_point_name(t), t});
  return ComponentModel(1, std::move(group), std::move(pts));
}

const Torsion& ComponentModel::point_class(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown point '" + id + "'");
  return points_[it->second].cls;
}

std::vector<std::string> ComponentModel::problems() const {
  std::vector<std::string> out;
  if (genus_ < 0) out.push_back("component genus must be non-negative");
  if (genus_ != 1 && !group_.factors().empty()) out.push_back("only genus-1 components carry a torsion group");
  if (index_.size() != points_.size()) out.push_back("duplicate point id on component");
  std::set<Torsion> classes;
  for (const auto& p : points_) {
    if (!group_.contains(p.cls)) out.push_back("class of point '" + p.id + "' is not an element of the group");
    if (genus_ == 1 && !classes.insert(p.cls).second)
      out.push_back("points on a genus-1 component must have distinct classes ('" + p.id + "')");
  }
  return out;
}

ComponentClass zero_class(const ComponentModel& model) { return {0, model.group().zero()}; }

ComponentClass point_class(const ComponentModel& model, const std::string& point) {
  return {1, model.point_class(point)};
}

ComponentClass add(const ComponentModel& model, const ComponentClass& a, const ComponentClass& b) {
  return {checked_add(a.degree, b.degree), model.group().add(a.torsion, b.torsion)};
}

ComponentClass sub(const ComponentModel& model, const ComponentClass& a, const ComponentClass& b) {
  return {checked_sub(a.degree, b.degree), model.group().sub(a.torsion, b.torsion)};
}

ComponentClass scale(const ComponentModel& model, const ComponentClass& a, Chips k) {
  return {checked_mul(a.degree, k), model.group().scale(a.torsion, k)};
}

ComponentClass class_of(const ComponentModel& model, const ComponentDivisor& d) {
  ComponentClass c = zero_class(model);
  for (const auto& [point, mult] : d.terms) c = add(model, c, scale(model, point_class(model, point), mult));
  return c;
}

namespace {

void require_exact(const ComponentModel& model) {
  if (model.genus() > 1)
    throw UnsupportedModel("exact h0 is only available for components of genus 0 or 1 (got genus " +
                           std::to_string(model.genus()) + ")");
}

}  // namespace

Chips h0(const ComponentModel& model, const ComponentClass& c) {
  require_exact(model);
  if (model.genus() == 0) return std::max<Chips>(c.degree + 1, 0);
  if (c.degree < 0) return 0;
  if (c.degree == 0) return c.torsion == model.group().zero() ? 1 : 0;
  return c.degree;
}

bool is_effective_class(const ComponentModel& model, const ComponentClass& c) { return h0(model, c) >= 1; }

ComponentClass canonical_class(const ComponentModel& model) {
  require_exact(model);
  return {2 * model.genus() - 2, model.group().zero()};
}

std::vector<ComponentClass> effective_classes(const ComponentModel& model, Chips degree) {
  require_exact(model);
  if (degree < 0) return {};
  if (degree == 0 || model.genus() == 0) return {{degree, model.group().zero()}};
  std::vector<ComponentClass> out;
  for (auto& t : model.group().elements()) out.push_back({degree, std::move(t)});
  return out;
}

}  // namespace logpic
