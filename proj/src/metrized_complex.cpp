#include "logpic/metrized_complex.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <limits>
#include <set>
#include <stdexcept>

#include "logpic/chip_firing.hpp"
#include "logpic/errors.hpp"
#include "logpic/int_matrix.hpp"

namespace logpic {

MetrizedComplex::MetrizedComplex(Multigraph graph, std::map<std::string, ComponentModel> components,
                                 std::map<std::string, std::string> attach, std::vector<Mark> marks)
    : graph_(std::move(graph)), marks_(std::move(marks)) {
  auto& errors = validation_.errors;
  errors = graph_.validation().errors;
  const std::size_t n = graph_.num_vertices();
  components_.resize(n);
  attach_.resize(graph_.num_edges());

  for (auto& [vid, model] : components) {
    const std::size_t v = graph_.find_vertex(vid);
    if (v == kNoIndex) {
      errors.push_back("component given for unknown vertex '" + vid + "'");
      continue;
    }
    for (const auto& p : model.problems()) errors.push_back("component of '" + vid + "': " + p);
    components_[v] = std::move(model);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto& vid = graph_.vertex(v).id;
    if (!components.count(vid)) errors.push_back("vertex '" + vid + "' has no component");
    else if (components_[v].genus() != graph_.vertex(v).weight)
      errors.push_back("weight of vertex '" + vid + "' must equal the genus of its component");
  }

  for (const auto& [hid, point] : attach) {
    auto ref = graph_.find_half_edge(hid);
    if (!ref) {
      errors.push_back("attachment given for unknown half-edge '" + hid + "'");
      continue;
    }
    attach_[ref->edge][ref->side] = point;
  }
  std::vector<std::set<std::string>> used(n);
  for (std::size_t e = 0; e < graph_.num_edges(); ++e) {
    for (int s = 0; s < 2; ++s) {
      const auto& hid = graph_.edge(e).halves[s].id;
      const auto& point = attach_[e][s];
      const std::size_t v = graph_.endpoint(e, s);
      if (v == kNoIndex) continue;
      if (point.empty()) {
        errors.push_back("half-edge '" + hid + "' has no attachment point");
        continue;
      }
      if (!components_[v].has_point(point))
        errors.push_back("attachment point '" + point + "' of '" + hid + "' is not on the component of '" +
                         graph_.vertex(v).id + "'");
      if (!used[v].insert(point).second)
        errors.push_back("duplicate attachment point '" + point + "' on '" + graph_.vertex(v).id +
                         "': attachment points must be distinct");
    }
  }

  std::set<Mark> seen;
  for (const auto& m : marks_) {
    const std::size_t v = graph_.find_vertex(m.vertex);
    if (v == kNoIndex) {
      errors.push_back("mark on unknown vertex '" + m.vertex + "'");
      continue;
    }
    if (!components_[v].has_point(m.point))
      errors.push_back("mark '" + m.point + "' is not on the component of '" + m.vertex + "'");
    if (used[v].count(m.point))
      errors.push_back("mark '" + m.point + "' on '" + m.vertex + "' collides with an attachment point");
    if (!seen.insert(m).second) errors.push_back("mark '" + m.point + "' on '" + m.vertex + "' repeated");
  }
}

std::map<std::string, ComponentModel> MetrizedComplex::component_map() const {
  std::map<std::string, ComponentModel> out;
  for (std::size_t v = 0; v < graph_.num_vertices(); ++v) out.emplace(graph_.vertex(v).id, components_[v]);
  return out;
}

std::map<std::string, std::string> MetrizedComplex::attach_map() const {
  std::map<std::string, std::string> out;
  for (std::size_t e = 0; e < graph_.num_edges(); ++e)
    for (int s = 0; s < 2; ++s)
      if (!attach_[e][s].empty()) out.emplace(graph_.edge(e).halves[s].id, attach_[e][s]);
  return out;
}

void MetrizedComplex::require_valid() const {
  if (!validation_.ok()) throw InputError(validation_.message());
}

bool operator==(const MetrizedComplex& a, const MetrizedComplex& b) {
  const auto& ga = a.graph_;
  const auto& gb = b.graph_;
  if (ga.monoid_rank() != gb.monoid_rank() || ga.num_vertices() != gb.num_vertices() ||
      ga.num_edges() != gb.num_edges())
    return false;
  for (std::size_t v = 0; v < ga.num_vertices(); ++v)
    if (ga.vertex(v).id != gb.vertex(v).id || ga.vertex(v).weight != gb.vertex(v).weight) return false;
  for (std::size_t e = 0; e < ga.num_edges(); ++e) {
    const auto& x = ga.edge(e);
    const auto& y = gb.edge(e);
    if (x.id != y.id || x.length != y.length) return false;
    for (int s = 0; s < 2; ++s)
      if (x.halves[s].id != y.halves[s].id || x.halves[s].vertex != y.halves[s].vertex) return false;
  }
  auto ma = a.marks_, mb = b.marks_;
  return a.components_ == b.components_ && a.attach_ == b.attach_ && ma == mb;
}

Validation validate(const MetrizedComplex& c) { return c.validation(); }

Chips genus(const MetrizedComplex& c) {
  c.require_valid();
  Chips g = invariants(c.graph()).b1;
  for (const auto& comp : c.components()) g += comp.genus();
  return g;
}

ComplexClass zero_class(const MetrizedComplex& c) {
  ComplexClass out;
  for (const auto& comp : c.components()) out.push_back(zero_class(comp));
  return out;
}

namespace {

void require_same_shape(const MetrizedComplex& c, const ComplexClass& a) {
  if (a.size() != c.graph().num_vertices()) throw InputError("class has the wrong number of vertices");
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!c.component(v).group().contains(a[v].torsion))
      throw InputError("torsion at '" + c.graph().vertex(v).id + "' is not an element of its group");
}

}  // namespace

ComplexClass add(const MetrizedComplex& c, const ComplexClass& a, const ComplexClass& b) {
  ComplexClass out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = add(c.component(v), a[v], b[v]);
  return out;
}

ComplexClass sub(const MetrizedComplex& c, const ComplexClass& a, const ComplexClass& b) {
  ComplexClass out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = sub(c.component(v), a[v], b[v]);
  return out;
}

ComplexClass scale(const MetrizedComplex& c, const ComplexClass& a, Chips k) {
  ComplexClass out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = scale(c.component(v), a[v], k);
  return out;
}

GraphDivisor multidegree(const ComplexClass& a) {
  GraphDivisor d(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) d[v] = a[v].degree;
  return d;
}

Chips degree(const ComplexClass& a) {
  Chips d = 0;
  for (const auto& x : a) d = checked_add(d, x.degree);
  return d;
}

ComplexClass point_class(const MetrizedComplex& c, std::size_t v, const Torsion& t) {
  ComplexClass out = zero_class(c);
  out[v] = {1, t};
  return out;
}

ComplexClass class_from_multidegree(const MetrizedComplex& c, const GraphDivisor& mdeg) {
  ComplexClass out = zero_class(c);
  for (std::size_t v = 0; v < out.size(); ++v) out[v].degree = mdeg[v];
  return out;
}

std::vector<ComplexClass> firing_vectors(const MetrizedComplex& c) {
  c.require_valid();
  const auto& g = c.graph();
  std::vector<ComplexClass> out(g.num_vertices(), zero_class(c));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e)) continue;
    for (int s = 0; s < 2; ++s) {
      const std::size_t v = g.endpoint(e, s), w = g.endpoint(e, 1 - s);
      auto& f = out[v];
      f[v] = sub(c.component(v), f[v], point_class(c.component(v), c.attachment(e, s)));
      f[w] = add(c.component(w), f[w], point_class(c.component(w), c.attachment(e, 1 - s)));
    }
  }
  return out;
}

ComplexClass class_of(const MetrizedComplex& c, const ComplexDivisor& d) {
  c.require_valid();
  ComplexClass out = zero_class(c);
  for (const auto& [vid, div] : d) {
    const std::size_t v = c.graph().vertex_index(vid);
    out[v] = add(c.component(v), out[v], class_of(c.component(v), div));
  }
  return out;
}

namespace {

/// a + sum x_u F_u
ComplexClass apply_script(const MetrizedComplex& c, const std::vector<ComplexClass>& firing, ComplexClass a,
                          const std::vector<Chips>& x) {
  for (std::size_t u = 0; u < x.size(); ++u)
    if (x[u] != 0) a = add(c, a, scale(c, firing[u], x[u]));
  return a;
}

std::vector<Chips> to_chip_vector(const IntVector& x) {
  std::vector<Chips> out;
  for (const auto& v : x) out.push_back(to_chips(v));
  return out;
}

void for_each_composition(Chips total, std::size_t parts, const std::function<void(const std::vector<Chips>&)>& f) {
  if (total < 0 || parts == 0) {
    if (parts == 0 && total == 0) f({});
    return;
  }
  std::vector<Chips> m(parts, 0);
  std::function<void(std::size_t, Chips)> rec = [&](std::size_t i, Chips left) {
    if (i + 1 == parts) {
      m[i] = left;
      f(m);
      return;
    }
    for (Chips k = 0; k <= left; ++k) {
      m[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, total);
}

void require_exact_components(const MetrizedComplex& c) {
  for (std::size_t v = 0; v < c.graph().num_vertices(); ++v)
    if (c.component(v).genus() > 1)
      throw UnsupportedModel("component at '" + c.graph().vertex(v).id + "' has genus " +
                             std::to_string(c.component(v).genus()) + "; exact ranks need genus 0 or 1");
}

/// Componentwise effective, with every torsion check done by h0.
bool componentwise_effective(const MetrizedComplex& c, const ComplexClass& a) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!is_effective_class(c.component(v), a[v])) return false;
  return true;
}

}  // namespace

bool is_equivalent(const MetrizedComplex& c, const ComplexClass& a, const ComplexClass& b) {
  c.require_valid();
  require_same_shape(c, a);
  require_same_shape(c, b);
  // a + sum x_u F_u = b requires L x = mdeg(a) - mdeg(b).
  auto x = integer_solve(laplacian(c.graph()), to_integers((multidegree(a) - multidegree(b)).coeffs()));
  if (!x) return false;
  return apply_script(c, firing_vectors(c), a, to_chip_vector(*x)) == b;
}

bool has_effective_rep(const MetrizedComplex& c, const ComplexClass& a) {
  c.require_valid();
  require_exact_components(c);
  require_same_shape(c, a);
  const auto firing = firing_vectors(c);
  const LatticeSolver solver(laplacian(c.graph()));
  const GraphDivisor mdeg = multidegree(a);
  bool found = false;
  for_each_composition(degree(a), a.size(), [&](const std::vector<Chips>& m) {
    if (found) return;
    auto x = solver.solve(to_integers((mdeg - GraphDivisor(m)).coeffs()));
    if (!x) return;
    auto shifted = apply_script(c, firing, a, to_chip_vector(*x));
    if (multidegree(shifted) != GraphDivisor(m)) throw std::logic_error("firing script does not reach m");
    found = componentwise_effective(c, shifted);
  });
  return found;
}

CanonicalDivisor canonical(const MetrizedComplex& c) {
  c.require_valid();
  const auto& g = c.graph();
  CanonicalDivisor out{zero_class(c), ComplexDivisor{}};
  std::vector<std::map<std::string, Chips>> rep(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (int s = 0; s < 2; ++s) {
      const std::size_t v = g.endpoint(e, s);
      out.cls[v] = add(c.component(v), out.cls[v], point_class(c.component(v), c.attachment(e, s)));
      rep[v][c.attachment(e, s)] += 1;
    }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto& comp = c.component(v);
    out.cls[v].degree += 2 * comp.genus() - 2;
    if (comp.genus() == 0) {
      if (comp.points().empty()) out.representative.reset();
      else rep[v][comp.points().front().id] -= 2;
    } else if (comp.genus() > 1) {
      out.representative.reset();
    }
  }
  if (out.representative) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      ComponentDivisor d;
      for (const auto& [p, k] : rep[v])
        if (k != 0) d.terms.emplace_back(p, k);
      if (!d.terms.empty()) (*out.representative)[g.vertex(v).id] = std::move(d);
    }
  }
  return out;
}

ComplexSubdivision subdivide_loops(const MetrizedComplex& c) {
  c.require_valid();
  auto sub = subdivide_loops(c.graph());
  auto components = c.component_map();
  auto attach = c.attach_map();
  const auto& g = sub.graph;
  for (std::size_t mid : sub.midpoint) {
    if (mid == kNoIndex) continue;
    std::vector<std::string> points;
    for (const auto& h : g.half_edges_at(mid)) {
      const auto& hid = g.edge(h.edge).halves[h.side].id;
      points.push_back(hid);
      attach[hid] = hid;
    }
    components[g.vertex(mid).id] = ComponentModel::rational(points);
  }
  ComplexSubdivision out{MetrizedComplex(sub.graph, std::move(components), std::move(attach), c.marks()),
                         sub.vertex_map};
  out.complex.require_valid();
  return out;
}

ComplexRankEngine::ComplexRankEngine(const MetrizedComplex& c, bool subdivide) : original_(c) {
  c.require_valid();
  require_exact_components(c);
  if (subdivide) {
    auto sub = subdivide_loops(c);
    model_ = std::move(sub.complex);
    vertex_map_ = std::move(sub.vertex_map);
  } else {
    model_ = c;
    for (std::size_t v = 0; v < c.graph().num_vertices(); ++v) vertex_map_.push_back(v);
  }
  firing_ = firing_vectors(model_);
  canonical_ = canonical(model_).cls;
  genus_ = genus(c);
  for (std::size_t v = 0; v < model_.graph().num_vertices(); ++v) {
    const auto& comp = model_.component(v);
    if (comp.genus() == 1) has_elliptic_ = true;
    for (const auto& t : comp.group().elements()) test_points_.push_back(point_class(model_, v, t));
  }
}

ComplexClass ComplexRankEngine::push_forward(const ComplexClass& a) const {
  require_same_shape(original_, a);
  ComplexClass out = zero_class(model_);
  for (std::size_t v = 0; v < a.size(); ++v) out[vertex_map_[v]] = a[v];
  return out;
}

ComplexClass ComplexRankEngine::canonical_form(const ComplexClass& a) const {
  auto red = q_reduce_with_script(model_.graph(), multidegree(a), 0);
  return apply_script(model_, firing_, a, red.script);
}

ComplexRankEngine::Key ComplexRankEngine::key_of(const ComplexClass& canonical) const {
  Key k;
  for (const auto& x : canonical) {
    k.push_back(x.degree);
    k.insert(k.end(), x.torsion.begin(), x.torsion.end());
  }
  return k;
}

// Effective multidegrees m of degree d that leave some genus-1 vertex empty,
// grouped by reduced multidegree. Those with every genus-1 vertex occupied are
// handled by a graph-level test instead.
const std::map<ComplexRankEngine::Key, std::vector<ComplexRankEngine::Candidate>>& ComplexRankEngine::table(Chips d) {
  auto it = tables_.find(d);
  if (it != tables_.end()) return it->second;
  auto& t = tables_[d];
  const std::size_t n = model_.graph().num_vertices();
  for_each_composition(d, n, [&](const std::vector<Chips>& m) {
    bool empty_elliptic = false;
    for (std::size_t v = 0; v < n; ++v)
      if (model_.component(v).genus() == 1 && m[v] == 0) empty_elliptic = true;
    if (!empty_elliptic) return;
    auto canon = canonical_form(class_from_multidegree(model_, GraphDivisor(m)));
    t[multidegree(canon).coeffs()].push_back({m, std::move(canon)});
  });
  return t;
}

bool ComplexRankEngine::model_effective(const ComplexClass& canon) {
  const Key key = key_of(canon);
  auto it = effective_memo_.find(key);
  if (it != effective_memo_.end()) return it->second;
  const auto& g = model_.graph();
  const GraphDivisor rho = multidegree(canon);
  bool eff = false;
  if (degree(canon) >= 0) {
    GraphDivisor occupied = rho;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (model_.component(v).genus() == 1) occupied[v] -= 1;
    eff = q_reduce(g, occupied, 0)[0] >= 0;
    if (!eff && has_elliptic_) {
      const auto& t = table(degree(canon));
      auto cands = t.find(rho.coeffs());
      if (cands != t.end()) {
        for (const auto& cand : cands->second) {
          bool ok = true;
          for (std::size_t v = 0; v < g.num_vertices() && ok; ++v) {
            const auto& comp = model_.component(v);
            if (comp.genus() == 1 && cand.m[v] == 0)
              ok = comp.group().sub(canon[v].torsion, cand.shift[v].torsion) == comp.group().zero();
          }
          if (ok) {
            eff = true;
            break;
          }
        }
      }
    }
  }
  effective_memo_.emplace(key, eff);
  return eff;
}

int ComplexRankEngine::model_rank(const ComplexClass& a) {
  const ComplexClass canon = canonical_form(a);
  const Key key = key_of(canon);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  int r = -1;
  if (model_effective(canon)) {
    int best = std::numeric_limits<int>::max();
    for (const auto& p : test_points_) {
      best = std::min(best, model_rank(sub(model_, canon, p)));
      if (best == -1) break;
    }
    r = 1 + best;
  }
  memo_.emplace(key, r);
  return r;
}

int ComplexRankEngine::rank(const ComplexClass& a) { return model_rank(push_forward(a)); }

bool ComplexRankEngine::has_effective_rep(const ComplexClass& a) {
  return model_effective(canonical_form(push_forward(a)));
}

Chips ComplexRankEngine::rr_defect(const ComplexClass& a) {
  const ComplexClass pushed = push_forward(a);
  const int r = model_rank(pushed);
  const int r_dual = model_rank(sub(model_, canonical_, pushed));
  return static_cast<Chips>(r) - r_dual - (degree(a) - genus_ + 1);
}

int rank(const MetrizedComplex& c, const ComplexClass& a) { return ComplexRankEngine(c, true).rank(a); }
int rank_naive(const MetrizedComplex& c, const ComplexClass& a) { return ComplexRankEngine(c, false).rank(a); }

ComplexAutomorphism identity_automorphism(const MetrizedComplex& c) {
  ComplexAutomorphism phi;
  phi.graph = identity_automorphism(c.graph());
  for (const auto& comp : c.components()) {
    std::map<std::string, std::string> pts;
    for (const auto& p : comp.points()) pts.emplace(p.id, p.id);
    phi.points.push_back(std::move(pts));
    GroupMap gm;
    for (std::size_t i = 0; i < comp.group().factors().size(); ++i) {
      Torsion e = comp.group().zero();
      e[i] = 1;
      gm.images.push_back(std::move(e));
    }
    gm.translation = comp.group().zero();
    phi.groups.push_back(std::move(gm));
  }
  return phi;
}

namespace {

Torsion apply_group_map(const FiniteAbelianGroup& target, const GroupMap& gm, const Torsion& x) {
  Torsion out = gm.translation;
  for (std::size_t i = 0; i < x.size(); ++i) out = target.add(out, target.scale(gm.images[i], x[i]));
  return out;
}

}  // namespace

std::vector<std::string> check_automorphism(const MetrizedComplex& c, const ComplexAutomorphism& phi) {
  c.require_valid();
  const auto& g = c.graph();
  std::vector<std::string> out;
  for (const auto& p : check_graph_automorphism(g, phi.graph)) out.push_back("graph: " + p);
  if (!out.empty()) return out;
  const std::size_t n = g.num_vertices();
  if (phi.points.size() != n) return {"point bijection: one point map per vertex required"};

  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t w = phi.graph.vertex_map[v];
    const auto& src = c.component(v);
    const auto& dst = c.component(w);
    const auto& vid = g.vertex(v).id;
    if (src.genus() != dst.genus()) {
      out.push_back("genus: component of '" + vid + "' sent to a component of different genus");
      continue;
    }
    std::set<std::string> images;
    bool bijective = phi.points[v].size() == src.points().size();
    for (const auto& p : src.points()) {
      auto it = phi.points[v].find(p.id);
      if (it == phi.points[v].end() || !dst.has_point(it->second)) {
        bijective = false;
        continue;
      }
      images.insert(it->second);
    }
    if (!bijective || images.size() != dst.points().size()) {
      out.push_back("point bijection: map on '" + vid + "' is not a bijection of rosters");
      continue;
    }
    if (src.genus() != 1) continue;
    if (phi.groups.size() != n) {
      out.push_back("group isomorphism: missing for genus-1 component '" + vid + "'");
      continue;
    }
    const auto& gm = phi.groups[v];
    const auto& gs = src.group();
    const auto& gd = dst.group();
    bool hom = gm.images.size() == gs.factors().size() && gd.contains(gm.translation);
    for (std::size_t i = 0; hom && i < gm.images.size(); ++i)
      hom = gd.contains(gm.images[i]) && gd.scale(gm.images[i], gs.factors()[i]) == gd.zero();
    if (hom) {
      std::set<Torsion> hit;
      for (const auto& x : gs.elements()) hit.insert(apply_group_map(gd, gm, x));
      hom = static_cast<Chips>(hit.size()) == gd.order() && gs.order() == gd.order();
    }
    if (!hom) {
      out.push_back("group isomorphism: map on '" + vid + "' is not an isomorphism");
      continue;
    }
    for (const auto& p : src.points())
      if (apply_group_map(gd, gm, p.cls) != dst.point_class(phi.points[v].at(p.id)))
        out.push_back("point classes: image of '" + p.id + "' on '" + vid + "' has the wrong class");
  }
  if (!out.empty()) return out;

  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (int s = 0; s < 2; ++s) {
      const std::size_t v = g.endpoint(e, s);
      const auto img = phi.graph.apply({e, s});
      if (phi.points[v].at(c.attachment(e, s)) != c.attachment(img.edge, img.side))
        out.push_back("attachment compatibility: half-edge '" + g.edge(e).halves[s].id + "'");
    }
  for (const auto& m : c.marks()) {
    const std::size_t v = g.vertex_index(m.vertex);
    if (phi.graph.vertex_map[v] != v || phi.points[v].at(m.point) != m.point)
      out.push_back("marks: marked point '" + m.point + "' on '" + m.vertex + "' is moved");
  }
  return out;
}

namespace {

// Every group map Z/n1 + ... -> target given by generator images.
void for_each_group_map(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst,
                        const std::function<bool(const GroupMap&)>& f) {
  const auto elems = dst.elements();
  const std::size_t k = src.factors().size();
  GroupMap gm;
  gm.images.resize(k);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      for (const auto& t : elems) {
        gm.translation = t;
        if (!f(gm)) return false;
      }
      return true;
    }
    for (const auto& t : elems) {
      if (dst.scale(t, src.factors()[i]) != dst.zero()) continue;
      gm.images[i] = t;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  rec(0);
}

std::optional<std::map<std::string, std::string>> lift_points(const MetrizedComplex& c, const GraphAutomorphism& a,
                                                              std::size_t v, GroupMap& group_out) {
  const auto& g = c.graph();
  const std::size_t w = a.vertex_map[v];
  const auto& src = c.component(v);
  const auto& dst = c.component(w);
  std::map<std::string, std::string> forced;
  for (const auto& h : g.half_edges_at(v)) forced[c.attachment(h.edge, h.side)] = [&] {
    const auto img = a.apply(h);
    return c.attachment(img.edge, img.side);
  }();
  std::set<std::string> marked_v, marked_w;
  for (const auto& m : c.marks()) {
    if (m.vertex == g.vertex(v).id) marked_v.insert(m.point);
    if (m.vertex == g.vertex(w).id) marked_w.insert(m.point);
  }
  if (v != w && (!marked_v.empty() || !marked_w.empty())) return std::nullopt;
  for (const auto& p : marked_v) forced[p] = p;

  if (src.genus() != 1) {
    std::vector<std::string> rest_src, rest_dst;
    std::set<std::string> used;
    for (const auto& [_, q] : forced) used.insert(q);
    for (const auto& p : src.points())
      if (!forced.count(p.id)) rest_src.push_back(p.id);
    for (const auto& p : dst.points())
      if (!used.count(p.id)) rest_dst.push_back(p.id);
    if (rest_src.size() != rest_dst.size()) return std::nullopt;
    for (std::size_t i = 0; i < rest_src.size(); ++i) forced[rest_src[i]] = rest_dst[i];
    return forced;
  }

  std::map<Torsion, std::string> by_class;
  for (const auto& p : dst.points()) by_class[p.cls] = p.id;
  std::optional<std::map<std::string, std::string>> found;
  if (src.group().order() != dst.group().order()) return std::nullopt;
  for_each_group_map(src.group(), dst.group(), [&](const GroupMap& gm) {
    std::map<std::string, std::string> map;
    std::set<std::string> used;
    for (const auto& p : src.points()) {
      const auto img = apply_group_map(dst.group(), gm, p.cls);
      auto it = by_class.find(img);
      if (it == by_class.end()) return true;
      auto f = forced.find(p.id);
      if (f != forced.end() && f->second != it->second) return true;
      if (!used.insert(it->second).second) return true;
      map[p.id] = it->second;
    }
    if (used.size() != dst.points().size()) return true;
    std::set<Torsion> hit;
    for (const auto& t : src.group().elements()) hit.insert(apply_group_map(dst.group(), gm, t));
    if (static_cast<Chips>(hit.size()) != dst.group().order()) return true;
    group_out = gm;
    found = std::move(map);
    return false;
  });
  return found;
}

}  // namespace

std::vector<ComplexAutomorphism> automorphisms(const MetrizedComplex& c, std::size_t max_vertices) {
  c.require_valid();
  std::vector<ComplexAutomorphism> out;
  const std::size_t n = c.graph().num_vertices();
  for (const auto& a : automorphisms(c.graph(), max_vertices)) {
    ComplexAutomorphism phi = identity_automorphism(c);
    phi.graph = a;
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      auto pts = lift_points(c, a, v, phi.groups[v]);
      if (!pts) ok = false;
      else phi.points[v] = std::move(*pts);
    }
    if (ok && check_automorphism(c, phi).empty()) out.push_back(std::move(phi));
  }
  return out;
}

}  // namespace logpic
