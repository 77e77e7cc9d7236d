#include "logpic/log_curve.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "logpic/chip_firing.hpp"
#include "logpic/errors.hpp"
#include "logpic/int_matrix.hpp"

namespace logpic {

LogCurve::LogCurve(std::size_t monoid_rank, std::map<std::string, ComponentModel> components, std::vector<Node> nodes,
                   std::vector<Mark> marks)
    : monoid_rank_(monoid_rank), components_(std::move(components)), nodes_(std::move(nodes)), marks_(std::move(marks)) {
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  std::vector<VertexSpec> vertices;
  for (const auto& [id, comp] : components_) vertices.push_back({id, comp.genus()});
  std::vector<EdgeSpec> edges;
  std::map<std::string, std::string> attach;
  for (const auto& n : nodes_) {
    EdgeSpec e;
    e.id = n.id;
    e.halves[0] = {n.id + "a", n.branches[0].component};
    e.halves[1] = {n.id + "b", n.branches[1].component};
    e.length = n.length;
    attach[e.halves[0].id] = n.branches[0].point;
    attach[e.halves[1].id] = n.branches[1].point;
    edges.push_back(std::move(e));
  }
  complex_ = MetrizedComplex(Multigraph(std::move(vertices), std::move(edges), monoid_rank_), components_,
                             std::move(attach), marks_);
  validation_ = complex_.validation();
}

void LogCurve::require_valid() const {
  if (!validation_.ok()) throw InputError(validation_.message());
}

Validation validate(const LogCurve& x) { return x.validation(); }

bool semistable(const LogCurve& x) {
  if (x.monoid_rank() != 1) return false;
  for (const auto& n : x.nodes())
    if (n.length != MonoidElement::unit(1, 0)) return false;
  return true;
}

void require_rank_ready(const LogCurve& x) {
  x.require_valid();
  if (!x.marks().empty())
    throw InputError("rank operations need a vertical curve: " + std::to_string(x.marks().size()) +
                     " marked point(s) present (legs are not part of the rank theory)");
  if (!semistable(x)) throw UnsupportedModel("rank operations need a semistable curve (P = N, every length 1)");
  for (const auto& [id, comp] : x.components())
    if (comp.genus() > 1)
      throw UnsupportedModel("component '" + id + "' has genus " + std::to_string(comp.genus()) +
                             "; exact ranks need genus 0 or 1");
}

MetrizedComplex to_complex(const LogCurve& x) {
  x.require_valid();
  return x.complex();
}

CurveFromComplex from_complex(const MetrizedComplex& c) {
  c.require_valid();
  const auto& g = c.graph();
  std::vector<Node> nodes;
  std::vector<MonoidElement> lengths;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    Node n;
    n.id = g.edge(e).id;
    for (int s = 0; s < 2; ++s) n.branches[s] = {g.vertex(g.endpoint(e, s)).id, c.attachment(e, s)};
    n.length = g.edge(e).length;
    lengths.push_back(n.length);
    nodes.push_back(std::move(n));
  }
  CurveFromComplex out{LogCurve(g.monoid_rank(), c.component_map(), std::move(nodes), c.marks()),
                       MonoidHom::from_images(g.monoid_rank(), lengths)};
  out.curve.require_valid();
  return out;
}

namespace {

std::vector<Mark> sorted(std::vector<Mark> m) {
  std::sort(m.begin(), m.end());
  return m;
}

std::array<Branch, 2> unordered(std::array<Branch, 2> b) {
  if (b[1] < b[0]) std::swap(b[0], b[1]);
  return b;
}

}  // namespace

bool same_curve_up_to_branch_order(const LogCurve& a, const LogCurve& b) {
  if (a.monoid_rank() != b.monoid_rank() || a.components() != b.components() || a.nodes().size() != b.nodes().size() ||
      sorted(a.marks()) != sorted(b.marks()))
    return false;
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    const auto& x = a.nodes()[i];
    const auto& y = b.nodes()[i];
    if (x.id != y.id || x.length != y.length || unordered(x.branches) != unordered(y.branches)) return false;
  }
  return true;
}

bool same_complex_up_to_half_edge_names(const MetrizedComplex& a, const MetrizedComplex& b) {
  const auto& ga = a.graph();
  const auto& gb = b.graph();
  if (ga.monoid_rank() != gb.monoid_rank() || ga.num_vertices() != gb.num_vertices() ||
      ga.num_edges() != gb.num_edges() || a.component_map() != b.component_map() ||
      sorted(a.marks()) != sorted(b.marks()))
    return false;
  for (std::size_t v = 0; v < ga.num_vertices(); ++v)
    if (ga.vertex(v).id != gb.vertex(v).id || ga.vertex(v).weight != gb.vertex(v).weight) return false;
  for (std::size_t e = 0; e < ga.num_edges(); ++e) {
    if (ga.edge(e).id != gb.edge(e).id || ga.edge(e).length != gb.edge(e).length) return false;
    std::array<Branch, 2> ba, bb;
    for (int s = 0; s < 2; ++s) {
      ba[s] = {ga.vertex(ga.endpoint(e, s)).id, a.attachment(e, s)};
      bb[s] = {gb.vertex(gb.endpoint(e, s)).id, b.attachment(e, s)};
    }
    if (unordered(ba) != unordered(bb)) return false;
  }
  return true;
}

LogLineBundle trivial_bundle(const LogCurve& x) {
  x.require_valid();
  return {zero_class(x.complex()), std::vector<Chips>(x.nodes().size(), 0)};
}

LogLineBundle bundle_from_classes(const LogCurve& x, const ComplexClass& classes) {
  LogLineBundle l = trivial_bundle(x);
  if (classes.size() != l.classes.size()) throw InputError("bundle has the wrong number of components");
  l.classes = classes;
  return l;
}

namespace {

void require_shape(const LogCurve& x, const LogLineBundle& l) {
  if (l.classes.size() != x.components().size() || l.gluing.size() != x.nodes().size())
    throw InputError("bundle does not match the curve (components or nodes)");
  for (std::size_t v = 0; v < l.classes.size(); ++v)
    if (!x.complex().component(v).group().contains(l.classes[v].torsion))
      throw InputError("torsion on '" + x.complex().graph().vertex(v).id + "' is not an element of its group");
}

}  // namespace

LogLineBundle tensor(const LogCurve& x, const LogLineBundle& a, const LogLineBundle& b) {
  require_shape(x, a);
  require_shape(x, b);
  LogLineBundle out{add(x.complex(), a.classes, b.classes), a.gluing};
  for (std::size_t e = 0; e < out.gluing.size(); ++e) out.gluing[e] = checked_add(a.gluing[e], b.gluing[e]);
  return out;
}

LogLineBundle inverse(const LogCurve& x, const LogLineBundle& a) {
  require_shape(x, a);
  LogLineBundle out{scale(x.complex(), a.classes, -1), a.gluing};
  for (auto& g : out.gluing) g = checked_sub(0, g);
  return out;
}

LogLineBundle twister(const LogCurve& x, std::size_t v) {
  x.require_valid();
  if (!semistable(x)) throw UnsupportedModel("twisters need a semistable curve (P = N, every length 1)");
  if (v >= x.components().size()) throw InputError("no such component");
  return {firing_vectors(x.complex())[v], std::vector<Chips>(x.nodes().size(), 0)};
}

LogLineBundle twister(const LogCurve& x, const std::string& component) {
  x.require_valid();
  return twister(x, x.complex().graph().vertex_index(component));
}

std::vector<std::size_t> gluing_tree(const LogCurve& x) {
  x.require_valid();
  const auto& g = x.complex().graph();
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  std::vector<std::size_t> tree;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const std::size_t a = find(g.endpoint(e, 0)), b = find(g.endpoint(e, 1));
    if (a == b) continue;
    parent[b] = a;
    tree.push_back(e);
  }
  return tree;
}

LogLineBundle normalize_gluing(const LogCurve& x, const LogLineBundle& l, TorusModel torus) {
  require_shape(x, l);
  if (torus.order < 1) throw InputError("torus order must be at least 1");
  const auto& g = x.complex().graph();
  const Chips m = torus.order;
  const auto tree = gluing_tree(x);
  // Rescaling component v by lambda_v changes node e by lambda(end 0) - lambda(end 1).
  std::vector<Chips> lambda(g.num_vertices(), 0);
  std::vector<bool> known(g.num_vertices(), false);
  known[0] = true;
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t e : tree) {
      const std::size_t a = g.endpoint(e, 0), b = g.endpoint(e, 1);
      if (known[a] == known[b]) continue;
      if (known[a]) lambda[b] = mod_floor(l.gluing[e] + lambda[a], m), known[b] = true;
      else lambda[a] = mod_floor(lambda[b] - l.gluing[e], m), known[a] = true;
      progress = true;
    }
  }
  LogLineBundle out = l;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    out.gluing[e] = mod_floor(mod_floor(l.gluing[e], m) + lambda[g.endpoint(e, 0)] - lambda[g.endpoint(e, 1)], m);
  return out;
}

bool log_class_equal(const LogCurve& x, const LogLineBundle& a, const LogLineBundle& b, TorusModel torus) {
  const auto diff = normalize_gluing(x, tensor(x, a, inverse(x, b)), torus);
  for (Chips g : diff.gluing)
    if (g != 0) return false;
  return is_equivalent(x.complex(), a.classes, b.classes);
}

GraphDivisor multidegree(const LogLineBundle& l) { return multidegree(l.classes); }
Chips degree(const LogLineBundle& l) { return degree(l.classes); }

GraphDivisor tau(const LogCurve& x, const LogLineBundle& l) {
  require_shape(x, l);
  return q_reduce(x.complex().graph(), multidegree(l), 0);
}

bool is_comb_effective(const LogCurve& x, const LogLineBundle& l) {
  require_shape(x, l);
  for (std::size_t v = 0; v < l.classes.size(); ++v)
    if (!is_effective_class(x.complex().component(v), l.classes[v])) return false;
  return true;
}

LogLineBundle omega_log(const LogCurve& x) {
  x.require_valid();
  return {canonical(x.complex()).cls, std::vector<Chips>(x.nodes().size(), 0)};
}

CurveRankEngine::CurveRankEngine(const LogCurve& x)
    : engine_((require_rank_ready(x), x.complex()), true) {}

int comb_rank(const LogCurve& x, const LogLineBundle& l) {
  require_shape(x, l);
  return CurveRankEngine(x).rank(l);
}

namespace {

/// Definition-level rank on a loopless curve, classes keyed through the Smith form.
class DirectRank {
 public:
  DirectRank(const LogCurve& x, TorusModel torus, std::size_t cap)
      : x_(x), c_(x.complex()), m_(torus.order), cap_(cap), snf_(smith_normal_form(laplacian(c_.graph()))),
        firing_(firing_vectors(c_)) {
    prepare();
  }

  std::optional<int> rank(const LogLineBundle& l) {
    work_ = 0;
    const Chips d = degree(l);
    const auto* eff = effective_keys(d);
    if (!eff) return std::nullopt;
    if (!eff->count(key(l))) return -1;
    for (Chips k = 1;; ++k) {
      const auto* rest = effective_keys(d - k);
      if (!rest) return std::nullopt;
      bool all = true;
      const bool finished = for_each_effective(k, [&](const LogLineBundle& e) {
        if (!rest->count(key(tensor(x_, l, inverse(x_, e))))) all = false;
        return all;
      });
      if (!finished && all) return std::nullopt;
      if (!all) return static_cast<int>(k - 1);
    }
  }

 private:
  using Key = std::vector<Chips>;

  Key key(const LogLineBundle& l) const {
    const std::size_t n = c_.graph().num_vertices();
    std::vector<Chips> z(n, 0), w(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t j = 0; j < n; ++j) z[v] = checked_add(z[v], checked_mul(u_[v][j], l.classes[j].degree));
    for (std::size_t i = 0; i < s_.size(); ++i) w[i] = floor_div(z[i], s_[i]);
    ComplexClass shifted = l.classes;
    for (std::size_t u = 0; u < n; ++u) {
      Chips xu = 0;
      for (std::size_t j = 0; j < n; ++j) xu = checked_add(xu, checked_mul(v_[u][j], w[j]));
      if (xu != 0) shifted = add(c_, shifted, scale(c_, firing_[u], xu));
    }
    Key k;
    for (const auto& cls : shifted) {
      k.push_back(cls.degree);
      k.insert(k.end(), cls.torsion.begin(), cls.torsion.end());
    }
    // Gluing normalized over the spanning tree; tree edges become 0, so only
    // the others go into the key.
    std::vector<Chips> lambda(n, 0);
    for (const auto& [e, forward] : tree_order_) {
      const std::size_t a = c_.graph().endpoint(e, 0), b = c_.graph().endpoint(e, 1);
      if (forward) lambda[b] = mod_floor(l.gluing[e] + lambda[a], m_);
      else lambda[a] = mod_floor(lambda[b] - l.gluing[e], m_);
    }
    for (std::size_t e : off_tree_)
      k.push_back(mod_floor(l.gluing[e] + lambda[c_.graph().endpoint(e, 0)] - lambda[c_.graph().endpoint(e, 1)], m_));
    return k;
  }

  void prepare() {
    const auto& g = c_.graph();
    const std::size_t n = g.num_vertices();
    auto small = [](const IntMatrix& m) {
      std::vector<std::vector<Chips>> out(m.rows(), std::vector<Chips>(m.cols()));
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_chips(m(i, j));
      return out;
    };
    u_ = small(snf_.U);
    v_ = small(snf_.V);
    for (std::size_t i = 0; i < snf_.rank(); ++i) s_.push_back(to_chips(snf_.S(i, i)));
    const auto tree = gluing_tree(x_);
    std::vector<bool> in_tree(g.num_edges(), false), known(n, false);
    for (std::size_t e : tree) in_tree[e] = true;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if (!in_tree[e]) off_tree_.push_back(e);
    if (n > 0) known[0] = true;
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t e : tree) {
        const std::size_t a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        if (known[a] == known[b]) continue;
        tree_order_.emplace_back(e, known[a]);
        known[a] = known[b] = true;
        progress = true;
      }
    }
  }

  // Visits every combinatorially effective bundle of degree d with every
  // gluing; f returns false to stop. Returns false when stopped early or when
  // the work cap is hit.
  bool for_each_effective(Chips d, const std::function<bool(const LogLineBundle&)>& f) {
    if (d < 0) return true;
    const std::size_t n = c_.graph().num_vertices(), ne = c_.graph().num_edges();
    LogLineBundle b = trivial_bundle(x_);
    std::vector<Chips> m(n, 0);
    bool go = true;
    std::function<void(std::size_t, Chips)> compose;
    std::function<void(std::size_t)> torsion;
    auto gluings = [&] {
      std::fill(b.gluing.begin(), b.gluing.end(), 0);
      for (;;) {
        if (++work_ > cap_ || !f(b)) {
          go = false;
          return;
        }
        std::size_t i = 0;
        while (i < ne && b.gluing[i] == m_ - 1) b.gluing[i++] = 0;
        if (i == ne) return;
        ++b.gluing[i];
      }
    };
    torsion = [&](std::size_t v) {
      if (!go) return;
      if (v == n) return gluings();
      const auto& comp = c_.component(v);
      b.classes[v].degree = m[v];
      if (comp.genus() == 1 && m[v] > 0) {
        for (const auto& t : comp.group().elements()) {
          b.classes[v].torsion = t;
          torsion(v + 1);
        }
      } else {
        b.classes[v].torsion = comp.group().zero();
        torsion(v + 1);
      }
    };
    compose = [&](std::size_t v, Chips left) {
      if (!go) return;
      if (v + 1 == n) {
        m[v] = left;
        return torsion(0);
      }
      for (Chips k = 0; k <= left && go; ++k) {
        m[v] = k;
        compose(v + 1, left - k);
      }
    };
    if (n == 0) return true;
    compose(0, d);
    return go;
  }

  const std::set<Key>* effective_keys(Chips d) {
    auto it = eff_.find(d);
    if (it == eff_.end()) {
      std::set<Key> keys;
      const std::size_t saved = work_;
      work_ = 0;
      const bool done = for_each_effective(d, [&](const LogLineBundle& b) {
        keys.insert(key(b));
        return true;
      });
      work_ = saved;
      it = eff_.emplace(d, done ? std::optional(std::move(keys)) : std::nullopt).first;
    }
    return it->second ? &*it->second : nullptr;
  }

  const LogCurve& x_;
  const MetrizedComplex& c_;
  Chips m_;
  std::size_t cap_;
  std::size_t work_ = 0;
  SmithDecomposition snf_;
  std::vector<ComplexClass> firing_;
  std::vector<std::vector<Chips>> u_, v_;
  std::vector<Chips> s_;
  std::vector<std::pair<std::size_t, bool>> tree_order_;
  std::vector<std::size_t> off_tree_;
  // nullopt marks a degree whose enumeration exceeded the work cap.
  std::map<Chips, std::optional<std::set<Key>>> eff_;
};

}  // namespace

struct CombRankDirect::Impl {
  LogCurve bridged;
  DirectRank direct;
  Impl(LogCurve b, TorusModel torus, std::size_t cap) : bridged(std::move(b)), direct(bridged, torus, cap) {}
};

CombRankDirect::CombRankDirect(const LogCurve& x, TorusModel torus, std::size_t work_cap) : original_(x) {
  require_rank_ready(x);
  if (torus.order < 1) throw InputError("torus order must be at least 1");
  auto sub = subdivide_loops(x.complex());
  vertex_map_ = sub.vertex_map;
  LogCurve bridged = from_complex(sub.complex).curve;
  // Each node keeps its id, or its first half when it was a self-node.
  for (const auto& node : x.nodes()) {
    std::size_t found = kNoIndex;
    for (std::size_t f = 0; f < bridged.nodes().size() && found == kNoIndex; ++f)
      if (bridged.nodes()[f].branches[0] == node.branches[0]) found = f;
    node_map_.push_back(found);
  }
  impl_ = std::make_unique<Impl>(std::move(bridged), torus, work_cap);
}

CombRankDirect::~CombRankDirect() = default;

std::optional<int> CombRankDirect::rank(const LogLineBundle& l) {
  require_shape(original_, l);
  LogLineBundle pushed = trivial_bundle(impl_->bridged);
  for (std::size_t v = 0; v < l.classes.size(); ++v) pushed.classes[vertex_map_[v]] = l.classes[v];
  for (std::size_t e = 0; e < l.gluing.size(); ++e) pushed.gluing[node_map_[e]] = l.gluing[e];
  return impl_->direct.rank(pushed);
}

std::optional<int> comb_rank_direct(const LogCurve& x, const LogLineBundle& l, TorusModel torus, std::size_t work_cap) {
  return CombRankDirect(x, torus, work_cap).rank(l);
}

KernelReport quotient_kernel(const LogCurve& x, TorusModel torus) {
  x.require_valid();
  if (torus.order < 1) throw InputError("torus order must be at least 1");
  const auto& g = x.complex().graph();
  const std::size_t n = g.num_vertices(), ne = g.num_edges();
  const Chips m = torus.order;
  KernelReport r;
  for (Chips i = 0; i < invariants(g).b1; ++i) r.expected = checked_mul(r.expected, m);

  // Kernel of Pic^log -> Pic(C): gluings modulo rescalings, Z^E / (im delta + m Z^E).
  IntMatrix rel(ne, n + ne);
  for (std::size_t e = 0; e < ne; ++e) {
    rel(e, g.endpoint(e, 0)) += 1;
    rel(e, g.endpoint(e, 1)) -= 1;
    rel(e, n + e) = static_cast<long>(m);
  }
  for (const auto& s : cokernel_invariants(rel)) r.invariants.push_back(to_chips(s));
  for (Chips s : r.invariants) r.order = checked_mul(r.order, s);

  double space = 1;
  for (std::size_t e = 0; e < ne; ++e) space *= static_cast<double>(m);
  if (space <= 2e5) {
    std::set<std::vector<Chips>> seen;
    LogLineBundle l = trivial_bundle(x);
    for (;;) {
      seen.insert(normalize_gluing(x, l, torus).gluing);
      std::size_t i = 0;
      while (i < ne && l.gluing[i] == m - 1) l.gluing[i++] = 0;
      if (i == ne) break;
      ++l.gluing[i];
    }
    r.enumerated_order = static_cast<Chips>(seen.size());
  }
  return r;
}

CurveAutomorphism to_curve_automorphism(const MetrizedComplex& c, const ComplexAutomorphism& phi) {
  const auto& g = c.graph();
  CurveAutomorphism psi;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto& id = g.vertex(v).id;
    psi.components[id] = g.vertex(phi.graph.vertex_map.at(v)).id;
    psi.points[id] = phi.points.at(v);
    if (c.component(v).genus() == 1 && v < phi.groups.size()) psi.groups[id] = phi.groups[v];
  }
  return psi;
}

std::optional<ComplexAutomorphism> to_complex_automorphism(const LogCurve& x, const CurveAutomorphism& psi,
                                                           std::vector<std::string>& violations) {
  x.require_valid();
  const auto& c = x.complex();
  const auto& g = c.graph();
  ComplexAutomorphism phi;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto& id = g.vertex(v).id;
    auto it = psi.components.find(id);
    const std::size_t w = it == psi.components.end() ? kNoIndex : g.find_vertex(it->second);
    if (w == kNoIndex) {
      violations.push_back("components: '" + id + "' has no image component");
      continue;
    }
    phi.graph.vertex_map.push_back(w);
    auto pts = psi.points.find(id);
    phi.points.push_back(pts == psi.points.end() ? std::map<std::string, std::string>{} : pts->second);
    auto grp = psi.groups.find(id);
    phi.groups.push_back(grp == psi.groups.end() ? GroupMap{} : grp->second);
  }
  if (!violations.empty()) return std::nullopt;
  auto image = [&](const Branch& b) -> Branch {
    const std::size_t v = g.vertex_index(b.component);
    const auto& map = phi.points[v];
    auto it = map.find(b.point);
    return {g.vertex(phi.graph.vertex_map[v]).id, it == map.end() ? std::string() : it->second};
  };
  for (const auto& node : x.nodes()) {
    const Branch b0 = image(node.branches[0]), b1 = image(node.branches[1]);
    std::size_t found = kNoIndex;
    std::uint8_t flip = 0;
    for (std::size_t f = 0; f < x.nodes().size() && found == kNoIndex; ++f) {
      const auto& br = x.nodes()[f].branches;
      if (br[0] == b0 && br[1] == b1) found = f, flip = 0;
      else if (br[0] == b1 && br[1] == b0) found = f, flip = 1;
    }
    if (found == kNoIndex) {
      violations.push_back("node: image of node '" + node.id + "' is not a node");
      continue;
    }
    phi.graph.edge_map.push_back(found);
    phi.graph.flip.push_back(flip);
  }
  if (!violations.empty()) return std::nullopt;
  return phi;
}

std::vector<std::string> check_automorphism(const LogCurve& x, const CurveAutomorphism& psi) {
  std::vector<std::string> violations;
  auto phi = to_complex_automorphism(x, psi, violations);
  if (!phi) return violations;
  return check_automorphism(x.complex(), *phi);
}

}  // namespace logpic
